#pragma once

#include <cstdint>
#include <vector>

#include "homs/hypervector.hpp"

namespace homs {

/// Parameters of the binary encoding. Every field participates in the cache
/// config block: two runs agree on encoded bits iff these match exactly.
struct EncoderConfig {
  std::uint32_t dim = 8192;        // hypervector bit length, multiple of 64
  std::uint32_t step_flips = 4096; // bit flips per adjacent position step
  std::uint32_t levels = 16;       // intensity quantization level count Q
  std::uint64_t seed = 1;

  /// Throws ConfigError on violation. dim must be a positive multiple of 64,
  /// step_flips >= 1, levels >= 2.
  void validate() const;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

/// Locality-preserving codebooks: one position vector per spectrum-vector
/// bin and one level vector per quantization step. A codebook is a pure
/// function of (config, spectrum_dims); regenerating with the same inputs
/// yields bit-identical vectors.
struct Codebook {
  EncoderConfig config;
  std::uint32_t spectrum_dims = 0;       // number of m/z bins it was built for
  std::vector<Hypervector> position;     // spectrum_dims entries
  std::vector<Hypervector> level;        // levels + 1 entries, indices 0..Q
};

/// Position codebook. The first vector is sampled uniformly; each subsequent
/// vector flips `step_flips` positions of its predecessor, drawn uniformly
/// WITH replacement (a position drawn an even number of times is unchanged).
/// Expected normalized similarity between positions i and j is
///   0.5 + 0.5 * (1 - 2/dim)^(step_flips * |i - j|),
/// which decays smoothly from 1 toward 0.5: neighboring bins stay correlated,
/// distant bins become orthogonal.
///
/// Total for step_flips == 0 (all vectors identical) even though
/// EncoderConfig::validate rejects it for full runs.
std::vector<Hypervector> gen_position_hvs(std::uint32_t spectrum_dims,
                                          const EncoderConfig& config);

/// Level codebook of levels+1 vectors. L_0 is sampled uniformly; a fixed
/// random permutation of dim/2 distinct positions is drawn once, and L_q
/// equals L_0 with the first floor((dim/2) * q / levels) positions of that
/// permutation flipped. Consequently sim(L_0, L_Q) == 0.5 and, whenever
/// levels divides dim/2, sim(L_a, L_b) == 1 - |a-b| / (2 * levels) exactly.
std::vector<Hypervector> gen_level_hvs(const EncoderConfig& config);

/// Generates both codebooks. Position and level vectors come from separate
/// named RNG streams derived from config.seed, so each half is independent
/// of the other and of generation order.
Codebook make_codebook(std::uint32_t spectrum_dims, const EncoderConfig& config);

}  // namespace homs
