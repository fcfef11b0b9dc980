#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "homs/spectrum.hpp"

namespace homs {

/// Synthetic benchmark generator: a random target library with decoy
/// companions, plus queries derived from targets under a configurable
/// modification model. Fragment m/z values are drawn on a 0.01 Th grid so a
/// spectrum's peaks are distinct and survive the text round trip unchanged.
struct SynthConfig {
  std::size_t n_library = 1000;       // target spectra
  std::size_t n_query = 100;
  std::uint32_t peaks_per_spectrum = 50;
  double mz_min = 150.0;              // fragment m/z range
  double mz_max = 1300.0;
  double fraction_modified = 0.0;     // queries carrying the precursor shift
  double precursor_shift_da = 79.97;  // mass delta of the planted modification
  double fraction_peaks_shifted = 0.3;
  double intensity_noise = 0.05;      // multiplicative, uniform in +-noise
  double decoy_ratio = 1.0;           // decoys per target
  std::uint64_t seed = 1;

  /// Throws ConfigError when parameters are infeasible, e.g. more peaks per
  /// spectrum than grid positions in the m/z range.
  void validate() const;
};

/// Maps a query back to the library entry it was derived from.
struct SynthTruth {
  std::string query_id;
  std::string source_id;
  bool modified = false;
  double precursor_shift_da = 0.0;
};

struct SynthOutput {
  std::vector<RawSpectrum> library;  // targets followed by decoys
  std::vector<RawSpectrum> queries;
  std::vector<SynthTruth> truth;     // aligned with queries
};

/// Deterministic for a given config: the same seed always produces the same
/// spectra. Decoys replace a source target's fragment positions with fresh
/// random ones (precursor and intensities kept) and are flagged by the
/// DECOY_ title prefix. Modified queries shift the precursor by
/// precursor_shift_da / charge and a random subset of fragment peaks by the
/// full delta; all queries receive the multiplicative intensity noise.
SynthOutput generate_benchmark(const SynthConfig& config);

void write_truth_tsv(std::ostream& out, std::span<const SynthTruth> truth);

/// Reads a file written by write_truth_tsv.
std::vector<SynthTruth> read_truth_tsv(std::istream& in);

}  // namespace homs
