#include "homs/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "homs/errors.hpp"

namespace homs {

std::uint32_t quantize_intensity(double v, std::uint32_t levels) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvariantError("quantize_intensity: intensity outside [0, 1]");
  }
  const double level = std::round(v * static_cast<double>(levels));
  return std::min(static_cast<std::uint32_t>(level), levels);
}

Hypervector encode(const SpectrumVector& sv, const Codebook& cb) {
  if (sv.dims != cb.spectrum_dims) {
    throw InvariantError("encode: spectrum vector dims do not match codebook");
  }
  if (sv.bins.empty()) {
    throw InvariantError("encode: empty spectrum vector");
  }

  const std::uint32_t dim = cb.config.dim;
  const std::size_t n_peaks = sv.bins.size();

  // votes[d] counts peaks whose position and level bits agree at d; the
  // bipolar accumulator is 2*votes - n_peaks, and the output bit is set only
  // when it is strictly positive (zero maps to the clear bit).
  std::vector<std::uint32_t> votes(dim, 0);
  for (std::size_t k = 0; k < n_peaks; ++k) {
    const Hypervector& pos = cb.position[sv.bins[k]];
    const Hypervector& lvl =
        cb.level[quantize_intensity(sv.intensities[k], cb.config.levels)];
    const auto pw = pos.words();
    const auto lw = lvl.words();
    for (std::size_t w = 0; w < pw.size(); ++w) {
      const std::uint64_t agree = ~(pw[w] ^ lw[w]);
      const std::uint32_t base = static_cast<std::uint32_t>(w) * Hypervector::kWordBits;
      const std::uint32_t top = std::min(Hypervector::kWordBits, dim - base);
      for (std::uint32_t b = 0; b < top; ++b) {
        votes[base + b] += static_cast<std::uint32_t>((agree >> b) & 1u);
      }
    }
  }

  Hypervector out(dim);
  for (std::uint32_t d = 0; d < dim; ++d) {
    if (2ull * votes[d] > n_peaks) out.set_bit(d);
  }
  return out;
}

}  // namespace homs
