#include "homs/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "homs/errors.hpp"

namespace homs {

namespace {

// Absolute nudge applied before floor/ceil so that m/z values sitting on a
// bin boundary land in the upper bin instead of being pushed down by
// floating-point representation noise (e.g. (100.05 - 100) / 0.05 evaluates
// just below 1). The quotients involved stay below ~1e5, where accumulated
// rounding error is orders of magnitude smaller than 1e-9.
constexpr double kBinEpsilon = 1e-9;

}  // namespace

void PreprocessConfig::validate() const {
  if (!(min_mz < max_mz)) {
    throw ConfigError("preprocess: min_mz must be smaller than max_mz");
  }
  if (!(bin_size > 0.0)) {
    throw ConfigError("preprocess: bin_size must be positive");
  }
  if (min_peaks < 1 || max_peaks < min_peaks) {
    throw ConfigError("preprocess: need max_peaks >= min_peaks >= 1");
  }
  if (!(intensity_floor >= 0.0 && intensity_floor < 1.0)) {
    throw ConfigError("preprocess: intensity_floor must lie in [0, 1)");
  }
}

std::uint32_t dimension(const PreprocessConfig& config) {
  const double q = (config.max_mz - config.min_mz) / config.bin_size;
  return static_cast<std::uint32_t>(std::ceil(q - kBinEpsilon));
}

std::optional<RawSpectrum> refine_peaks(const RawSpectrum& s,
                                        const PreprocessConfig& config) {
  std::vector<Peak> kept;
  kept.reserve(s.peaks.size());
  for (const Peak& p : s.peaks) {
    if (p.mz >= config.min_mz && p.mz < config.max_mz && p.intensity > 0.0) {
      kept.push_back(p);
    }
  }

  if (!kept.empty()) {
    double base = 0.0;
    for (const Peak& p : kept) base = std::max(base, p.intensity);
    const double floor_intensity = config.intensity_floor * base;
    std::erase_if(kept, [&](const Peak& p) { return p.intensity < floor_intensity; });
  }

  if (kept.size() > config.max_peaks) {
    // Most intense first; equal intensities keep the lower-m/z peak.
    std::sort(kept.begin(), kept.end(), [](const Peak& a, const Peak& b) {
      if (a.intensity != b.intensity) return a.intensity > b.intensity;
      return a.mz < b.mz;
    });
    kept.resize(config.max_peaks);
    std::sort(kept.begin(), kept.end(),
              [](const Peak& a, const Peak& b) { return a.mz < b.mz; });
  }

  if (kept.size() < config.min_peaks) return std::nullopt;

  RawSpectrum out;
  out.meta = s.meta;
  out.peaks = std::move(kept);
  return out;
}

SpectrumVector vectorize(const RawSpectrum& refined, const PreprocessConfig& config) {
  if (refined.peaks.empty()) {
    throw InvariantError("vectorize: refined spectrum has no peaks");
  }

  const std::uint32_t dims = dimension(config);
  SpectrumVector sv;
  sv.dims = dims;
  sv.meta = refined.meta;
  sv.bins.reserve(refined.peaks.size());
  sv.intensities.reserve(refined.peaks.size());

  // Peaks arrive sorted by m/z, so bins are non-decreasing and collisions
  // are adjacent: sum them as they appear.
  for (const Peak& p : refined.peaks) {
    const double q = (p.mz - config.min_mz) / config.bin_size + kBinEpsilon;
    auto bin = static_cast<std::uint32_t>(
        std::clamp(std::floor(q), 0.0, static_cast<double>(dims - 1)));
    if (!sv.bins.empty() && sv.bins.back() == bin) {
      sv.intensities.back() += p.intensity;
    } else {
      sv.bins.push_back(bin);
      sv.intensities.push_back(p.intensity);
    }
  }

  if (config.scaling == IntensityScaling::sqrt) {
    for (double& v : sv.intensities) v = std::sqrt(v);
  }

  const double top = *std::max_element(sv.intensities.begin(), sv.intensities.end());
  for (double& v : sv.intensities) v /= top;
  return sv;
}

}  // namespace homs
