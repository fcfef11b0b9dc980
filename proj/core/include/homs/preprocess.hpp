#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homs/spectrum.hpp"

namespace homs {

enum class IntensityScaling : std::uint8_t { none = 0, sqrt = 1 };

struct PreprocessConfig {
  double min_mz = 101.0;
  double max_mz = 1500.0;
  double bin_size = 0.05;
  std::uint32_t max_peaks = 50;
  std::uint32_t min_peaks = 10;
  double intensity_floor = 0.01;  // fraction of base-peak intensity, in [0, 1)
  IntensityScaling scaling = IntensityScaling::none;

  void validate() const;

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

/// Sparse binned spectrum: parallel index/value arrays ordered by bin,
/// no duplicate bins, intensities base-peak normalized into (0, 1].
struct SpectrumVector {
  std::uint32_t dims = 0;               // number of m/z bins
  std::vector<std::uint32_t> bins;      // strictly ascending
  std::vector<double> intensities;      // same length as bins, max element == 1
  SpectrumMeta meta;
};

/// Number of m/z bins: ceil((max_mz - min_mz) / bin_size).
std::uint32_t dimension(const PreprocessConfig& config);

/// Noise removal. Drops peaks outside [min_mz, max_mz), peaks below
/// intensity_floor * base-peak intensity (zero-intensity peaks always go),
/// then keeps at most max_peaks most-intense peaks, ties broken toward lower
/// m/z. Returns nullopt when fewer than min_peaks peaks survive; such spectra
/// are excluded from search and counted in run statistics.
std::optional<RawSpectrum> refine_peaks(const RawSpectrum& s,
                                        const PreprocessConfig& config);

/// Bins a refined spectrum: bin = floor((mz - min_mz) / bin_size), half-open
/// intervals. Peaks falling in one bin have their intensities summed, then
/// the optional sqrt scaling is applied and everything is divided by the
/// maximum so the top entry is exactly 1. Throws InvariantError on an empty
/// peak list (refine_peaks gates that).
SpectrumVector vectorize(const RawSpectrum& refined, const PreprocessConfig& config);

}  // namespace homs
