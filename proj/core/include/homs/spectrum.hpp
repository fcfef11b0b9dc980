#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace homs {

/// Charge state 0 means "not reported by the instrument".
inline constexpr std::uint8_t kUnknownCharge = 0;

struct Peak {
  double mz = 0.0;
  double intensity = 0.0;

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Identity and precursor metadata carried alongside a spectrum through
/// every stage of the pipeline (parsing, vectorization, cache, search).
struct SpectrumMeta {
  std::string id;
  double precursor_mz = 0.0;
  std::uint8_t charge = kUnknownCharge;
  bool is_decoy = false;
  std::string peptide;  // empty when the entry carries no peptide label

  bool has_known_charge() const noexcept { return charge != kUnknownCharge; }

  friend bool operator==(const SpectrumMeta&, const SpectrumMeta&) = default;
};

/// One MS/MS spectrum as parsed from disk. Peaks are sorted strictly
/// ascending by m/z; duplicate m/z values have been merged by intensity sum.
struct RawSpectrum {
  SpectrumMeta meta;
  std::vector<Peak> peaks;

  friend bool operator==(const RawSpectrum&, const RawSpectrum&) = default;
};

}  // namespace homs
