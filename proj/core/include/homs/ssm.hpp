#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace homs {

/// Which cascade stage produced a match.
enum class SearchStage : std::uint8_t { narrow = 0, wide = 1 };

inline const char* to_string(SearchStage s) {
  return s == SearchStage::narrow ? "narrow" : "wide";
}

/// Spectrum-spectrum match: the best-scoring library entry for one query.
struct Ssm {
  std::string query_id;
  std::string library_id;
  std::string peptide;
  std::uint8_t charge = 0;
  double query_precursor_mz = 0.0;
  double library_precursor_mz = 0.0;
  double mass_diff = 0.0;       // query - library precursor m/z, Thomson
  std::uint32_t raw_score = 0;  // Hamming similarity, in [0, D]
  double score = 0.0;           // raw_score / D, in [0, 1]
  bool is_decoy = false;
  SearchStage stage = SearchStage::narrow;
  std::optional<double> q_value;
};

}  // namespace homs
