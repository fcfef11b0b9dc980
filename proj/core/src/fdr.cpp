#include "homs/fdr.hpp"

#include <algorithm>
#include <numeric>

namespace homs {

FdrCurve compute_fdr_curve(std::vector<Ssm> ssms) {
  FdrCurve curve;
  const std::size_t n = ssms.size();
  if (n == 0) return curve;

  curve.input_index.resize(n);
  std::iota(curve.input_index.begin(), curve.input_index.end(), std::size_t{0});
  // Descending score; at equal score decoys sort first so that a tied decoy
  // is counted against every tied target.
  std::stable_sort(curve.input_index.begin(), curve.input_index.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (ssms[a].score != ssms[b].score) {
                       return ssms[a].score > ssms[b].score;
                     }
                     return ssms[a].is_decoy > ssms[b].is_decoy;
                   });

  curve.ssms.reserve(n);
  curve.targets.resize(n);
  curve.decoys.resize(n);
  curve.fdr.resize(n);
  curve.q_value.resize(n);

  std::size_t targets = 0;
  std::size_t decoys = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Ssm& s = ssms[curve.input_index[i]];
    (s.is_decoy ? decoys : targets) += 1;
    curve.targets[i] = targets;
    curve.decoys[i] = decoys;
    curve.fdr[i] = static_cast<double>(decoys) /
                   static_cast<double>(std::max<std::size_t>(1, targets));
    curve.ssms.push_back(s);
  }

  double running_min = curve.fdr[n - 1];
  for (std::size_t i = n; i-- > 0;) {
    running_min = std::min(running_min, curve.fdr[i]);
    curve.q_value[i] = running_min;
    curve.ssms[i].q_value = running_min;
  }
  return curve;
}

std::vector<Ssm> filter_at_fdr(const FdrCurve& curve, double q) {
  std::vector<Ssm> accepted;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!curve.ssms[i].is_decoy && curve.q_value[i] <= q) {
      accepted.push_back(curve.ssms[i]);
    }
  }
  return accepted;
}

}  // namespace homs
