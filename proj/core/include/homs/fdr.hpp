#pragma once

#include <cstddef>
#include <vector>

#include "homs/ssm.hpp"

namespace homs {

/// Target-decoy FDR curve. ssms is sorted by descending score with decoys
/// ordered before targets at equal score (the conservative direction), and
/// every entry carries its q-value. The parallel arrays hold, per sorted
/// position, the running prefix counts and the estimates:
///   fdr[i] = decoys[i] / max(1, targets[i])
///   q_value[i] = min(fdr[j]) over j >= i.
struct FdrCurve {
  std::vector<Ssm> ssms;
  std::vector<std::size_t> targets;
  std::vector<std::size_t> decoys;
  std::vector<double> fdr;
  std::vector<double> q_value;
  std::vector<std::size_t> input_index;  // sorted position -> input position

  bool empty() const noexcept { return ssms.empty(); }
  std::size_t size() const noexcept { return ssms.size(); }
};

/// Builds the curve. The estimator is #decoys / #targets, matching a
/// concatenated search against a library with an equal-size decoy set.
/// An empty input yields an empty curve.
FdrCurve compute_fdr_curve(std::vector<Ssm> ssms);

/// All non-decoy matches with q_value <= q, best score first. Decoy matches
/// never pass the filter.
std::vector<Ssm> filter_at_fdr(const FdrCurve& curve, double q);

}  // namespace homs
