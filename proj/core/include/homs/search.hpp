#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "homs/cache.hpp"
#include "homs/ssm.hpp"

namespace homs {

/// Precursor m/z tolerance. ppm windows are relative to the query precursor.
struct Tolerance {
  enum class Kind : std::uint8_t { ppm, dalton };

  Kind kind = Kind::ppm;
  double value = 20.0;

  /// Half-width of the candidate window around query_mz, in Thomson.
  double window_at(double query_mz) const noexcept {
    return kind == Kind::ppm ? value * query_mz * 1e-6 : value;
  }

  /// True when |query_mz - reference_mz| is within the window.
  bool accepts(double query_mz, double reference_mz) const noexcept {
    return std::abs(query_mz - reference_mz) <= window_at(query_mz);
  }

  void validate() const;
};

/// Charge-partitioned precursor index over an encoded library. Buckets hold
/// parallel arrays sorted ascending by precursor m/z (ties ordered by
/// library id, then original position); hypervectors are packed row-major
/// for contiguous scanning. Immutable after construction.
class LibraryIndex {
 public:
  struct Bucket {
    std::vector<double> precursor_mz;       // non-decreasing
    std::vector<std::uint32_t> ordinal;     // position in the input library
    std::vector<std::uint64_t> words;       // row-major packed hypervectors

    std::size_t size() const noexcept { return precursor_mz.size(); }
  };

  std::uint32_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return metas_.size(); }

  const Bucket* bucket_for(std::uint8_t charge) const {
    auto it = buckets_.find(charge);
    return it == buckets_.end() ? nullptr : &it->second;
  }

  const std::map<std::uint8_t, Bucket>& buckets() const noexcept { return buckets_; }
  const SpectrumMeta& meta(std::size_t ordinal) const { return metas_[ordinal]; }

 private:
  friend LibraryIndex build_index(std::span<const EncodedSpectrum> refs);

  std::uint32_t dim_ = 0;
  std::vector<SpectrumMeta> metas_;             // in input order
  std::map<std::uint8_t, Bucket> buckets_;
};

/// Contiguous candidate range [first, last) within one charge bucket.
struct CandidateRange {
  const LibraryIndex::Bucket* bucket = nullptr;
  std::size_t first = 0;
  std::size_t last = 0;

  bool empty() const noexcept { return bucket == nullptr || first >= last; }
  std::size_t size() const noexcept { return empty() ? 0 : last - first; }
};

/// Builds the index. Every library entry lands in exactly one bucket
/// (entries with unknown charge are parked under kUnknownCharge, which no
/// query ever reaches). Throws InvariantError on an empty library or mixed
/// dimensionalities.
LibraryIndex build_index(std::span<const EncodedSpectrum> refs);

/// References in the query's charge bucket whose precursor m/z passes the
/// tolerance. Empty range when the charge is unknown or has no bucket.
CandidateRange select_candidates(const SpectrumMeta& query,
                                 const LibraryIndex& index,
                                 const Tolerance& tol);

struct SearchOptions {
  unsigned threads = 1;
  std::size_t batch_size = 512;  // queries per work unit
};

/// Best candidate by Hamming similarity; ties broken by smaller |mass_diff|,
/// then smaller library id, then original library position. nullopt when the
/// candidate range is empty. Throws InvariantError on dimensionality
/// mismatch.
std::optional<Ssm> search_one(const EncodedSpectrum& query,
                              const LibraryIndex& index, const Tolerance& tol);

/// Elementwise search_one over a query list; batching and threading cannot
/// change the result.
std::vector<std::optional<Ssm>> search_batch(std::span<const EncodedSpectrum> queries,
                                             const LibraryIndex& index,
                                             const Tolerance& tol,
                                             const SearchOptions& options = {});

/// Two-stage cascade: search at the narrow tolerance and FDR-filter; queries
/// that were not accepted are re-searched at the wide tolerance and
/// FDR-filtered independently. Returns accepted matches only, stage-tagged
/// and q-valued: the narrow block first, then the wide block, each in query
/// input order.
std::vector<Ssm> cascade_search(std::span<const EncodedSpectrum> queries,
                                const LibraryIndex& index,
                                const Tolerance& narrow, const Tolerance& wide,
                                double fdr_q, const SearchOptions& options = {});

}  // namespace homs
