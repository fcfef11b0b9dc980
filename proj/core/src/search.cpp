#include "homs/search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "homs/errors.hpp"
#include "homs/fdr.hpp"
#include "homs/parallel.hpp"

namespace homs {

void Tolerance::validate() const {
  if (!(value > 0.0)) throw ConfigError("tolerance value must be positive");
}

LibraryIndex build_index(std::span<const EncodedSpectrum> refs) {
  if (refs.empty()) throw InvariantError("build_index: library is empty");

  LibraryIndex index;
  index.dim_ = refs.front().hv.size_bits();
  index.metas_.reserve(refs.size());
  for (const auto& r : refs) {
    if (r.hv.size_bits() != index.dim_) {
      throw InvariantError("build_index: mixed hypervector dimensionalities");
    }
    index.metas_.push_back(r.meta);
  }

  std::map<std::uint8_t, std::vector<std::uint32_t>> by_charge;
  for (std::uint32_t i = 0; i < refs.size(); ++i) {
    by_charge[refs[i].meta.charge].push_back(i);
  }

  const std::size_t words_per = Hypervector::words_for(index.dim_);
  for (auto& [charge, ordinals] : by_charge) {
    std::sort(ordinals.begin(), ordinals.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                const auto& ma = refs[a].meta;
                const auto& mb = refs[b].meta;
                if (ma.precursor_mz != mb.precursor_mz) {
                  return ma.precursor_mz < mb.precursor_mz;
                }
                if (ma.id != mb.id) return ma.id < mb.id;
                return a < b;
              });

    LibraryIndex::Bucket bucket;
    bucket.precursor_mz.reserve(ordinals.size());
    bucket.ordinal = std::move(ordinals);
    bucket.words.reserve(bucket.ordinal.size() * words_per);
    for (std::uint32_t ord : bucket.ordinal) {
      bucket.precursor_mz.push_back(refs[ord].meta.precursor_mz);
      const auto words = refs[ord].hv.words();
      bucket.words.insert(bucket.words.end(), words.begin(), words.end());
    }
    index.buckets_.emplace(charge, std::move(bucket));
  }
  return index;
}

CandidateRange select_candidates(const SpectrumMeta& query,
                                 const LibraryIndex& index, const Tolerance& tol) {
  CandidateRange range;
  if (!query.has_known_charge()) return range;
  const auto* bucket = index.bucket_for(query.charge);
  if (bucket == nullptr) return range;

  const auto& mzs = bucket->precursor_mz;
  const double q = query.precursor_mz;
  const double w = tol.window_at(q);
  auto pred = [&](std::size_t i) { return tol.accepts(q, mzs[i]); };

  // Binary search lands within rounding noise of the window edges; the
  // predicate region is contiguous, so extend-then-trim with the exact
  // predicate makes the range agree with a direct linear scan bit for bit.
  std::size_t lo = std::lower_bound(mzs.begin(), mzs.end(), q - w) - mzs.begin();
  std::size_t hi = std::upper_bound(mzs.begin(), mzs.end(), q + w) - mzs.begin();
  while (lo > 0 && pred(lo - 1)) --lo;
  hi = std::max(hi, lo);
  while (hi < mzs.size() && pred(hi)) ++hi;
  while (lo < hi && !pred(lo)) ++lo;
  while (hi > lo && !pred(hi - 1)) --hi;

  range.bucket = bucket;
  range.first = lo;
  range.last = hi;
  return range;
}

namespace {

std::uint32_t row_similarity(const std::uint64_t* row,
                             std::span<const std::uint64_t> query,
                             std::uint32_t dim) {
  std::uint32_t diff = 0;
  for (std::size_t w = 0; w < query.size(); ++w) {
    diff += static_cast<std::uint32_t>(std::popcount(row[w] ^ query[w]));
  }
  return dim - diff;
}

}  // namespace

std::optional<Ssm> search_one(const EncodedSpectrum& query,
                              const LibraryIndex& index, const Tolerance& tol) {
  if (query.hv.size_bits() != index.dim()) {
    throw InvariantError("search_one: query dimensionality does not match index");
  }

  const CandidateRange range = select_candidates(query.meta, index, tol);
  if (range.empty()) return std::nullopt;

  const auto& bucket = *range.bucket;
  const auto qwords = query.hv.words();
  const std::size_t words_per = qwords.size();
  const double q_mz = query.meta.precursor_mz;

  bool have_best = false;
  std::uint32_t best_score = 0;
  double best_abs_diff = 0.0;
  std::size_t best_pos = 0;

  for (std::size_t i = range.first; i < range.last; ++i) {
    const std::uint32_t score =
        row_similarity(&bucket.words[i * words_per], qwords, index.dim());
    const double abs_diff = std::abs(q_mz - bucket.precursor_mz[i]);
    // Ties: prefer the smaller |mass_diff| (the less-modified explanation),
    // then smaller library id, then original library position. Equal
    // |mass_diff| can pair candidates from both sides of the query m/z, so
    // the id/ordinal comparison is explicit rather than relying on bucket
    // order.
    bool better = false;
    if (!have_best || score > best_score) {
      better = true;
    } else if (score == best_score) {
      if (abs_diff < best_abs_diff) {
        better = true;
      } else if (abs_diff == best_abs_diff) {
        const SpectrumMeta& cand = index.meta(bucket.ordinal[i]);
        const SpectrumMeta& best = index.meta(bucket.ordinal[best_pos]);
        better = cand.id < best.id ||
                 (cand.id == best.id &&
                  bucket.ordinal[i] < bucket.ordinal[best_pos]);
      }
    }
    if (better) {
      have_best = true;
      best_score = score;
      best_abs_diff = abs_diff;
      best_pos = i;
    }
  }

  const SpectrumMeta& lib = index.meta(bucket.ordinal[best_pos]);
  Ssm ssm;
  ssm.query_id = query.meta.id;
  ssm.library_id = lib.id;
  ssm.peptide = lib.peptide;
  ssm.charge = query.meta.charge;
  ssm.query_precursor_mz = q_mz;
  ssm.library_precursor_mz = lib.precursor_mz;
  ssm.mass_diff = q_mz - lib.precursor_mz;
  ssm.raw_score = best_score;
  ssm.score = static_cast<double>(best_score) / static_cast<double>(index.dim());
  ssm.is_decoy = lib.is_decoy;
  ssm.stage = SearchStage::narrow;
  return ssm;
}

std::vector<std::optional<Ssm>> search_batch(std::span<const EncodedSpectrum> queries,
                                             const LibraryIndex& index,
                                             const Tolerance& tol,
                                             const SearchOptions& options) {
  std::vector<std::optional<Ssm>> results(queries.size());
  parallel_for(queries.size(), options.threads, options.batch_size,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i) {
                   results[i] = search_one(queries[i], index, tol);
                 }
               });
  return results;
}

namespace {

// One FDR-filtered stage. Marks accepted queries and stores their matches.
void run_stage(std::span<const EncodedSpectrum> queries,
               const std::vector<std::size_t>& todo, const LibraryIndex& index,
               const Tolerance& tol, SearchStage stage, double fdr_q,
               const SearchOptions& options, std::vector<std::optional<Ssm>>& accepted) {
  std::vector<EncodedSpectrum> stage_queries;
  stage_queries.reserve(todo.size());
  for (std::size_t qi : todo) stage_queries.push_back(queries[qi]);

  const auto hits = search_batch(stage_queries, index, tol, options);

  std::vector<Ssm> pool;
  std::vector<std::size_t> pool_query;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i]) {
      Ssm ssm = *hits[i];
      ssm.stage = stage;
      pool.push_back(std::move(ssm));
      pool_query.push_back(todo[i]);
    }
  }

  const FdrCurve curve = compute_fdr_curve(std::move(pool));
  for (std::size_t p = 0; p < curve.size(); ++p) {
    if (!curve.ssms[p].is_decoy && curve.q_value[p] <= fdr_q) {
      accepted[pool_query[curve.input_index[p]]] = curve.ssms[p];
    }
  }
}

}  // namespace

std::vector<Ssm> cascade_search(std::span<const EncodedSpectrum> queries,
                                const LibraryIndex& index,
                                const Tolerance& narrow, const Tolerance& wide,
                                double fdr_q, const SearchOptions& options) {
  narrow.validate();
  wide.validate();

  std::vector<std::optional<Ssm>> accepted(queries.size());

  std::vector<std::size_t> todo(queries.size());
  std::iota(todo.begin(), todo.end(), std::size_t{0});
  run_stage(queries, todo, index, narrow, SearchStage::narrow, fdr_q, options,
            accepted);

  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (!accepted[i]) remaining.push_back(i);
  }
  run_stage(queries, remaining, index, wide, SearchStage::wide, fdr_q, options,
            accepted);

  std::vector<Ssm> out;
  for (const auto& a : accepted) {
    if (a && a->stage == SearchStage::narrow) out.push_back(*a);
  }
  for (const auto& a : accepted) {
    if (a && a->stage == SearchStage::wide) out.push_back(*a);
  }
  return out;
}

}  // namespace homs
