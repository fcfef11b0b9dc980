#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "homs/cache.hpp"
#include "homs/parallel.hpp"
#include "homs/search.hpp"

namespace homs {

/// Full configuration of an encode or search run.
struct RunConfig {
  std::filesystem::path library_path;
  std::filesystem::path query_path;
  std::filesystem::path cache_path;
  std::filesystem::path output_path;

  EncodingProfile profile;
  Tolerance narrow{Tolerance::Kind::ppm, 20.0};
  Tolerance wide{Tolerance::Kind::dalton, 500.0};
  double fdr_q = 0.01;
  std::size_t batch_size = 0;  // 0: derive from available memory at startup
  std::string decoy_prefix = "DECOY_";
  unsigned threads = default_thread_count();

  void validate() const;
};

/// Queries per work unit when batch_size is left at 0: a host-memory budget
/// divided by the per-spectrum footprint at dimensionality dim.
std::size_t default_batch_size(std::uint32_t dim);

/// Preprocesses and encodes spectra, dropping the unprocessable ones.
/// Returned entries keep input order. Pure per spectrum, parallel across
/// them.
struct EncodeOutcome {
  std::vector<EncodedSpectrum> encoded;
  std::size_t unprocessable = 0;
};
EncodeOutcome encode_spectra(std::span<const RawSpectrum> spectra,
                             const Codebook& codebook,
                             const PreprocessConfig& preprocess,
                             unsigned threads, std::size_t batch_size);

struct EncodeSummary {
  std::size_t parsed = 0;
  std::size_t unprocessable = 0;
  std::size_t encoded = 0;
  double wall_seconds = 0.0;
};

/// encode subcommand: parse the library MGF, refine, vectorize, encode and
/// persist the cache. Deterministic: identical config produces a
/// byte-identical cache file.
EncodeSummary run_encode(const RunConfig& config);

struct SearchStats {
  std::size_t total_queries = 0;
  std::size_t skipped_unknown_charge = 0;
  std::size_t unprocessable = 0;
  std::size_t accepted_narrow = 0;
  std::size_t accepted_wide = 0;
  std::size_t unidentified = 0;
  double wall_seconds = 0.0;
  double queries_per_second = 0.0;
  double kernel_speedup = 0.0;  // packed Hamming scan vs per-bit scan
};

struct SearchResult {
  std::vector<Ssm> accepted;
  SearchStats stats;
};

/// search subcommand: load the cache (validating its config block), encode
/// the queries in batches and run the cascade. Accepted matches are written
/// as TSV to config.output_path when set. Results are independent of thread
/// count and batch size.
SearchResult run_search(const RunConfig& config);

/// TSV with a header row; columns: query_id, library_id, peptide, charge,
/// query_precursor_mz, library_precursor_mz, mass_diff, score, stage,
/// q_value.
void write_ssm_tsv(std::ostream& out, std::span<const Ssm> ssms);

void print_encode_summary(std::ostream& out, const EncodeSummary& summary);
void print_search_stats(std::ostream& out, const SearchStats& stats);

/// Wall-time ratio of the packed word-level Hamming kernel to a per-bit
/// scan over the same data; > 1 means packing pays off. Reported in search
/// stats for regression tracking.
double measure_kernel_speedup(std::uint32_t dim);

}  // namespace homs
