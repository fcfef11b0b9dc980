#include "homs/pipeline.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include "homs/encoder.hpp"
#include "homs/errors.hpp"
#include "homs/fdr.hpp"
#include "homs/mgf.hpp"
#include "homs/rng.hpp"

namespace homs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t available_memory_bytes() {
  const long pages = sysconf(_SC_AVPHYS_PAGES);
  const long page_size = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page_size <= 0) return std::size_t{1} << 30;
  return static_cast<std::size_t>(pages) * static_cast<std::size_t>(page_size);
}

}  // namespace

void RunConfig::validate() const {
  profile.validate();
  narrow.validate();
  wide.validate();
  if (!(fdr_q > 0.0 && fdr_q < 1.0)) {
    throw ConfigError("fdr threshold must lie in (0, 1)");
  }
  if (threads < 1) throw ConfigError("thread count must be at least 1");
  if (!decoy_prefix.empty() && decoy_prefix.find_first_of("\t\n") != std::string::npos) {
    throw ConfigError("decoy prefix must not contain tabs or newlines");
  }
}

std::size_t default_batch_size(std::uint32_t dim) {
  // A quarter of currently free memory, capped at 1 GiB, divided by a
  // generous per-spectrum footprint (packed hypervector + peaks + metadata).
  const std::size_t budget =
      std::clamp(available_memory_bytes() / 4, std::size_t{64} << 20,
                 std::size_t{1} << 30);
  const std::size_t per_spectrum = Hypervector::words_for(dim) * 8 + 2048;
  return std::clamp(budget / per_spectrum, std::size_t{256}, std::size_t{1} << 20);
}

EncodeOutcome encode_spectra(std::span<const RawSpectrum> spectra,
                             const Codebook& codebook,
                             const PreprocessConfig& preprocess,
                             unsigned threads, std::size_t batch_size) {
  std::vector<std::optional<EncodedSpectrum>> slots(spectra.size());
  parallel_for(spectra.size(), threads, batch_size,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i) {
                   auto refined = refine_peaks(spectra[i], preprocess);
                   if (!refined) continue;
                   const SpectrumVector sv = vectorize(*refined, preprocess);
                   slots[i] = EncodedSpectrum{sv.meta, encode(sv, codebook)};
                 }
               });

  EncodeOutcome outcome;
  outcome.encoded.reserve(spectra.size());
  for (auto& slot : slots) {
    if (slot) {
      outcome.encoded.push_back(std::move(*slot));
    } else {
      ++outcome.unprocessable;
    }
  }
  return outcome;
}

EncodeSummary run_encode(const RunConfig& config) {
  config.validate();
  const auto start = Clock::now();

  const auto parsed = parse_mgf_file(config.library_path, config.decoy_prefix);
  const Codebook codebook =
      make_codebook(dimension(config.profile.preprocess), config.profile.encoder);
  const std::size_t batch =
      config.batch_size > 0 ? config.batch_size
                            : default_batch_size(config.profile.encoder.dim);
  auto outcome = encode_spectra(parsed, codebook, config.profile.preprocess,
                                config.threads, batch);
  write_cache_file(config.cache_path, outcome.encoded, config.profile);

  EncodeSummary summary;
  summary.parsed = parsed.size();
  summary.unprocessable = outcome.unprocessable;
  summary.encoded = outcome.encoded.size();
  summary.wall_seconds = seconds_since(start);
  return summary;
}

SearchResult run_search(const RunConfig& config) {
  config.validate();
  // A cascade only makes sense when the narrow window is tighter than the
  // wide one; probe at a generous precursor m/z so ppm-vs-Da mixes are
  // checked where the ppm window is widest.
  constexpr double kProbeMz = 10000.0;
  if (config.narrow.window_at(kProbeMz) >= config.wide.window_at(kProbeMz)) {
    throw ConfigError("narrow tolerance must be tighter than the wide tolerance");
  }

  const auto start = Clock::now();
  const auto queries_raw = parse_mgf_file(config.query_path, config.decoy_prefix);
  const auto library = read_cache_file(config.cache_path, config.profile);
  const LibraryIndex index = build_index(library);

  const auto search_start = Clock::now();

  std::vector<RawSpectrum> with_charge;
  with_charge.reserve(queries_raw.size());
  std::size_t skipped_unknown = 0;
  for (const auto& q : queries_raw) {
    if (q.meta.has_known_charge()) {
      with_charge.push_back(q);
    } else {
      ++skipped_unknown;  // the search filters by charge; nothing to compare
    }
  }

  const Codebook codebook =
      make_codebook(dimension(config.profile.preprocess), config.profile.encoder);
  const std::size_t batch =
      config.batch_size > 0 ? config.batch_size
                            : default_batch_size(config.profile.encoder.dim);
  auto encoded = encode_spectra(with_charge, codebook, config.profile.preprocess,
                                config.threads, batch);

  SearchOptions options;
  options.threads = config.threads;
  options.batch_size = batch;
  auto accepted = cascade_search(encoded.encoded, index, config.narrow,
                                 config.wide, config.fdr_q, options);
  const double search_seconds = seconds_since(search_start);

  SearchResult result;
  result.stats.total_queries = queries_raw.size();
  result.stats.skipped_unknown_charge = skipped_unknown;
  result.stats.unprocessable = encoded.unprocessable;
  for (const Ssm& s : accepted) {
    (s.stage == SearchStage::narrow ? result.stats.accepted_narrow
                                    : result.stats.accepted_wide) += 1;
  }
  result.stats.unidentified = encoded.encoded.size() - accepted.size();
  result.stats.wall_seconds = seconds_since(start);
  result.stats.queries_per_second =
      search_seconds > 0.0
          ? static_cast<double>(queries_raw.size()) / search_seconds
          : 0.0;
  result.stats.kernel_speedup = measure_kernel_speedup(config.profile.encoder.dim);
  result.accepted = std::move(accepted);

  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path);
    if (!out) throw IoError("cannot write " + config.output_path.string());
    write_ssm_tsv(out, result.accepted);
    out.flush();
    if (!out) throw IoError("failed writing " + config.output_path.string());
  }
  return result;
}

void write_ssm_tsv(std::ostream& out, std::span<const Ssm> ssms) {
  out << "query_id\tlibrary_id\tpeptide\tcharge\tquery_precursor_mz\t"
         "library_precursor_mz\tmass_diff\tscore\tstage\tq_value\n";
  char buf[160];
  for (const Ssm& s : ssms) {
    std::snprintf(buf, sizeof buf, "%.5f\t%.5f\t%.5f\t%.6f", s.query_precursor_mz,
                  s.library_precursor_mz, s.mass_diff, s.score);
    out << s.query_id << '\t' << s.library_id << '\t' << s.peptide << '\t'
        << static_cast<unsigned>(s.charge) << '\t' << buf << '\t'
        << to_string(s.stage) << '\t';
    if (s.q_value) {
      std::snprintf(buf, sizeof buf, "%.6g", *s.q_value);
      out << buf;
    }
    out << '\n';
  }
}

void print_encode_summary(std::ostream& out, const EncodeSummary& summary) {
  char buf[64];
  out << "spectra_parsed: " << summary.parsed << '\n';
  out << "spectra_unprocessable: " << summary.unprocessable << '\n';
  out << "spectra_encoded: " << summary.encoded << '\n';
  std::snprintf(buf, sizeof buf, "%.3f", summary.wall_seconds);
  out << "wall_time_sec: " << buf << '\n';
}

void print_search_stats(std::ostream& out, const SearchStats& stats) {
  char buf[64];
  out << "queries_total: " << stats.total_queries << '\n';
  out << "queries_skipped_unknown_charge: " << stats.skipped_unknown_charge << '\n';
  out << "queries_unprocessable: " << stats.unprocessable << '\n';
  out << "accepted_narrow: " << stats.accepted_narrow << '\n';
  out << "accepted_wide: " << stats.accepted_wide << '\n';
  out << "unidentified: " << stats.unidentified << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", stats.queries_per_second);
  out << "throughput_queries_per_sec: " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", stats.kernel_speedup);
  out << "hamming_packed_vs_bitwise_speedup: " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.3f", stats.wall_seconds);
  out << "wall_time_sec: " << buf << '\n';
}

double measure_kernel_speedup(std::uint32_t dim) {
  constexpr std::size_t kVectors = 48;
  std::mt19937_64 rng(0x6b65726e656cULL);  // fixed: measurement, not search
  std::vector<Hypervector> refs;
  refs.reserve(kVectors);
  for (std::size_t i = 0; i < kVectors; ++i) {
    Hypervector hv(dim);
    for (auto& w : hv.words()) w = rng();
    hv.mask_tail();
    refs.push_back(std::move(hv));
  }
  Hypervector query(dim);
  for (auto& w : query.words()) w = rng();
  query.mask_tail();

  volatile std::uint64_t sink = 0;

  const auto packed_start = Clock::now();
  constexpr int kPackedReps = 400;
  std::uint64_t acc = 0;
  for (int r = 0; r < kPackedReps; ++r) {
    for (const auto& hv : refs) acc += hamming_similarity(query, hv);
  }
  sink = acc;
  const double packed = seconds_since(packed_start) / kPackedReps;

  const auto bitwise_start = Clock::now();
  constexpr int kBitwiseReps = 8;
  acc = 0;
  for (int r = 0; r < kBitwiseReps; ++r) {
    for (const auto& hv : refs) {
      std::uint32_t same = 0;
      for (std::uint32_t d = 0; d < dim; ++d) {
        same += query.bit(d) == hv.bit(d) ? 1 : 0;
      }
      acc += same;
    }
  }
  sink = acc;
  const double bitwise = seconds_since(bitwise_start) / kBitwiseReps;

  (void)sink;
  return packed > 0.0 ? bitwise / packed : 0.0;
}

}  // namespace homs
