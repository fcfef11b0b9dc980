#include "homs/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <unordered_set>

#include "homs/errors.hpp"
#include "homs/rng.hpp"

namespace homs {

namespace {

constexpr std::uint64_t kLibraryStream = 0x6c696272617279ULL;   // "library"
constexpr std::uint64_t kDecoyStream = 0x6465636f7973ULL;       // "decoys"
constexpr std::uint64_t kQueryStream = 0x71756572696573ULL;     // "queries"

// Fragment m/z values live on this grid so peaks inside one spectrum are
// distinct and survive the %.5f text round trip exactly.
constexpr double kGridStep = 0.01;

struct Grid {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // inclusive

  std::int64_t count() const { return hi - lo + 1; }
  double mz_of(std::int64_t idx) const { return static_cast<double>(idx) * kGridStep; }
};

Grid make_grid(double mz_min, double mz_max) {
  Grid g;
  g.lo = static_cast<std::int64_t>(std::ceil(mz_min / kGridStep - 1e-6));
  g.hi = static_cast<std::int64_t>(std::floor(mz_max / kGridStep + 1e-6));
  while (g.hi >= g.lo && g.mz_of(g.hi) >= mz_max) --g.hi;
  while (g.lo <= g.hi && g.mz_of(g.lo) < mz_min) ++g.lo;
  return g;
}

std::string padded_id(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%06zu", prefix, n);
  return buf;
}

std::string random_peptide(std::mt19937_64& rng) {
  static constexpr char kResidues[] = "ACDEFGHIKLMNPQRSTVWY";
  const std::size_t len = 7 + detail::bounded_uniform(rng, 6);
  std::string pep(len, 'A');
  for (auto& c : pep) c = kResidues[detail::bounded_uniform(rng, 20)];
  return pep;
}

std::vector<Peak> random_peaks(const Grid& grid, std::uint32_t count,
                               std::mt19937_64& rng) {
  std::unordered_set<std::int64_t> used;
  std::vector<Peak> peaks;
  peaks.reserve(count);
  while (peaks.size() < count) {
    const std::int64_t idx =
        grid.lo + static_cast<std::int64_t>(
                      detail::bounded_uniform(rng, static_cast<std::uint64_t>(grid.count())));
    if (!used.insert(idx).second) continue;
    // Intensities in [0.05, 1]: everything stays above a 1% base-peak floor.
    peaks.push_back({grid.mz_of(idx), 0.05 + 0.95 * detail::uniform_unit(rng)});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.mz < b.mz; });
  return peaks;
}

void sort_and_merge(std::vector<Peak>& peaks) {
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.mz < b.mz; });
  std::vector<Peak> merged;
  merged.reserve(peaks.size());
  for (const Peak& p : peaks) {
    if (!merged.empty() && merged.back().mz == p.mz) {
      merged.back().intensity += p.intensity;
    } else {
      merged.push_back(p);
    }
  }
  peaks = std::move(merged);
}

}  // namespace

void SynthConfig::validate() const {
  if (n_library < 1) throw ConfigError("synth: n_library must be at least 1");
  if (peaks_per_spectrum < 1) throw ConfigError("synth: need at least one peak");
  if (!(mz_min > 0.0) || !(mz_min < mz_max)) {
    throw ConfigError("synth: require 0 < mz_min < mz_max");
  }
  const Grid grid = make_grid(mz_min, mz_max);
  if (grid.count() < static_cast<std::int64_t>(peaks_per_spectrum)) {
    throw ConfigError(
        "synth: peaks_per_spectrum exceeds the distinct m/z positions in range");
  }
  if (!(fraction_modified >= 0.0 && fraction_modified <= 1.0) ||
      !(fraction_peaks_shifted >= 0.0 && fraction_peaks_shifted <= 1.0)) {
    throw ConfigError("synth: fractions must lie in [0, 1]");
  }
  if (!(intensity_noise >= 0.0 && intensity_noise < 1.0)) {
    throw ConfigError("synth: intensity_noise must lie in [0, 1)");
  }
  if (!(decoy_ratio >= 0.0)) throw ConfigError("synth: decoy_ratio must be >= 0");
}

SynthOutput generate_benchmark(const SynthConfig& config) {
  config.validate();
  const Grid grid = make_grid(config.mz_min, config.mz_max);
  const double span = config.mz_max - config.mz_min;
  const double precursor_lo = config.mz_min + 0.2 * span;
  const double precursor_hi = config.mz_max - 0.2 * span;

  SynthOutput out;

  std::mt19937_64 lib_rng(detail::stream_seed(config.seed, kLibraryStream));
  out.library.reserve(config.n_library);
  for (std::size_t i = 0; i < config.n_library; ++i) {
    RawSpectrum s;
    s.meta.id = padded_id("LIB_", i + 1);
    s.meta.peptide = random_peptide(lib_rng);
    s.meta.charge = static_cast<std::uint8_t>(2 + detail::bounded_uniform(lib_rng, 2));
    s.meta.precursor_mz =
        precursor_lo + (precursor_hi - precursor_lo) * detail::uniform_unit(lib_rng);
    s.peaks = random_peaks(grid, config.peaks_per_spectrum, lib_rng);
    out.library.push_back(std::move(s));
  }

  // Decoys keep a source target's precursor, charge and intensity profile but
  // sit on fresh random fragment positions, so they compete in the same
  // candidate windows while matching nothing in particular.
  std::mt19937_64 decoy_rng(detail::stream_seed(config.seed, kDecoyStream));
  const auto n_decoys =
      static_cast<std::size_t>(std::llround(config.decoy_ratio *
                                            static_cast<double>(config.n_library)));
  for (std::size_t j = 0; j < n_decoys; ++j) {
    const RawSpectrum& source = out.library[j % config.n_library];
    RawSpectrum d;
    d.meta.id = padded_id("DECOY_", j + 1);
    d.meta.peptide = source.meta.peptide;
    std::reverse(d.meta.peptide.begin(), d.meta.peptide.end());
    d.meta.charge = source.meta.charge;
    d.meta.precursor_mz = source.meta.precursor_mz;
    d.meta.is_decoy = true;
    d.peaks = random_peaks(grid, config.peaks_per_spectrum, decoy_rng);
    for (std::size_t k = 0; k < d.peaks.size(); ++k) {
      d.peaks[k].intensity = source.peaks[k].intensity;
    }
    out.library.push_back(std::move(d));
  }

  std::mt19937_64 query_rng(detail::stream_seed(config.seed, kQueryStream));
  out.queries.reserve(config.n_query);
  out.truth.reserve(config.n_query);
  for (std::size_t q = 0; q < config.n_query; ++q) {
    const RawSpectrum& source =
        out.library[detail::bounded_uniform(query_rng, config.n_library)];
    RawSpectrum s;
    s.meta.id = padded_id("QRY_", q + 1);
    s.meta.charge = source.meta.charge;
    s.meta.precursor_mz = source.meta.precursor_mz;
    s.peaks = source.peaks;

    SynthTruth truth;
    truth.query_id = s.meta.id;
    truth.source_id = source.meta.id;
    truth.modified = detail::uniform_unit(query_rng) < config.fraction_modified;
    if (truth.modified) {
      truth.precursor_shift_da = config.precursor_shift_da;
      s.meta.precursor_mz +=
          config.precursor_shift_da / static_cast<double>(s.meta.charge);
      for (Peak& p : s.peaks) {
        if (detail::uniform_unit(query_rng) < config.fraction_peaks_shifted) {
          p.mz += config.precursor_shift_da;
        }
      }
    }
    if (config.intensity_noise > 0.0) {
      for (Peak& p : s.peaks) {
        const double u = 2.0 * detail::uniform_unit(query_rng) - 1.0;
        p.intensity *= 1.0 + config.intensity_noise * u;
      }
    }
    sort_and_merge(s.peaks);

    out.queries.push_back(std::move(s));
    out.truth.push_back(std::move(truth));
  }
  return out;
}

void write_truth_tsv(std::ostream& out, std::span<const SynthTruth> truth) {
  out << "query_id\tsource_id\tmodified\tprecursor_shift_da\n";
  char buf[32];
  for (const SynthTruth& t : truth) {
    std::snprintf(buf, sizeof buf, "%.5f", t.precursor_shift_da);
    out << t.query_id << '\t' << t.source_id << '\t' << (t.modified ? 1 : 0)
        << '\t' << buf << '\n';
  }
}

std::vector<SynthTruth> read_truth_tsv(std::istream& in) {
  std::vector<SynthTruth> truth;
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    SynthTruth t;
    std::size_t a = line.find('\t');
    std::size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    std::size_t c = b == std::string::npos ? b : line.find('\t', b + 1);
    if (c == std::string::npos) {
      throw ParseError(line_no, "truth TSV row needs four tab-separated columns");
    }
    t.query_id = line.substr(0, a);
    t.source_id = line.substr(a + 1, b - a - 1);
    t.modified = line.substr(b + 1, c - b - 1) == "1";
    const std::string shift = line.substr(c + 1);
    const char* first = shift.data();
    auto [ptr, ec] = std::from_chars(first, first + shift.size(), t.precursor_shift_da);
    if (ec != std::errc{}) {
      throw ParseError(line_no, "bad precursor_shift_da value");
    }
    truth.push_back(std::move(t));
  }
  return truth;
}

}  // namespace homs
