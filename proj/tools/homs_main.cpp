// homs: open modification spectral library search on bit-packed binary
// hypervectors. Subcommands: encode (library -> binary cache), search
// (cascade narrow/wide query search against a cache), synth (generate a
// synthetic benchmark with ground truth).
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "homs/errors.hpp"
#include "homs/mgf.hpp"
#include "homs/pipeline.hpp"
#include "homs/synth.hpp"
#include "homs/version.hpp"

namespace {

homs::Tolerance parse_tolerance(const std::string& text, const std::string& flag) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  homs::Tolerance tol;
  if (s.size() > 3 && s.ends_with("ppm")) {
    tol.kind = homs::Tolerance::Kind::ppm;
    s.resize(s.size() - 3);
  } else if (s.size() > 2 && s.ends_with("da")) {
    tol.kind = homs::Tolerance::Kind::dalton;
    s.resize(s.size() - 2);
  } else {
    throw CLI::ValidationError(flag, "expected a value like 20ppm or 500da");
  }
  try {
    tol.value = std::stod(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected a value like 20ppm or 500da");
  }
  if (!(tol.value > 0.0)) {
    throw CLI::ValidationError(flag, "tolerance must be positive");
  }
  return tol;
}

void add_profile_options(CLI::App* cmd, homs::RunConfig& rc,
                         std::uint32_t& step_flips_flag) {
  auto& pre = rc.profile.preprocess;
  auto& enc = rc.profile.encoder;
  cmd->add_option("--min-mz", pre.min_mz, "Lower m/z bound of the bin range")
      ->capture_default_str();
  cmd->add_option("--max-mz", pre.max_mz, "Upper m/z bound of the bin range")
      ->capture_default_str();
  cmd->add_option("--bin-size", pre.bin_size, "Bin width in Thomson")
      ->capture_default_str();
  cmd->add_option("--max-peaks", pre.max_peaks, "Most intense peaks kept per spectrum")
      ->capture_default_str();
  cmd->add_option("--min-peaks", pre.min_peaks,
                  "Spectra with fewer surviving peaks are excluded")
      ->capture_default_str();
  cmd->add_option("--intensity-floor", pre.intensity_floor,
                  "Drop peaks below this fraction of the base peak")
      ->capture_default_str();
  cmd->add_option("--scaling", pre.scaling, "Intensity scaling before normalization")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, homs::IntensityScaling>{
              {"none", homs::IntensityScaling::none},
              {"sqrt", homs::IntensityScaling::sqrt}},
          CLI::ignore_case))
      ->default_str("none");
  cmd->add_option("--dim", enc.dim, "Hypervector bit length (multiple of 64)")
      ->capture_default_str();
  cmd->add_option("--step-flips", step_flips_flag,
                  "Bit flips between adjacent position vectors (default: dim/2)");
  cmd->add_option("--levels", enc.levels, "Intensity quantization levels")
      ->capture_default_str();
  cmd->add_option("--seed", enc.seed, "Codebook RNG seed")->capture_default_str();
  cmd->add_option("--decoy-prefix", rc.decoy_prefix,
                  "Title/SEQ prefix marking decoy entries")
      ->capture_default_str();
  cmd->add_option("--threads", rc.threads, "Worker threads")->capture_default_str();
  cmd->add_option("--batch-size", rc.batch_size,
                  "Spectra per work unit (0: derive from available memory)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral library search with binary hypervectors"};
  app.set_version_flag("--version", homs::kVersion);
  app.require_subcommand(1);

  homs::RunConfig rc;
  std::uint32_t step_flips_flag = 0;  // 0: derive dim/2 after parsing

  auto* encode = app.add_subcommand(
      "encode", "Preprocess and encode a library MGF into a binary cache");
  encode->add_option("--library", rc.library_path, "Library MGF")
      ->required()
      ->check(CLI::ExistingFile);
  encode->add_option("--cache", rc.cache_path, "Cache file to write")->required();
  add_profile_options(encode, rc, step_flips_flag);

  std::string narrow_text = "20ppm";
  std::string wide_text = "500da";
  auto* search = app.add_subcommand(
      "search", "Cascade-search query spectra against an encoded library");
  search->add_option("--query", rc.query_path, "Query MGF")
      ->required()
      ->check(CLI::ExistingFile);
  search->add_option("--cache", rc.cache_path, "Encoded library cache")
      ->required()
      ->check(CLI::ExistingFile);
  search->add_option("--output", rc.output_path, "Result TSV to write")->required();
  search->add_option("--narrow", narrow_text, "Narrow precursor tolerance")
      ->capture_default_str();
  search->add_option("--wide", wide_text, "Wide precursor tolerance")
      ->capture_default_str();
  search->add_option("--fdr", rc.fdr_q, "FDR threshold for both stages")
      ->capture_default_str();
  add_profile_options(search, rc, step_flips_flag);

  homs::SynthConfig synth_cfg;
  std::filesystem::path synth_library, synth_query, synth_truth;
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic library/query benchmark with ground truth");
  synth->add_option("--library-out", synth_library, "Library MGF to write")->required();
  synth->add_option("--query-out", synth_query, "Query MGF to write")->required();
  synth->add_option("--truth-out", synth_truth, "Ground-truth TSV to write")->required();
  synth->add_option("--n-library", synth_cfg.n_library, "Target spectra")
      ->capture_default_str();
  synth->add_option("--n-query", synth_cfg.n_query, "Query spectra")
      ->capture_default_str();
  synth->add_option("--peaks", synth_cfg.peaks_per_spectrum, "Peaks per spectrum")
      ->capture_default_str();
  synth->add_option("--mz-min", synth_cfg.mz_min, "Fragment m/z lower bound")
      ->capture_default_str();
  synth->add_option("--mz-max", synth_cfg.mz_max, "Fragment m/z upper bound")
      ->capture_default_str();
  synth->add_option("--frac-modified", synth_cfg.fraction_modified,
                    "Fraction of queries carrying the precursor shift")
      ->capture_default_str();
  synth->add_option("--shift-da", synth_cfg.precursor_shift_da,
                    "Mass delta of the planted modification")
      ->capture_default_str();
  synth->add_option("--frac-peaks-shifted", synth_cfg.fraction_peaks_shifted,
                    "Fraction of fragment peaks moved by the delta")
      ->capture_default_str();
  synth->add_option("--intensity-noise", synth_cfg.intensity_noise,
                    "Multiplicative intensity noise amplitude")
      ->capture_default_str();
  synth->add_option("--decoy-ratio", synth_cfg.decoy_ratio, "Decoys per target")
      ->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "Generator seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  rc.profile.encoder.step_flips =
      step_flips_flag > 0 ? step_flips_flag : rc.profile.encoder.dim / 2;

  try {
    if (encode->parsed()) {
      const auto summary = homs::run_encode(rc);
      homs::print_encode_summary(std::cout, summary);
      std::cout << "cache_path: " << rc.cache_path.string() << '\n';
    } else if (search->parsed()) {
      rc.narrow = parse_tolerance(narrow_text, "--narrow");
      rc.wide = parse_tolerance(wide_text, "--wide");
      const auto result = homs::run_search(rc);
      homs::print_search_stats(std::cout, result.stats);
      std::cout << "output_path: " << rc.output_path.string() << '\n';
    } else if (synth->parsed()) {
      const auto bench = homs::generate_benchmark(synth_cfg);
      homs::write_mgf_file(synth_library, bench.library);
      homs::write_mgf_file(synth_query, bench.queries);
      std::ofstream truth(synth_truth);
      if (!truth) throw homs::IoError("cannot write " + synth_truth.string());
      homs::write_truth_tsv(truth, bench.truth);
      std::cout << "library_spectra: " << bench.library.size() << '\n';
      std::cout << "query_spectra: " << bench.queries.size() << '\n';
      std::cout << "library_out: " << synth_library.string() << '\n';
      std::cout << "query_out: " << synth_query.string() << '\n';
      std::cout << "truth_out: " << synth_truth.string() << '\n';
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const homs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
