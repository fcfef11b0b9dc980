#include <map>
#include <sstream>

#include "doctest.h"
#include "homs/errors.hpp"
#include "homs/mgf.hpp"
#include "homs/synth.hpp"

using namespace homs;

TEST_SUITE("synth") {

TEST_CASE("same seed, same output") {
  SynthConfig cfg;
  cfg.n_library = 40;
  cfg.n_query = 25;
  cfg.peaks_per_spectrum = 20;
  cfg.fraction_modified = 0.5;
  cfg.seed = 123;

  const auto a = generate_benchmark(cfg);
  const auto b = generate_benchmark(cfg);

  std::ostringstream lib_a, lib_b, q_a, q_b;
  write_mgf(lib_a, a.library);
  write_mgf(lib_b, b.library);
  write_mgf(q_a, a.queries);
  write_mgf(q_b, b.queries);
  CHECK(lib_a.str() == lib_b.str());
  CHECK(q_a.str() == q_b.str());

  cfg.seed = 124;
  const auto c = generate_benchmark(cfg);
  std::ostringstream lib_c;
  write_mgf(lib_c, c.library);
  CHECK(lib_a.str() != lib_c.str());
}

TEST_CASE("unmodified noiseless queries are exact library copies") {
  SynthConfig cfg;
  cfg.n_library = 30;
  cfg.n_query = 30;
  cfg.peaks_per_spectrum = 15;
  cfg.fraction_modified = 0.0;
  cfg.intensity_noise = 0.0;
  cfg.seed = 7;

  const auto out = generate_benchmark(cfg);
  std::map<std::string, const RawSpectrum*> by_id;
  for (const auto& s : out.library) by_id[s.meta.id] = &s;

  REQUIRE(out.truth.size() == out.queries.size());
  for (std::size_t i = 0; i < out.queries.size(); ++i) {
    CHECK_FALSE(out.truth[i].modified);
    const RawSpectrum* src = by_id.at(out.truth[i].source_id);
    CHECK(out.queries[i].peaks == src->peaks);
    CHECK(out.queries[i].meta.precursor_mz == src->meta.precursor_mz);
    CHECK(out.queries[i].meta.charge == src->meta.charge);
  }
}

TEST_CASE("the planted shift moves precursor by delta over charge") {
  SynthConfig cfg;
  cfg.n_library = 20;
  cfg.n_query = 40;
  cfg.peaks_per_spectrum = 12;
  cfg.fraction_modified = 1.0;
  cfg.precursor_shift_da = 79.97;
  cfg.intensity_noise = 0.0;
  cfg.seed = 9;

  const auto out = generate_benchmark(cfg);
  std::map<std::string, const RawSpectrum*> by_id;
  for (const auto& s : out.library) by_id[s.meta.id] = &s;

  for (std::size_t i = 0; i < out.queries.size(); ++i) {
    REQUIRE(out.truth[i].modified);
    const RawSpectrum* src = by_id.at(out.truth[i].source_id);
    const double expected =
        79.97 / static_cast<double>(src->meta.charge);
    CHECK(out.queries[i].meta.precursor_mz - src->meta.precursor_mz ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("decoys mirror their source precursor and are flagged") {
  SynthConfig cfg;
  cfg.n_library = 25;
  cfg.n_query = 0;
  cfg.peaks_per_spectrum = 10;
  cfg.decoy_ratio = 1.0;
  cfg.seed = 11;

  const auto out = generate_benchmark(cfg);
  REQUIRE(out.library.size() == 50);
  for (std::size_t i = 0; i < 25; ++i) {
    const auto& target = out.library[i];
    const auto& decoy = out.library[25 + i];
    CHECK_FALSE(target.meta.is_decoy);
    CHECK(decoy.meta.is_decoy);
    CHECK(decoy.meta.id.starts_with("DECOY_"));
    CHECK(decoy.meta.precursor_mz == target.meta.precursor_mz);
    CHECK(decoy.meta.charge == target.meta.charge);
    CHECK(decoy.peaks != target.peaks);
  }

  cfg.decoy_ratio = 0.4;
  CHECK(generate_benchmark(cfg).library.size() == 35);

  cfg.decoy_ratio = 0.0;
  CHECK(generate_benchmark(cfg).library.size() == 25);
}

TEST_CASE("infeasible parameters are rejected") {
  SynthConfig cfg;
  cfg.peaks_per_spectrum = 200;
  cfg.mz_min = 100.0;
  cfg.mz_max = 100.5;  // only ~50 grid positions
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SynthConfig{};
  cfg.n_library = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SynthConfig{};
  cfg.fraction_modified = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = SynthConfig{};
  cfg.intensity_noise = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("truth table round-trips through TSV") {
  SynthConfig cfg;
  cfg.n_library = 10;
  cfg.n_query = 15;
  cfg.peaks_per_spectrum = 8;
  cfg.fraction_modified = 0.4;
  cfg.seed = 13;

  const auto out = generate_benchmark(cfg);
  std::ostringstream text;
  write_truth_tsv(text, out.truth);
  std::istringstream in(text.str());
  const auto loaded = read_truth_tsv(in);

  REQUIRE(loaded.size() == out.truth.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].query_id == out.truth[i].query_id);
    CHECK(loaded[i].source_id == out.truth[i].source_id);
    CHECK(loaded[i].modified == out.truth[i].modified);
  }
}

}  // TEST_SUITE
