#include <cmath>

#include "doctest.h"
#include "homs/codebook.hpp"
#include "homs/errors.hpp"

using namespace homs;

namespace {

EncoderConfig cfg(std::uint32_t dim, std::uint32_t flips, std::uint32_t levels,
                  std::uint64_t seed = 1) {
  EncoderConfig c;
  c.dim = dim;
  c.step_flips = flips;
  c.levels = levels;
  c.seed = seed;
  return c;
}

// Mean similarity over `pairs` independent gap-sized jumps. Pairs at stride
// `gap` share no flip steps, so their similarities are independent draws.
double mean_gap_similarity(const EncoderConfig& c, std::uint32_t gap,
                           std::uint32_t pairs) {
  const std::uint32_t chain = gap * pairs + 1;
  const auto hvs = gen_position_hvs(chain, c);
  double sum = 0.0;
  for (std::uint32_t i = 0; i + gap < chain; i += gap) {
    sum += normalized_similarity(hvs[i], hvs[i + gap]);
  }
  return sum / pairs;
}

}  // namespace

TEST_SUITE("codebook") {

TEST_CASE("config validation") {
  CHECK_NOTHROW(cfg(64, 1, 2).validate());
  CHECK_THROWS_AS(cfg(0, 1, 2).validate(), ConfigError);
  CHECK_THROWS_AS(cfg(100, 1, 2).validate(), ConfigError);  // not a multiple of 64
  CHECK_THROWS_AS(cfg(64, 0, 2).validate(), ConfigError);
  CHECK_THROWS_AS(cfg(64, 1, 1).validate(), ConfigError);
}

TEST_CASE("codebooks are a deterministic function of (config, dims)") {
  const auto c = cfg(256, 128, 16, 99);
  const Codebook a = make_codebook(40, c);
  const Codebook b = make_codebook(40, c);
  CHECK(a.position == b.position);
  CHECK(a.level == b.level);

  // Different seed, different bits.
  const Codebook other = make_codebook(40, cfg(256, 128, 16, 100));
  CHECK(a.position != other.position);
}

TEST_CASE("position and level streams are independent of generation order") {
  const auto c = cfg(256, 128, 16, 5);
  const auto positions_alone = gen_position_hvs(16, c);
  const auto levels_alone = gen_level_hvs(c);
  const Codebook both = make_codebook(16, c);
  CHECK(both.position == positions_alone);
  CHECK(both.level == levels_alone);
}

TEST_CASE("zero flips per step keeps every position identical") {
  // EncoderConfig::validate rejects step_flips == 0 for runs, but the
  // generator itself is total over it.
  const auto hvs = gen_position_hvs(50, cfg(256, 0, 16));
  for (const auto& hv : hvs) {
    CHECK(normalized_similarity(hvs.front(), hv) == 1.0);
  }
}

TEST_CASE("level similarity law is exact") {
  const auto c = cfg(8192, 4096, 16);
  const auto levels = gen_level_hvs(c);
  REQUIRE(levels.size() == 17);

  for (std::uint32_t a = 0; a <= 16; ++a) {
    CHECK(normalized_similarity(levels[a], levels[a]) == 1.0);
    for (std::uint32_t b = 0; b <= 16; ++b) {
      const double expected = 1.0 - std::abs(static_cast<double>(a) - b) / 32.0;
      CHECK(normalized_similarity(levels[a], levels[b]) == expected);
    }
  }
  CHECK(normalized_similarity(levels[0], levels[16]) == 0.5);
  CHECK(normalized_similarity(levels[4], levels[8]) == 0.875);
}

TEST_CASE("level flip schedule moves floor(dim/2 * q / levels) positions") {
  const auto c = cfg(192, 1, 5);  // levels does not divide dim/2
  const auto levels = gen_level_hvs(c);
  for (std::uint32_t q = 0; q <= 5; ++q) {
    const std::uint32_t flips = 192 / 2 * q / 5;
    CHECK(hamming_similarity(levels[0], levels[q]) == 192 - flips);
  }
}

TEST_CASE("adjacent position similarity matches the flip model") {
  // E[sim] = 0.5 + 0.5 * (1 - 2/dim)^flips ~= 0.684 at dim 8192, flips dim/2.
  const auto c = cfg(8192, 4096, 16, 21);
  const auto hvs = gen_position_hvs(201, c);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < hvs.size(); ++i) {
    sum += normalized_similarity(hvs[i], hvs[i + 1]);
  }
  const double mean = sum / 200.0;
  CHECK(mean > 0.664);
  CHECK(mean < 0.704);
}

TEST_CASE("position similarity decays monotonically toward 0.5") {
  const auto c = cfg(2048, 1024, 16, 33);
  double prev = 1.0;
  for (std::uint32_t gap : {1u, 2u, 4u, 8u}) {
    const double mean = mean_gap_similarity(c, gap, 300);
    CHECK(mean <= prev + 3e-3);  // Monte Carlo resolution
    const double expected = 0.5 + 0.5 * std::pow(1.0 - 2.0 / 2048.0, 1024.0 * gap);
    CHECK(std::abs(mean - expected) < 0.01);
    prev = mean;
  }
  // Distant positions are near-orthogonal.
  CHECK(std::abs(mean_gap_similarity(c, 100, 40) - 0.5) < 0.02);
}

}  // TEST_SUITE
