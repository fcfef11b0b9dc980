#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "homs/fdr.hpp"
#include "homs/rng.hpp"
#include "oracles.hpp"

using namespace homs;

namespace {

Ssm ssm(std::string id, double score, bool decoy) {
  Ssm s;
  s.query_id = id;
  s.library_id = "lib_" + id;
  s.score = score;
  s.is_decoy = decoy;
  return s;
}

std::vector<Ssm> random_ssms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ssm> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Coarse scores force plenty of ties.
    const double score = static_cast<double>(detail::bounded_uniform(rng, 20)) / 20.0;
    out.push_back(ssm("q" + std::to_string(i), score,
                      detail::bounded_uniform(rng, 2) == 1));
  }
  return out;
}

std::multiset<std::string> accepted_ids(const std::vector<Ssm>& accepted) {
  std::multiset<std::string> ids;
  for (const auto& s : accepted) ids.insert(s.query_id);
  return ids;
}

}  // namespace

TEST_SUITE("fdr") {

TEST_CASE("the four-match worked example") {
  std::vector<Ssm> input = {ssm("a", 0.9, false), ssm("b", 0.8, false),
                            ssm("c", 0.7, true), ssm("d", 0.6, false)};
  const FdrCurve curve = compute_fdr_curve(input);
  REQUIRE(curve.size() == 4);

  CHECK(curve.fdr[0] == 0.0);        // 0 decoys / 1 target
  CHECK(curve.fdr[1] == 0.0);        // 0 / 2
  CHECK(curve.fdr[2] == 1.0 / 2.0);  // 1 / 2
  CHECK(curve.fdr[3] == 1.0 / 3.0);  // 1 / 3

  CHECK(curve.q_value[0] == 0.0);
  CHECK(curve.q_value[1] == 0.0);
  CHECK(curve.q_value[2] == 1.0 / 3.0);
  CHECK(curve.q_value[3] == 1.0 / 3.0);

  CHECK(curve.targets[3] == 3);
  CHECK(curve.decoys[3] == 1);

  const auto at_1pct = filter_at_fdr(curve, 0.01);
  REQUIRE(at_1pct.size() == 2);
  CHECK(at_1pct[0].query_id == "a");
  CHECK(at_1pct[1].query_id == "b");

  CHECK(filter_at_fdr(curve, 1.0).size() == 3);  // every target
}

TEST_CASE("all targets get q-value zero") {
  const auto curve = compute_fdr_curve(
      {ssm("a", 0.5, false), ssm("b", 0.4, false), ssm("c", 0.3, false)});
  for (double q : curve.q_value) CHECK(q == 0.0);
  CHECK(filter_at_fdr(curve, 0.01).size() == 3);
}

TEST_CASE("all decoys pass nothing") {
  const auto curve = compute_fdr_curve(
      {ssm("a", 0.5, true), ssm("b", 0.4, true), ssm("c", 0.3, true)});
  CHECK(curve.fdr[0] == 1.0);  // 1 decoy / max(1, 0 targets)
  CHECK(curve.fdr[2] == 3.0);
  CHECK(filter_at_fdr(curve, 0.99).empty());
}

TEST_CASE("an empty list yields an empty curve") {
  const auto curve = compute_fdr_curve({});
  CHECK(curve.empty());
  CHECK(filter_at_fdr(curve, 0.5).empty());
}

TEST_CASE("tied decoys sort before tied targets") {
  const auto curve =
      compute_fdr_curve({ssm("t", 0.5, false), ssm("d", 0.5, true)});
  CHECK(curve.ssms[0].is_decoy);
  CHECK(curve.q_value[1] == 1.0);
  CHECK(filter_at_fdr(curve, 0.5).empty());
}

TEST_CASE("q-values match the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto input = random_ssms(60, seed);
    const auto curve = compute_fdr_curve(input);
    const auto expected = oracle::brute_q_values_sorted(input);
    REQUIRE(curve.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(curve.q_value[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("acceptance is monotone in the threshold") {
  for (std::uint64_t seed = 20; seed < 40; ++seed) {
    const auto curve = compute_fdr_curve(random_ssms(80, seed));
    std::mt19937_64 rng(seed);
    double q1 = detail::uniform_unit(rng);
    double q2 = detail::uniform_unit(rng);
    if (q1 > q2) std::swap(q1, q2);
    const auto tight = accepted_ids(filter_at_fdr(curve, q1));
    const auto loose = accepted_ids(filter_at_fdr(curve, q2));
    CHECK(std::includes(loose.begin(), loose.end(), tight.begin(), tight.end()));
  }
}

TEST_CASE("any strictly increasing score transform leaves acceptance unchanged") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    auto input = random_ssms(70, seed);
    const auto before = accepted_ids(filter_at_fdr(compute_fdr_curve(input), 0.25));

    auto transformed = input;
    for (auto& s : transformed) s.score = std::exp(3.0 * s.score) + 1.0;
    const auto after =
        accepted_ids(filter_at_fdr(compute_fdr_curve(transformed), 0.25));
    CHECK(before == after);
  }
}

TEST_CASE("no decoy ever appears in the filtered output") {
  for (std::uint64_t seed = 70; seed < 80; ++seed) {
    const auto curve = compute_fdr_curve(random_ssms(50, seed));
    for (const auto& s : filter_at_fdr(curve, 0.9)) CHECK_FALSE(s.is_decoy);
  }
}

}  // TEST_SUITE
