#include <cmath>
#include <random>

#include "doctest.h"
#include "homs/codebook.hpp"
#include "homs/encoder.hpp"
#include "homs/errors.hpp"
#include "homs/rng.hpp"
#include "oracles.hpp"

using namespace homs;

namespace {

Hypervector random_hv(std::uint32_t dim, std::mt19937_64& rng) {
  Hypervector hv(dim);
  for (auto& w : hv.words()) w = rng();
  hv.mask_tail();
  return hv;
}

SpectrumVector random_sv(std::uint32_t dims, std::size_t peaks,
                         std::mt19937_64& rng) {
  SpectrumVector sv;
  sv.dims = dims;
  std::vector<std::uint32_t> bins;
  while (bins.size() < peaks) {
    const auto b = static_cast<std::uint32_t>(detail::bounded_uniform(rng, dims));
    if (std::find(bins.begin(), bins.end(), b) == bins.end()) bins.push_back(b);
  }
  std::sort(bins.begin(), bins.end());
  sv.bins = std::move(bins);
  sv.intensities.resize(peaks);
  for (auto& v : sv.intensities) v = detail::uniform_unit(rng);
  sv.intensities[detail::bounded_uniform(rng, peaks)] = 1.0;  // base peak
  return sv;
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("intensity quantization") {
  CHECK(quantize_intensity(1.0, 16) == 16);
  CHECK(quantize_intensity(0.0, 16) == 0);
  CHECK(quantize_intensity(0.26, 16) == 4);  // round(4.16)
  CHECK(quantize_intensity(0.5, 2) == 1);
  CHECK(quantize_intensity(0.97, 16) == 16);
  CHECK_THROWS_AS(quantize_intensity(-0.1, 16), InvariantError);
  CHECK_THROWS_AS(quantize_intensity(1.1, 16), InvariantError);
}

TEST_CASE("hamming similarity identities") {
  std::mt19937_64 rng(3);
  const auto x = random_hv(8192, rng);
  CHECK(hamming_similarity(x, x) == 8192);

  Hypervector inverted(8192);
  for (std::size_t w = 0; w < x.words().size(); ++w) {
    inverted.words()[w] = ~x.words()[w];
  }
  inverted.mask_tail();
  CHECK(hamming_similarity(x, inverted) == 0);

  const Hypervector shorter(4096);
  CHECK_THROWS_AS(hamming_similarity(x, shorter), InvariantError);
}

TEST_CASE("packed hamming equals the per-bit oracle") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_hv(8192, rng);
    const auto b = random_hv(8192, rng);
    CHECK(hamming_similarity(a, b) == oracle::bitwise_hamming(a, b));
  }
  // Dimensions that do not fill the last word exercise the tail mask.
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t dim = 65 + static_cast<std::uint32_t>(detail::bounded_uniform(rng, 120));
    const auto a = random_hv(dim, rng);
    const auto b = random_hv(dim, rng);
    CHECK(hamming_similarity(a, b) == oracle::bitwise_hamming(a, b));
  }
}

TEST_CASE("a single peak encodes to the XNOR of its codebook rows") {
  const Codebook cb = make_codebook(20, EncoderConfig{256, 128, 16, 8});

  SpectrumVector sv;
  sv.dims = 20;
  sv.bins = {7};
  sv.intensities = {1.0};
  const Hypervector got = encode(sv, cb);

  Hypervector expected(256);
  const auto& pos = cb.position[7];
  const auto& lvl = cb.level[16];
  for (std::size_t w = 0; w < expected.words().size(); ++w) {
    expected.words()[w] = ~(pos.words()[w] ^ lvl.words()[w]);
  }
  expected.mask_tail();
  CHECK(got == expected);
}

TEST_CASE("hand-built tiny codebook matches the accumulator oracle") {
  // dim 8, two levels, three positions, all bits written out by hand.
  Codebook cb;
  cb.config = EncoderConfig{8, 1, 2, 0};
  cb.spectrum_dims = 3;
  auto from_bits = [](std::initializer_list<int> bits) {
    Hypervector hv(8);
    std::uint32_t i = 0;
    for (int b : bits) {
      if (b) hv.set_bit(i);
      ++i;
    }
    return hv;
  };
  cb.position = {from_bits({1, 0, 1, 0, 1, 0, 1, 0}),
                 from_bits({1, 1, 0, 0, 1, 1, 0, 0}),
                 from_bits({0, 0, 0, 0, 1, 1, 1, 1})};
  cb.level = {from_bits({0, 0, 0, 0, 0, 0, 0, 0}),
              from_bits({1, 0, 0, 1, 0, 1, 1, 0}),
              from_bits({1, 1, 1, 1, 1, 1, 1, 1})};

  SpectrumVector sv;
  sv.dims = 3;
  sv.bins = {0, 2};
  sv.intensities = {1.0, 0.4};  // levels 2 and 1
  CHECK(encode(sv, cb) == oracle::encode_unpacked(sv, cb));
}

TEST_CASE("encode equals the accumulator oracle on random spectra") {
  const Codebook cb = make_codebook(40, EncoderConfig{128, 16, 16, 12});
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sv = random_sv(40, 1 + detail::bounded_uniform(rng, 12), rng);
    CHECK(encode(sv, cb) == oracle::encode_unpacked(sv, cb));
  }
}

TEST_CASE("encode is deterministic") {
  const Codebook cb = make_codebook(30, EncoderConfig{256, 64, 16, 1});
  std::mt19937_64 rng(17);
  const auto sv = random_sv(30, 9, rng);
  CHECK(encode(sv, cb) == encode(sv, cb));
}

TEST_CASE("encode rejects mismatched dimensionalities") {
  const Codebook cb = make_codebook(30, EncoderConfig{256, 64, 16, 1});
  SpectrumVector sv;
  sv.dims = 31;
  sv.bins = {0};
  sv.intensities = {1.0};
  CHECK_THROWS_AS(encode(sv, cb), InvariantError);

  sv.dims = 30;
  sv.bins.clear();
  sv.intensities.clear();
  CHECK_THROWS_AS(encode(sv, cb), InvariantError);
}

TEST_CASE("one-bin peak shifts barely move the encoding") {
  // The locality claim made testable: a spectrum whose single peak moved to
  // an adjacent bin stays far more similar than an unrelated spectrum.
  const EncoderConfig c{8192, 4096, 16, 19};
  const std::uint32_t dims = 2000;
  const Codebook cb = make_codebook(dims, c);
  std::mt19937_64 rng(23);

  double shifted_sum = 0.0;
  std::vector<double> random_sims;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    auto sv = random_sv(dims, 30, rng);

    auto shifted = sv;
    for (int attempt = 0;; ++attempt) {
      REQUIRE(attempt < 64);
      const auto k = detail::bounded_uniform(rng, shifted.bins.size());
      const std::uint32_t bin = shifted.bins[k];
      const std::uint32_t moved =
          (detail::bounded_uniform(rng, 2) == 0 && bin > 0) ? bin - 1
          : (bin + 1 < dims ? bin + 1 : bin - 1);
      if (std::find(shifted.bins.begin(), shifted.bins.end(), moved) !=
          shifted.bins.end()) {
        continue;
      }
      shifted.bins[k] = moved;
      break;
    }
    std::vector<std::size_t> order(shifted.bins.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return shifted.bins[a] < shifted.bins[b];
    });
    SpectrumVector sorted;
    sorted.dims = shifted.dims;
    for (auto i : order) {
      sorted.bins.push_back(shifted.bins[i]);
      sorted.intensities.push_back(shifted.intensities[i]);
    }

    const auto unrelated = random_sv(dims, 30, rng);
    const auto base = encode(sv, cb);
    shifted_sum += normalized_similarity(base, encode(sorted, cb));
    random_sims.push_back(normalized_similarity(base, encode(unrelated, cb)));
  }

  const double shifted_mean = shifted_sum / trials;
  double rand_mean = 0.0;
  for (double v : random_sims) rand_mean += v;
  rand_mean /= trials;
  double var = 0.0;
  for (double v : random_sims) var += (v - rand_mean) * (v - rand_mean);
  const double rand_sd = std::sqrt(var / trials);

  CHECK(shifted_mean > rand_mean + 3.0 * rand_sd);
}

}  // TEST_SUITE
