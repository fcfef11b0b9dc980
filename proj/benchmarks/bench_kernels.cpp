// Microbenchmarks for the hot paths: the packed Hamming kernel against a
// per-bit baseline, spectrum encoding, codebook generation and indexed
// search over a synthetic library.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "homs/codebook.hpp"
#include "homs/encoder.hpp"
#include "homs/pipeline.hpp"
#include "homs/rng.hpp"
#include "homs/search.hpp"
#include "homs/synth.hpp"

namespace {

using namespace homs;

Hypervector random_hv(std::uint32_t dim, std::mt19937_64& rng) {
  Hypervector hv(dim);
  for (auto& w : hv.words()) w = rng();
  hv.mask_tail();
  return hv;
}

std::vector<Hypervector> random_hvs(std::size_t n, std::uint32_t dim) {
  std::mt19937_64 rng(12345);
  std::vector<Hypervector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_hv(dim, rng));
  return out;
}

void BM_HammingPacked(benchmark::State& state) {
  const auto dim = static_cast<std::uint32_t>(state.range(0));
  const auto refs = random_hvs(256, dim);
  std::mt19937_64 rng(1);
  const auto query = random_hv(dim, rng);
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (const auto& r : refs) acc += hamming_similarity(query, r);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * refs.size());
}
BENCHMARK(BM_HammingPacked)->Arg(8192)->Arg(16384);

void BM_HammingBitwise(benchmark::State& state) {
  const auto dim = static_cast<std::uint32_t>(state.range(0));
  const auto refs = random_hvs(256, dim);
  std::mt19937_64 rng(1);
  const auto query = random_hv(dim, rng);
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (const auto& r : refs) {
      std::uint32_t same = 0;
      for (std::uint32_t d = 0; d < dim; ++d) {
        same += query.bit(d) == r.bit(d) ? 1 : 0;
      }
      acc += same;
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * refs.size());
}
BENCHMARK(BM_HammingBitwise)->Arg(8192);

void BM_Encode(benchmark::State& state) {
  PreprocessConfig pre;  // defaults: 27980 bins
  EncoderConfig enc;
  const std::uint32_t dims = dimension(pre);
  const Codebook cb = make_codebook(dims, enc);

  std::mt19937_64 rng(7);
  SpectrumVector sv;
  sv.dims = dims;
  for (int i = 0; i < 50; ++i) {
    sv.bins.push_back(static_cast<std::uint32_t>(detail::bounded_uniform(rng, dims)));
    sv.intensities.push_back(detail::uniform_unit(rng));
  }
  std::sort(sv.bins.begin(), sv.bins.end());
  sv.bins.erase(std::unique(sv.bins.begin(), sv.bins.end()), sv.bins.end());
  sv.intensities.resize(sv.bins.size());
  sv.intensities[0] = 1.0;

  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(sv, cb));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Encode);

void BM_CodebookGeneration(benchmark::State& state) {
  EncoderConfig enc;
  const auto dims = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_position_hvs(dims, enc));
  }
}
BENCHMARK(BM_CodebookGeneration)->Arg(1000)->Arg(27980)->Unit(benchmark::kMillisecond);

void BM_WideSearch(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_library = static_cast<std::size_t>(state.range(0));
  cfg.n_query = 64;
  cfg.peaks_per_spectrum = 50;
  cfg.fraction_modified = 0.5;
  const auto bench = generate_benchmark(cfg);

  PreprocessConfig pre;
  EncoderConfig enc;
  const Codebook cb = make_codebook(dimension(pre), enc);
  auto lib = encode_spectra(bench.library, cb, pre, 1, 1 << 20);
  auto queries = encode_spectra(bench.queries, cb, pre, 1, 1 << 20);
  const LibraryIndex index = build_index(lib.encoded);
  const Tolerance wide{Tolerance::Kind::dalton, 500.0};

  for (auto _ : state) {
    benchmark::DoNotOptimize(search_batch(queries.encoded, index, wide));
  }
  state.SetItemsProcessed(state.iterations() * queries.encoded.size());
}
BENCHMARK(BM_WideSearch)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
