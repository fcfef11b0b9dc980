#include "homs/codebook.hpp"

#include <numeric>
#include <random>

#include "homs/errors.hpp"
#include "homs/rng.hpp"

namespace homs {

namespace {

// Tags for the named RNG substreams ("position" / "levelhvs" in ASCII).
constexpr std::uint64_t kPositionStream = 0x706f736974696f6eULL;
constexpr std::uint64_t kLevelStream = 0x6c6576656c687673ULL;

Hypervector random_hv(std::uint32_t dim, std::mt19937_64& rng) {
  Hypervector hv(dim);
  for (auto& w : hv.words()) w = rng();
  hv.mask_tail();
  return hv;
}

}  // namespace

void EncoderConfig::validate() const {
  if (dim < 64 || dim % 64 != 0) {
    throw ConfigError("encoder dim must be a multiple of 64 and at least 64");
  }
  if (step_flips < 1) {
    throw ConfigError("encoder step_flips must be at least 1");
  }
  if (levels < 2) {
    throw ConfigError("encoder levels must be at least 2");
  }
}

std::vector<Hypervector> gen_position_hvs(std::uint32_t spectrum_dims,
                                          const EncoderConfig& config) {
  std::mt19937_64 rng(detail::stream_seed(config.seed, kPositionStream));

  std::vector<Hypervector> out;
  out.reserve(spectrum_dims);
  Hypervector cur = random_hv(config.dim, rng);
  out.push_back(cur);
  for (std::uint32_t i = 1; i < spectrum_dims; ++i) {
    for (std::uint32_t k = 0; k < config.step_flips; ++k) {
      cur.flip_bit(static_cast<std::uint32_t>(detail::bounded_uniform(rng, config.dim)));
    }
    out.push_back(cur);
  }
  return out;
}

std::vector<Hypervector> gen_level_hvs(const EncoderConfig& config) {
  std::mt19937_64 rng(detail::stream_seed(config.seed, kLevelStream));

  const std::uint32_t dim = config.dim;
  const std::uint32_t flips_total = dim / 2;

  Hypervector base = random_hv(dim, rng);

  // One partial Fisher-Yates shuffle fixes which positions flip and in what
  // order; level q flips the first floor(flips_total * q / levels) of them.
  std::vector<std::uint32_t> order(dim);
  std::iota(order.begin(), order.end(), 0u);
  for (std::uint32_t i = 0; i < flips_total; ++i) {
    const auto j = i + static_cast<std::uint32_t>(detail::bounded_uniform(rng, dim - i));
    std::swap(order[i], order[j]);
  }

  std::vector<Hypervector> out;
  out.reserve(config.levels + 1);
  Hypervector cur = base;
  std::uint64_t flipped = 0;
  for (std::uint32_t q = 0; q <= config.levels; ++q) {
    const std::uint64_t cut =
        static_cast<std::uint64_t>(flips_total) * q / config.levels;
    for (; flipped < cut; ++flipped) {
      cur.flip_bit(order[flipped]);
    }
    out.push_back(cur);
  }
  return out;
}

Codebook make_codebook(std::uint32_t spectrum_dims, const EncoderConfig& config) {
  Codebook cb;
  cb.config = config;
  cb.spectrum_dims = spectrum_dims;
  cb.position = gen_position_hvs(spectrum_dims, config);
  cb.level = gen_level_hvs(config);
  return cb;
}

}  // namespace homs
