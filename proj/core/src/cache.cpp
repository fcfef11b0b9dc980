#include "homs/cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "homs/errors.hpp"

namespace homs {

namespace {

// FNV-1a, 64 bit. Guards the hypervector block against silent corruption,
// which would skew every downstream score.
struct Fnv64 {
  std::uint64_t state = 1469598103934665603ULL;

  void update(const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      state ^= static_cast<unsigned char>(data[i]);
      state *= 1099511628211ULL;
    }
  }

  std::uint64_t digest() const noexcept { return state; }
};

void put_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void put_u8(std::ostream& out, std::uint8_t v) { put_bytes(out, &v, 1); }

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  put_bytes(out, b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  put_bytes(out, b, 8);
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_str(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  put_bytes(out, s.data(), s.size());
}

void get_bytes(std::istream& in, void* data, std::size_t n) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw CacheCorruptError("cache stream truncated");
  }
}

std::uint8_t get_u8(std::istream& in) {
  std::uint8_t v;
  get_bytes(in, &v, 1);
  return v;
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  get_bytes(in, b, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  get_bytes(in, b, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

std::string get_str(std::istream& in) {
  const std::uint32_t n = get_u32(in);
  constexpr std::uint32_t kMaxString = 1u << 20;
  if (n > kMaxString) throw CacheCorruptError("cache string length out of range");
  std::string s(n, '\0');
  if (n > 0) get_bytes(in, s.data(), n);
  return s;
}

void put_profile(std::ostream& out, const EncodingProfile& p) {
  put_f64(out, p.preprocess.min_mz);
  put_f64(out, p.preprocess.max_mz);
  put_f64(out, p.preprocess.bin_size);
  put_u32(out, p.preprocess.max_peaks);
  put_u32(out, p.preprocess.min_peaks);
  put_f64(out, p.preprocess.intensity_floor);
  put_u8(out, static_cast<std::uint8_t>(p.preprocess.scaling));
  put_u32(out, p.encoder.dim);
  put_u32(out, p.encoder.step_flips);
  put_u32(out, p.encoder.levels);
  put_u64(out, p.encoder.seed);
}

constexpr std::size_t kProfileBytes = 8 * 4 + 4 * 2 + 1 + 4 * 3 + 8;

}  // namespace

std::string serialize_profile(const EncodingProfile& profile) {
  std::ostringstream os(std::ios::binary);
  put_profile(os, profile);
  return std::move(os).str();
}

void write_cache(std::ostream& out, std::span<const EncodedSpectrum> entries,
                 const EncodingProfile& profile) {
  const std::uint32_t dim = profile.encoder.dim;
  for (const EncodedSpectrum& e : entries) {
    if (e.hv.size_bits() != dim) {
      throw InvariantError("write_cache: entry dimensionality differs from profile");
    }
  }

  put_bytes(out, kCacheMagic, sizeof kCacheMagic);
  put_u32(out, kCacheVersion);
  put_profile(out, profile);
  put_u64(out, entries.size());

  for (const EncodedSpectrum& e : entries) {
    put_str(out, e.meta.id);
    put_f64(out, e.meta.precursor_mz);
    put_u8(out, e.meta.charge);
    put_u8(out, e.meta.is_decoy ? 1 : 0);
    put_str(out, e.meta.peptide);
  }

  Fnv64 checksum;
  char word[8];
  for (const EncodedSpectrum& e : entries) {
    for (std::uint64_t w : e.hv.words()) {
      for (int i = 0; i < 8; ++i) word[i] = static_cast<char>((w >> (8 * i)) & 0xff);
      checksum.update(word, 8);
      put_bytes(out, word, 8);
    }
  }
  put_u64(out, checksum.digest());

  if (!out) throw IoError("cache write failed");
}

std::vector<EncodedSpectrum> read_cache(std::istream& in,
                                        const EncodingProfile& expected) {
  char magic[4];
  get_bytes(in, magic, 4);
  if (std::memcmp(magic, kCacheMagic, 4) != 0) {
    throw CacheFormatError("not a spectral library cache (bad magic)");
  }
  const std::uint32_t version = get_u32(in);
  if (version != kCacheVersion) {
    throw CacheFormatError("unsupported cache version " + std::to_string(version));
  }

  std::string stored(kProfileBytes, '\0');
  get_bytes(in, stored.data(), stored.size());
  if (stored != serialize_profile(expected)) {
    throw StaleCacheError(
        "cache was encoded with different parameters than this run requests; "
        "re-encode the library");
  }

  const std::uint64_t count = get_u64(in);
  const std::uint32_t dim = expected.encoder.dim;
  const std::size_t words_per = Hypervector::words_for(dim);

  std::vector<EncodedSpectrum> entries(count);
  for (auto& e : entries) {
    e.meta.id = get_str(in);
    e.meta.precursor_mz = get_f64(in);
    e.meta.charge = get_u8(in);
    e.meta.is_decoy = get_u8(in) != 0;
    e.meta.peptide = get_str(in);
  }

  Fnv64 checksum;
  char word[8];
  for (auto& e : entries) {
    e.hv = Hypervector(dim);
    auto words = e.hv.words();
    for (std::size_t w = 0; w < words_per; ++w) {
      get_bytes(in, word, 8);
      checksum.update(word, 8);
      std::uint64_t v = 0;
      for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(word[i])) << (8 * i);
      }
      words[w] = v;
    }
  }

  if (get_u64(in) != checksum.digest()) {
    throw CacheCorruptError("cache hypervector block failed its checksum");
  }
  return entries;
}

void write_cache_file(const std::filesystem::path& path,
                      std::span<const EncodedSpectrum> entries,
                      const EncodingProfile& profile) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_cache(out, entries, profile);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<EncodedSpectrum> read_cache_file(const std::filesystem::path& path,
                                             const EncodingProfile& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_cache(in, expected);
}

}  // namespace homs
