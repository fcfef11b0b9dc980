#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "homs/codebook.hpp"
#include "homs/hypervector.hpp"
#include "homs/preprocess.hpp"
#include "homs/spectrum.hpp"

namespace homs {

/// Everything that determines the encoded bits of a spectrum. The cache
/// stores this block verbatim and refuses to load unless it matches the
/// requested run configuration bit for bit.
struct EncodingProfile {
  PreprocessConfig preprocess;
  EncoderConfig encoder;

  void validate() const {
    preprocess.validate();
    encoder.validate();
  }

  friend bool operator==(const EncodingProfile&, const EncodingProfile&) = default;
};

/// A spectrum after preprocessing and encoding: search-ready metadata plus
/// the packed hypervector.
struct EncodedSpectrum {
  SpectrumMeta meta;
  Hypervector hv;

  friend bool operator==(const EncodedSpectrum&, const EncodedSpectrum&) = default;
};

inline constexpr char kCacheMagic[4] = {'H', 'O', 'M', 'S'};
inline constexpr std::uint32_t kCacheVersion = 1;

/// Serialized form of the profile, used both inside the cache file and for
/// the bit-for-bit staleness comparison.
std::string serialize_profile(const EncodingProfile& profile);

/// Binary library cache, little-endian throughout:
///   magic "HOMS" | u32 version | profile block | u64 count
///   | per-entry metadata (id, precursor m/z, charge, decoy flag, peptide)
///   | packed hypervector block (count * ceil(D/64) * 8 bytes)
///   | u64 FNV-1a checksum of the hypervector block.
/// Output is deterministic: identical input produces identical bytes.
/// Throws InvariantError when entries disagree with profile on
/// dimensionality.
void write_cache(std::ostream& out, std::span<const EncodedSpectrum> entries,
                 const EncodingProfile& profile);

/// Loads a cache written by write_cache. Throws CacheFormatError on bad
/// magic/version, StaleCacheError when the stored profile differs from
/// expected (the library must be re-encoded), CacheCorruptError on a
/// truncated stream or checksum mismatch.
std::vector<EncodedSpectrum> read_cache(std::istream& in,
                                        const EncodingProfile& expected);

void write_cache_file(const std::filesystem::path& path,
                      std::span<const EncodedSpectrum> entries,
                      const EncodingProfile& profile);

std::vector<EncodedSpectrum> read_cache_file(const std::filesystem::path& path,
                                             const EncodingProfile& expected);

}  // namespace homs
