#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "homs/errors.hpp"

namespace homs {

/// A binary vector of `size_bits()` components packed into 64-bit words,
/// bit d stored at word d/64, position d%64 (LSB first). Bits at positions
/// >= size_bits() in the last word are always zero; every mutator below
/// preserves that.
class Hypervector {
 public:
  static constexpr std::uint32_t kWordBits = 64;

  Hypervector() = default;

  explicit Hypervector(std::uint32_t bits)
      : bits_(bits), words_(words_for(bits), 0) {}

  static std::size_t words_for(std::uint32_t bits) {
    return (static_cast<std::size_t>(bits) + kWordBits - 1) / kWordBits;
  }

  std::uint32_t size_bits() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  bool bit(std::uint32_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  void set_bit(std::uint32_t i) { words_[i / kWordBits] |= word_mask(i); }

  void flip_bit(std::uint32_t i) { words_[i / kWordBits] ^= word_mask(i); }

  /// Clears any bits at positions >= size_bits(). Call after writing raw
  /// words in bulk.
  void mask_tail() {
    if (bits_ % kWordBits != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (bits_ % kWordBits)) - 1;
    }
  }

  std::uint32_t popcount() const {
    std::uint32_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::uint32_t>(std::popcount(w));
    return n;
  }

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  static std::uint64_t word_mask(std::uint32_t i) {
    return std::uint64_t{1} << (i % kWordBits);
  }

  std::uint32_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Number of positions at which the two vectors agree, in [0, D].
/// Word-wise XOR + popcount over the packed representation.
inline std::uint32_t hamming_similarity(const Hypervector& a, const Hypervector& b) {
  if (a.size_bits() != b.size_bits()) {
    throw InvariantError("hamming_similarity: dimensionality mismatch");
  }
  std::uint32_t diff = 0;
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    diff += static_cast<std::uint32_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return a.size_bits() - diff;
}

/// hamming_similarity scaled to [0, 1].
inline double normalized_similarity(const Hypervector& a, const Hypervector& b) {
  return static_cast<double>(hamming_similarity(a, b)) /
         static_cast<double>(a.size_bits());
}

}  // namespace homs
