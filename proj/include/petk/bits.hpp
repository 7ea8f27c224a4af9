#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace petk {

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// floor(log2 x) for x > 0.
constexpr int ilog2(std::uint64_t x) { return static_cast<int>(std::bit_width(x)) - 1; }

/// Fixed-width little-endian bit vector (bit 0 is the LSB).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}
  static BitVector from_u64(std::size_t width, std::uint64_t value);
  /// Parses a hex string (optional 0x prefix); fails on overflow of `width`.
  static BitVector from_hex(std::size_t width, std::string_view hex);

  std::size_t width() const { return width_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) {
      words_[i / 64] |= std::uint64_t{1} << (i % 64);
    } else {
      words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
  }
  bool any() const;
  /// Index of the most significant set bit, or -1 for an all-zero vector.
  long long msb_index() const;
  std::string to_hex() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace petk
