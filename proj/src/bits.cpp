#include "petk/bits.hpp"

#include <algorithm>

#include "petk/error.hpp"

namespace petk {

BitVector BitVector::from_u64(std::size_t width, std::uint64_t value) {
  BitVector v(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) v.set(i, (value >> i) & 1u);
  return v;
}

BitVector BitVector::from_hex(std::size_t width, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  BitVector v(width);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    char ch = *it;
    int nibble;
    if (ch >= '0' && ch <= '9') {
      nibble = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      nibble = ch - 'A' + 10;
    } else {
      throw SpecError("invalid hex digit '" + std::string(1, ch) + "'");
    }
    for (int k = 0; k < 4; ++k) {
      if (!((nibble >> k) & 1)) continue;
      if (bit + k >= width) throw SpecError("hex value exceeds " + std::to_string(width) + " bits");
      v.set(bit + k);
    }
  }
  return v;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

long long BitVector::msb_index() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return static_cast<long long>(w * 64 + ilog2(words_[w]));
  }
  return -1;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::size_t nibbles = std::max<std::size_t>(1, (width_ + 3) / 4);
  std::string out(nibbles, '0');
  for (std::size_t i = 0; i < nibbles; ++i) {
    int nibble = 0;
    for (int k = 0; k < 4; ++k) {
      std::size_t bit = i * 4 + k;
      if (bit < width_ && get(bit)) nibble |= 1 << k;
    }
    out[nibbles - 1 - i] = kDigits[nibble];
  }
  return "0x" + out;
}

} // namespace petk
