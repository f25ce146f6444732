#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qkdsec/errors.hpp"

namespace qkdsec {

// Ordered sequence of bits. Position 0 is the most significant bit when the
// string is read as an outcome index, matching the distribution file format.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length) : bits_(length, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw FormatError("bit values must be 0 or 1");
    }
  }

  static BitString parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
      if (ch == '0' || ch == '1') {
        bits.push_back(static_cast<std::uint8_t>(ch - '0'));
      } else {
        throw FormatError("bitstring literal may contain only '0' and '1', got '" +
                          std::string(text) + "'");
      }
    }
    return BitString(std::move(bits));
  }

  static BitString from_index(std::uint64_t index, std::size_t length) {
    if (length < 64 && (index >> length) != 0) {
      throw DomainError("index does not fit in the requested bit length");
    }
    BitString out(length);
    for (std::size_t i = 0; i < length; ++i) {
      std::size_t shift = length - 1 - i;
      out.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((index >> shift) & 1U) : 0;
    }
    return out;
  }

  static BitString zeros(std::size_t length) { return BitString(length); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  // Integer value, MSB first. Only defined for strings of at most 63 bits.
  std::uint64_t to_index() const {
    if (bits_.size() > 63) throw ScaleError("bitstring too long to index (max 63 bits)");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
  }

  BitString prefix(std::size_t m) const {
    if (m > bits_.size()) throw DimensionError("prefix longer than bitstring");
    return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(m)));
  }

  BitString suffix_from(std::size_t m) const {
    if (m > bits_.size()) throw DimensionError("suffix start beyond bitstring");
    return BitString(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(m), bits_.end()));
  }

  BitString concat(const BitString& tail) const {
    std::vector<std::uint8_t> out = bits_;
    out.insert(out.end(), tail.bits_.begin(), tail.bits_.end());
    return BitString(std::move(out));
  }

  friend BitString operator^(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) {
      throw DimensionError("bitstring length mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
    }
    BitString out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.bits_[i] = a.bits_[i] ^ b.bits_[i];
    return out;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qkdsec
