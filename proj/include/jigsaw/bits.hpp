#pragma once

// Bit strings and fixed-width blocks.
//
// Both types pack bits MSB-first into 64-bit words: bit 0 is the most
// significant bit of word 0 (equivalently, the most significant bit of octet
// 0 of the big-endian serialization). Unused low bits of the last word are
// always zero.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace jigsaw {

namespace detail {

// Two inline words cover every block up to 128 bits without allocating.
using Words = boost::container::small_vector<std::uint64_t, 2>;
inline std::span<std::uint64_t> span_of(Words& w) noexcept { return {w.data(), w.size()}; }
inline std::span<const std::uint64_t> span_of(const Words& w) noexcept { return {w.data(), w.size()}; }

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

/// Read n <= 64 bits starting at pos, right-aligned in the result.
std::uint64_t read_bits(std::span<const std::uint64_t> words, std::size_t pos, unsigned n);

/// Overwrite n <= 64 bits starting at pos with the low n bits of value.
void write_bits(std::span<std::uint64_t> words, std::size_t pos, unsigned n, std::uint64_t value);

void copy_bits(std::span<std::uint64_t> dst, std::size_t dst_pos,
               std::span<const std::uint64_t> src, std::size_t src_pos, std::size_t n);

}  // namespace detail

/// Variable-length bit string. Used for torn parts and marker-affixed parts.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t nbits) : nbits_(nbits), words_(detail::words_for(nbits)) {}

  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  /// Parses a string of '0'/'1' characters; anything else throws.
  static BitString from_string(std::string_view bits);
  /// Words must use the packing described above, with zeroed padding.
  static BitString from_words(std::span<const std::uint64_t> words, std::size_t nbits);

  std::size_t size() const noexcept { return nbits_; }
  bool empty() const noexcept { return nbits_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);

  std::uint64_t read(std::size_t pos, unsigned n) const { return detail::read_bits(detail::span_of(words_), pos, n); }

  void push_back(bool bit) { append(bit ? 1 : 0, 1); }
  /// Append the low n (<= 64) bits of value.
  void append(std::uint64_t value, unsigned n);
  void append(const BitString& other) { append(other, 0, other.size()); }
  void append(const BitString& other, std::size_t pos, std::size_t n);

  BitString slice(std::size_t pos, std::size_t n) const;
  /// Drop the first n bits.
  void erase_prefix(std::size_t n);

  /// Serializes to ceil(size/8) octets; trailing bits of the last octet are zero.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return detail::span_of(words_); }

  friend bool operator==(const BitString& a, const BitString& b) = default;

 private:
  std::size_t nbits_ = 0;
  detail::Words words_;
};

/// A fixed-width value of `bits()` bits. Doubles as an element of GF(2^bits)
/// (bit 0 is the coefficient of x^(bits-1)) and as a packet payload.
class Block {
 public:
  Block() = default;
  explicit Block(std::size_t bits) : bits_(bits), words_(detail::words_for(bits)) {}

  static Block from_uint(std::uint64_t value, std::size_t bits);
  /// bytes.size() must equal bits/8 and bits must be a multiple of 8.
  static Block from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits);
  static Block from_bits(const BitString& s);
  static Block one(std::size_t bits) { return from_uint(1, bits); }

  std::size_t bits() const noexcept { return bits_; }
  std::size_t octets() const noexcept { return (bits_ + 7) / 8; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool v);

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Only valid for bits() <= 64.
  std::uint64_t to_uint() const;
  std::vector<std::uint8_t> to_bytes() const;
  void write_bytes(std::span<std::uint8_t> out) const;
  BitString to_bits() const;
  std::string to_string() const { return to_bits().to_string(); }

  /// Position of the first / last set bit, or bits() if the block is zero.
  std::size_t first_set() const noexcept;
  std::size_t last_set() const noexcept;
  std::size_t popcount() const noexcept;

  Block& operator^=(const Block& other);
  friend Block operator^(Block a, const Block& b) { return a ^= b; }
  friend bool operator==(const Block& a, const Block& b) = default;

  std::span<std::uint64_t> words() noexcept { return detail::span_of(words_); }
  std::span<const std::uint64_t> words() const noexcept { return detail::span_of(words_); }

 private:
  std::size_t bits_ = 0;
  detail::Words words_;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace jigsaw
