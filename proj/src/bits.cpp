#include "jigsaw/bits.hpp"

#include <bit>

#include "jigsaw/error.hpp"

namespace jigsaw {

namespace detail {

namespace {

constexpr std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

}  // namespace

std::uint64_t read_bits(std::span<const std::uint64_t> words, std::size_t pos, unsigned n) {
  if (n == 0) return 0;
  const std::size_t w = pos / 64;
  const unsigned off = pos % 64;
  // Bits [off, off+n) of word w, continuing into w+1 when they straddle.
  std::uint64_t hi = words[w] << off;
  if (off + n > 64) hi |= words[w + 1] >> (64 - off);
  return hi >> (64 - n);
}

void write_bits(std::span<std::uint64_t> words, std::size_t pos, unsigned n, std::uint64_t value) {
  if (n == 0) return;
  value &= low_mask(n);
  const std::size_t w = pos / 64;
  const unsigned off = pos % 64;
  const unsigned first = off + n > 64 ? 64 - off : n;
  const unsigned rest = n - first;
  const unsigned shift = 64 - off - first;
  const std::uint64_t m = low_mask(first) << shift;
  words[w] = (words[w] & ~m) | (((value >> rest) << shift) & m);
  if (rest != 0) {
    const std::uint64_t m2 = low_mask(rest) << (64 - rest);
    words[w + 1] = (words[w + 1] & ~m2) | ((value << (64 - rest)) & m2);
  }
}

void copy_bits(std::span<std::uint64_t> dst, std::size_t dst_pos,
               std::span<const std::uint64_t> src, std::size_t src_pos, std::size_t n) {
  while (n > 0) {
    const unsigned chunk = n >= 64 ? 64 : static_cast<unsigned>(n);
    write_bits(dst, dst_pos, chunk, read_bits(src, src_pos, chunk));
    dst_pos += chunk;
    src_pos += chunk;
    n -= chunk;
  }
}

}  // namespace detail

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  BitString s(bytes.size() * 8);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    s.words_[i / 8] |= std::uint64_t{bytes[i]} << (56 - 8 * (i % 8));
  }
  return s;
}

BitString BitString::from_string(std::string_view bits) {
  BitString s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw Error(Errc::config, "bit string must contain only 0/1");
    s.set(i, bits[i] == '1');
  }
  return s;
}

BitString BitString::from_words(std::span<const std::uint64_t> words, std::size_t nbits) {
  if (words.size() != detail::words_for(nbits)) throw Error(Errc::size_mismatch, "word count does not match bit length");
  BitString s;
  s.nbits_ = nbits;
  s.words_.assign(words.begin(), words.end());
  return s;
}

bool BitString::get(std::size_t i) const {
  if (i >= nbits_) throw Error(Errc::out_of_bounds, "bit index out of range");
  return (words_[i / 64] >> (63 - i % 64)) & 1;
}

void BitString::set(std::size_t i, bool v) {
  if (i >= nbits_) throw Error(Errc::out_of_bounds, "bit index out of range");
  const std::uint64_t m = 1ULL << (63 - i % 64);
  words_[i / 64] = v ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
}

void BitString::append(std::uint64_t value, unsigned n) {
  if (n == 0) return;
  const std::size_t pos = nbits_;
  nbits_ += n;
  words_.resize(detail::words_for(nbits_), 0);
  detail::write_bits(detail::span_of(words_), pos, n, value);
}

void BitString::append(const BitString& other, std::size_t pos, std::size_t n) {
  if (pos + n > other.nbits_) throw Error(Errc::out_of_bounds, "append range out of bounds");
  const std::size_t at = nbits_;
  nbits_ += n;
  words_.resize(detail::words_for(nbits_), 0);
  detail::copy_bits(detail::span_of(words_), at, detail::span_of(other.words_), pos, n);
}

BitString BitString::slice(std::size_t pos, std::size_t n) const {
  if (pos + n > nbits_) throw Error(Errc::out_of_bounds, "slice out of bounds");
  BitString s(n);
  detail::copy_bits(detail::span_of(s.words_), 0, detail::span_of(words_), pos, n);
  return s;
}

void BitString::erase_prefix(std::size_t n) {
  if (n == 0) return;
  *this = slice(n, nbits_ - n);
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

Block Block::from_uint(std::uint64_t value, std::size_t bits) {
  Block b(bits);
  const unsigned n = bits >= 64 ? 64 : static_cast<unsigned>(bits);
  if (bits < 64 && (value >> bits) != 0) throw Error(Errc::size_mismatch, "value does not fit in block");
  detail::write_bits(detail::span_of(b.words_), bits - n, n, value);
  return b;
}

Block Block::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits) {
  if (bits % 8 != 0 || bytes.size() != bits / 8) {
    throw Error(Errc::size_mismatch, "byte length does not match block width");
  }
  Block b(bits);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    b.words_[i / 8] |= std::uint64_t{bytes[i]} << (56 - 8 * (i % 8));
  }
  return b;
}

Block Block::from_bits(const BitString& s) {
  Block b(s.size());
  std::copy(s.words().begin(), s.words().end(), b.words_.begin());
  return b;
}

bool Block::bit(std::size_t i) const {
  if (i >= bits_) throw Error(Errc::out_of_bounds, "bit index out of range");
  return (words_[i / 64] >> (63 - i % 64)) & 1;
}

void Block::set_bit(std::size_t i, bool v) {
  if (i >= bits_) throw Error(Errc::out_of_bounds, "bit index out of range");
  const std::uint64_t m = 1ULL << (63 - i % 64);
  words_[i / 64] = v ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
}

bool Block::is_zero() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool Block::is_one() const noexcept {
  if (bits_ == 0) return false;
  return popcount() == 1 && bit(bits_ - 1);
}

std::uint64_t Block::to_uint() const {
  if (bits_ > 64) throw Error(Errc::size_mismatch, "block wider than 64 bits");
  return detail::read_bits(detail::span_of(words_), 0, static_cast<unsigned>(bits_));
}

std::vector<std::uint8_t> Block::to_bytes() const {
  std::vector<std::uint8_t> out(octets());
  write_bytes(out);
  return out;
}

void Block::write_bytes(std::span<std::uint8_t> out) const {
  if (bits_ % 8 != 0 || out.size() != bits_ / 8) {
    throw Error(Errc::size_mismatch, "byte length does not match block width");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
  }
}

BitString Block::to_bits() const { return BitString::from_words(detail::span_of(words_), bits_); }

std::size_t Block::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countl_zero(words_[w]));
  }
  return bits_;
}

std::size_t Block::last_set() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return w * 64 + 63 - static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return bits_;
}

std::size_t Block::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Block& Block::operator^=(const Block& other) {
  if (bits_ != other.bits_) throw Error(Errc::size_mismatch, "block widths differ");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(Errc::config, "hex string has odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::config, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace jigsaw
