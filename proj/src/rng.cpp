#include "jigsaw/rng.hpp"

#include <openssl/sha.h>
#include <openssl/rand.h>

#include <cstring>
#include <limits>
#include <string>

#include "jigsaw/error.hpp"

namespace jigsaw {

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(Errc::config, "empty range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
  const std::uint64_t n = span + 1;
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return lo + v % n;
  }
}

Block Rng::block(std::size_t bits) {
  std::vector<std::uint8_t> bytes((bits + 7) / 8);
  fill(bytes);
  if (bits % 8 == 0) return Block::from_bytes(bytes, bits);
  Block b(bits);
  for (std::size_t i = 0; i < bits; ++i) b.set_bit(i, (bytes[i / 8] >> (7 - i % 8)) & 1);
  return b;
}

Block Rng::nonzero_block(std::size_t bits) {
  for (;;) {
    Block b = block(bits);
    if (!b.is_zero()) return b;
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("system random generator failed");
  }
}

SeededRng::SeededRng(std::span<const std::uint8_t> seed, std::string_view label) {
  key_.assign(seed.begin(), seed.end());
  key_.push_back(0);
  key_.insert(key_.end(), label.begin(), label.end());
}

void SeededRng::refill() {
  std::uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
  SHA256_CTX c;
  SHA256_Init(&c);
  SHA256_Update(&c, key_.data(), key_.size());
  SHA256_Update(&c, ctr, sizeof(ctr));
  SHA256_Final(buf_, &c);
#pragma GCC diagnostic pop
  used_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == sizeof(buf_)) refill();
    const std::size_t n = std::min(out.size() - pos, sizeof(buf_) - used_);
    std::memcpy(out.data() + pos, buf_ + used_, n);
    pos += n;
    used_ += n;
  }
}

RngStreams RngStreams::system() {
  return {std::make_unique<SystemRng>(), std::make_unique<SystemRng>(), std::make_unique<SystemRng>(),
          std::make_unique<SystemRng>()};
}

RngStreams RngStreams::seeded(std::span<const std::uint8_t> seed, std::uint64_t context) {
  const std::string suffix = "/" + std::to_string(context);
  return {std::make_unique<SeededRng>(seed, "tear" + suffix), std::make_unique<SeededRng>(seed, "offset" + suffix),
          std::make_unique<SeededRng>(seed, "r" + suffix), std::make_unique<SeededRng>(seed, "aont" + suffix)};
}

}  // namespace jigsaw
