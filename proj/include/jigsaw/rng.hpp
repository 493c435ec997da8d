#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "jigsaw/bits.hpp"

namespace jigsaw {

/// Source of random octets. Implementations are single-owner.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  /// Uniform integer in [lo, hi], unbiased.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  Block block(std::size_t bits);
  Block nonzero_block(std::size_t bits);
};

/// Operating-system CSPRNG (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// Deterministic generator: SHA-256 in counter mode over (seed, label).
/// Different labels give independent sub-streams of one seed.
class SeededRng final : public Rng {
 public:
  SeededRng(std::span<const std::uint8_t> seed, std::string_view label);
  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  std::vector<std::uint8_t> key_;
  std::uint64_t counter_ = 0;
  std::uint8_t buf_[32] = {};
  std::size_t used_ = sizeof(buf_);
};

/// The independent random streams one sender session consumes.
struct RngStreams {
  std::unique_ptr<Rng> tear;
  std::unique_ptr<Rng> offsets;
  std::unique_ptr<Rng> r_values;
  std::unique_ptr<Rng> aont;

  static RngStreams system();
  /// `context` distinguishes sessions sharing one seed (e.g. continuation
  /// invocations that resume at different sequence numbers).
  static RngStreams seeded(std::span<const std::uint8_t> seed, std::uint64_t context = 0);
};

}  // namespace jigsaw
