#pragma once

// Tearing plaintext into parts, marking part boundaries with '1' bits, and
// placing marked parts inside otherwise-zero blocks.
//
// Offsets in this header are 1-based bit positions counted from the most
// significant bit of the block.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jigsaw/bits.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

using Part = BitString;

/// Splits data into parts whose lengths are uniform in [min_bits, max_bits];
/// the last part holds the remainder and may be shorter.
std::vector<Part> tear(std::span<const std::uint8_t> data, std::size_t min_bits, std::size_t max_bits, Rng& rng);

/// 1 || part || 1. The part must be at most ps-2 bits.
BitString affix(const Part& part, std::size_t ps);

/// Zero block of width ps with `marked` copied to positions offset..offset+len-1.
Block embed(const BitString& marked, std::size_t offset, std::size_t ps);

/// Bits strictly between the first and last set bit.
Part extract(const Block& block);

/// Largest legal embed offset for a marked string of the given length.
inline std::size_t max_offset(std::size_t marked_len, std::size_t ps) { return ps - marked_len + 1; }

/// In-order concatenation; the total must be whole octets.
std::vector<std::uint8_t> reassemble(std::span<const Part> parts);

/// Incremental reassembly: feed parts, drain whole octets as they complete.
class PartAssembler {
 public:
  void push(const Part& part) { pending_.append(part); }
  /// Removes and returns all complete octets.
  std::vector<std::uint8_t> drain();
  std::size_t pending_bits() const { return pending_.size(); }
  const BitString& pending() const { return pending_; }
  void restore(BitString pending) { pending_ = std::move(pending); }
  /// Throws Errc::incomplete_stream if bits that don't fill an octet remain.
  void finish() const;

 private:
  BitString pending_;
};

}  // namespace jigsaw
