#pragma once

#include <cstdint>

namespace jigsaw {

/// Tallies of PS-bit block operations actually performed.
struct OpCounters {
  std::uint64_t block_xors = 0;
  std::uint64_t block_mults = 0;

  OpCounters& operator+=(const OpCounters& o) {
    block_xors += o.block_xors;
    block_mults += o.block_mults;
    return *this;
  }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

inline void count_xors(OpCounters* c, std::uint64_t n) {
  if (c) c->block_xors += n;
}

inline void count_mults(OpCounters* c, std::uint64_t n) {
  if (c) c->block_mults += n;
}

}  // namespace jigsaw
