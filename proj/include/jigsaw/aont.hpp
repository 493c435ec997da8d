#pragma once

// Linear all-or-nothing transform over GF(2^n) (Stinson's construction).
//
// Forward:  y_i = x_i + x_s            (1 <= i < s)
//           y_s = x_1 + ... + x_{s-1} + lambda * x_s
// Inverse:  x_s = gamma * (y_1 + ... + y_s),  gamma = ((s-1) mod 2 + lambda)^-1
//           x_i = y_i + x_s
//
// In characteristic 2 the integer s-1 reduces to its parity, so lambda must
// avoid {0, 1} for every s.

#include <cstddef>
#include <span>
#include <vector>

#include "jigsaw/bits.hpp"
#include "jigsaw/counters.hpp"
#include "jigsaw/field.hpp"

namespace jigsaw {

/// Transform over groups of any size s >= 2 (s = input length). Both
/// possible gamma values are computed once.
class LinearAont {
 public:
  LinearAont(Block lambda, ReductionPoly poly);

  const Block& lambda() const { return lambda_; }
  const Block& gamma(std::size_t s) const { return (s - 1) % 2 == 0 ? gamma_even_ : gamma_odd_; }

  /// 2(s-1) block XORs and one multiplication.
  std::vector<Block> forward(std::span<const Block> x, OpCounters* counters = nullptr) const;
  std::vector<Block> inverse(std::span<const Block> y, OpCounters* counters = nullptr) const;

 private:
  Block lambda_;
  ReductionPoly poly_;
  Block gamma_even_;  // (0 + lambda)^-1
  Block gamma_odd_;   // (1 + lambda)^-1
};

std::vector<Block> aont_forward(std::span<const Block> x, const Block& lambda, const ReductionPoly& poly,
                                OpCounters* counters = nullptr);
std::vector<Block> aont_inverse(std::span<const Block> y, const Block& lambda, const ReductionPoly& poly,
                                OpCounters* counters = nullptr);

}  // namespace jigsaw
