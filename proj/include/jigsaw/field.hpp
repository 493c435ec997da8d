#pragma once

// Arithmetic in GF(2^n) with elements stored as n-bit Blocks.
//
// Elements are polynomials over GF(2) of degree < n; bit 0 of a Block is the
// coefficient of x^(n-1). The field is defined by a monic degree-n reduction
// polynomial whose leading term is implicit.

#include <cstddef>
#include <optional>

#include "jigsaw/bits.hpp"

namespace jigsaw {

class ReductionPoly {
 public:
  ReductionPoly() = default;
  /// f(x) = x^degree + low_bits(x). low_bits.bits() is the degree.
  explicit ReductionPoly(Block low_bits) : low_(std::move(low_bits)) {}

  /// Builds x^degree + sum of x^e over the given exponents (each < degree).
  static ReductionPoly from_exponents(std::size_t degree, std::initializer_list<std::size_t> exponents);

  std::size_t degree() const noexcept { return low_.bits(); }
  const Block& low_bits() const noexcept { return low_; }

  friend bool operator==(const ReductionPoly&, const ReductionPoly&) = default;

 private:
  Block low_;
};

/// Shipped low-weight irreducible for the given width, if there is one.
std::optional<ReductionPoly> default_poly(std::size_t degree);

Block add(const Block& a, const Block& b);
Block mul(const Block& a, const Block& b, const ReductionPoly& f);
Block square(const Block& a, const ReductionPoly& f);
Block inv(const Block& a, const ReductionPoly& f);

/// Rabin's irreducibility test.
bool is_irreducible(const ReductionPoly& f);

/// The element x (encoded 0...010); for degree 1 this is x mod f.
Block field_x(const ReductionPoly& f);

}  // namespace jigsaw
