#pragma once

// Independent reference computations for the tests. Deliberately naive: bit
// by bit over plain vectors, sharing no code with the library's word-level
// arithmetic.

#include <cstdint>
#include <random>
#include <vector>

#include "jigsaw/bits.hpp"
#include "jigsaw/field.hpp"

namespace oracle {

// coefficient vectors, index = power of x
using Poly = std::vector<int>;

inline Poly to_poly(const jigsaw::Block& b) {
  const std::size_t n = b.bits();
  Poly p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = b.bit(n - 1 - j) ? 1 : 0;
  return p;
}

inline jigsaw::Block from_poly(const Poly& p, std::size_t n) {
  jigsaw::Block b(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j < p.size() && p[j]) b.set_bit(n - 1 - j, true);
  }
  return b;
}

// full modulus including x^n
inline Poly modulus(const jigsaw::ReductionPoly& f) {
  Poly m = to_poly(f.low_bits());
  m.push_back(1);
  return m;
}

inline Poly poly_mod(Poly a, const Poly& m) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] ^= m[j];
  }
  a.resize(deg);
  return a;
}

inline jigsaw::Block mul(const jigsaw::Block& a, const jigsaw::Block& b, const jigsaw::ReductionPoly& f) {
  const Poly pa = to_poly(a), pb = to_poly(b);
  Poly prod(pa.size() + pb.size(), 0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!pa[i]) continue;
    for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] ^= pb[j];
  }
  return from_poly(poly_mod(prod, modulus(f)), a.bits());
}

// small fields packed in an integer, bit j = coefficient of x^j
inline std::uint64_t clmul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t full_mod, int deg) {
  unsigned __int128 prod = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1) prod ^= static_cast<unsigned __int128>(a) << i;
  }
  for (int i = 127; i >= deg; --i) {
    if ((prod >> i) & 1) prod ^= static_cast<unsigned __int128>(full_mod) << (i - deg);
  }
  return static_cast<std::uint64_t>(prod);
}

inline int degree_of(std::uint64_t p) {
  int d = -1;
  for (int i = 0; i < 64; ++i) {
    if ((p >> i) & 1) d = i;
  }
  return d;
}

inline std::uint64_t mod_u(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_of(m);
  for (int i = degree_of(a); i >= dm; --i) {
    if ((a >> i) & 1) a ^= m << (i - dm);
  }
  return a;
}

// trial division by every polynomial of degree 1..deg/2
inline bool irreducible_by_trial_division(std::uint64_t full_mod) {
  const int deg = degree_of(full_mod);
  if (deg < 1) return false;
  for (std::uint64_t d = 2; degree_of(d) <= deg / 2; ++d) {
    if (mod_u(full_mod, d) == 0) return false;
  }
  return true;
}

inline jigsaw::Block random_block(std::mt19937_64& g, std::size_t bits) {
  jigsaw::Block b(bits);
  for (std::size_t i = 0; i < bits; ++i) b.set_bit(i, (g() & 1) != 0);
  return b;
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& g, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(g());
  return v;
}

}  // namespace oracle
