#include "jigsaw/field.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "jigsaw/error.hpp"

namespace jigsaw {

namespace {

// Variable-degree polynomial over GF(2), coefficient i stored at bit i%64 of
// word i/64. Only used on the slow paths (inversion, irreducibility).
class Gf2Poly {
 public:
  Gf2Poly() = default;

  static Gf2Poly from_block(const Block& b) {
    Gf2Poly p;
    const std::size_t n = b.bits();
    p.words_.assign(detail::words_for(n + 1), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (b.bit(j)) p.set(n - 1 - j);
    }
    p.trim();
    return p;
  }

  static Gf2Poly from_modulus(const ReductionPoly& f) {
    Gf2Poly p = from_block(f.low_bits());
    p.words_.resize(detail::words_for(f.degree() + 1), 0);
    p.set(f.degree());
    return p;
  }

  static Gf2Poly one() {
    Gf2Poly p;
    p.words_ = {1};
    return p;
  }

  /// Requires degree() < n.
  Block to_block(std::size_t n) const {
    Block b(n);
    for (std::size_t i = 0; i < n && i / 64 < words_.size(); ++i) {
      if (test(i)) b.set_bit(n - 1 - i, true);
    }
    return b;
  }

  long degree() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w] != 0) return static_cast<long>(w * 64 + 63 - std::countl_zero(words_[w]));
    }
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  /// *this ^= other * x^shift
  void xor_shifted(const Gf2Poly& other, std::size_t shift) {
    const long od = other.degree();
    if (od < 0) return;
    const std::size_t need = detail::words_for(static_cast<std::size_t>(od) + shift + 1);
    if (words_.size() < need) words_.resize(need, 0);
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    for (std::size_t i = 0; i < other.words_.size(); ++i) {
      const std::uint64_t w = other.words_[i];
      if (w == 0) continue;
      words_[i + ws] ^= w << bs;
      if (bs != 0 && i + ws + 1 < words_.size()) words_[i + ws + 1] ^= w >> (64 - bs);
    }
  }

  /// Remainder modulo m (m nonzero).
  void reduce(const Gf2Poly& m) {
    const long md = m.degree();
    for (long d = degree(); d >= md; d = degree()) {
      xor_shifted(m, static_cast<std::size_t>(d - md));
    }
    trim();
  }

 private:
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= 1ULL << (i % 64); }
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    a.reduce(b);
    std::swap(a, b);
  }
  return a;
}

void check_same_width(const Block& a, const Block& b) {
  if (a.bits() != b.bits()) throw Error(Errc::size_mismatch, "operands have different widths");
}

void check_field(const Block& a, const ReductionPoly& f) {
  if (a.bits() != f.degree()) throw Error(Errc::size_mismatch, "operand width does not match field degree");
}

// r <- r * x mod f
inline void mul_by_x(std::span<std::uint64_t> r, std::span<const std::uint64_t> low) {
  const std::uint64_t carry = r[0] >> 63;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i + 1 < n; ++i) r[i] = (r[i] << 1) | (r[i + 1] >> 63);
  r[n - 1] <<= 1;
  if (carry) {
    for (std::size_t i = 0; i < n; ++i) r[i] ^= low[i];
  }
}

}  // namespace

ReductionPoly ReductionPoly::from_exponents(std::size_t degree, std::initializer_list<std::size_t> exponents) {
  Block low(degree);
  for (auto e : exponents) {
    if (e >= degree) throw Error(Errc::config, "exponent must be below the degree");
    low.set_bit(degree - 1 - e, true);
  }
  return ReductionPoly(std::move(low));
}

std::optional<ReductionPoly> default_poly(std::size_t degree) {
  switch (degree) {
    case 4: return ReductionPoly::from_exponents(4, {1, 0});
    case 8: return ReductionPoly::from_exponents(8, {4, 3, 1, 0});
    case 16: return ReductionPoly::from_exponents(16, {5, 3, 1, 0});
    case 32: return ReductionPoly::from_exponents(32, {7, 3, 2, 0});
    case 64: return ReductionPoly::from_exponents(64, {4, 3, 1, 0});
    case 128: return ReductionPoly::from_exponents(128, {7, 2, 1, 0});
    case 1024: return ReductionPoly::from_exponents(1024, {19, 6, 1, 0});
    default: return std::nullopt;
  }
}

Block add(const Block& a, const Block& b) {
  check_same_width(a, b);
  return a ^ b;
}

Block mul(const Block& a, const Block& b, const ReductionPoly& f) {
  check_same_width(a, b);
  check_field(a, f);
  const std::size_t n = a.bits();
  Block r(n);
  auto rw = r.words();
  const auto aw = a.words();
  const auto bw = b.words();
  const auto low = f.low_bits().words();
  // Horner over the bits of a, most significant first; the padding bits of
  // the last word are zero, so only the first n bits are visited.
  for (std::size_t i = 0; i < n; ++i) {
    mul_by_x(rw, low);
    if ((aw[i / 64] >> (63 - i % 64)) & 1) {
      for (std::size_t w = 0; w < rw.size(); ++w) rw[w] ^= bw[w];
    }
  }
  return r;
}

Block square(const Block& a, const ReductionPoly& f) { return mul(a, a, f); }

Block inv(const Block& a, const ReductionPoly& f) {
  check_field(a, f);
  if (a.is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  // Extended Euclid: invariant t_i * a == r_i (mod f).
  Gf2Poly r0 = Gf2Poly::from_modulus(f);
  Gf2Poly r1 = Gf2Poly::from_block(a);
  Gf2Poly t0;
  Gf2Poly t1 = Gf2Poly::one();
  while (!r1.is_zero()) {
    for (long d = r0.degree() - r1.degree(); d >= 0; d = r0.degree() - r1.degree()) {
      r0.xor_shifted(r1, static_cast<std::size_t>(d));
      t0.xor_shifted(t1, static_cast<std::size_t>(d));
    }
    std::swap(r0, r1);
    std::swap(t0, t1);
  }
  if (r0.degree() != 0) throw Error(Errc::division_by_zero, "element not invertible (reducible modulus)");
  t0.reduce(Gf2Poly::from_modulus(f));
  return t0.to_block(f.degree());
}

Block field_x(const ReductionPoly& f) {
  if (f.degree() == 1) return f.low_bits();
  return Block::from_uint(2, f.degree());
}

bool is_irreducible(const ReductionPoly& f) {
  const std::size_t n = f.degree();
  if (n == 0) return false;
  // A zero constant term means x | f.
  if (n > 1 && !f.low_bits().bit(n - 1)) return false;

  std::vector<std::size_t> checkpoints;  // n/q for each prime q | n
  {
    std::size_t m = n;
    for (std::size_t q = 2; q * q <= m; ++q) {
      if (m % q == 0) {
        checkpoints.push_back(n / q);
        while (m % q == 0) m /= q;
      }
    }
    if (m > 1) checkpoints.push_back(n / m);
  }

  const Block x = field_x(f);
  const Gf2Poly modulus = Gf2Poly::from_modulus(f);
  Block h = x;
  for (std::size_t i = 1; i <= n; ++i) {
    h = square(h, f);
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      const Gf2Poly g = gcd(modulus, Gf2Poly::from_block(h ^ x));
      if (g.degree() != 0) return false;
    }
  }
  return h == x;
}

}  // namespace jigsaw
