#include "jigsaw/aont.hpp"

#include "jigsaw/error.hpp"

namespace jigsaw {

namespace {

void check_group(std::span<const Block> v, const Block& lambda) {
  if (v.size() < 2) throw Error(Errc::size_mismatch, "AONT group needs at least two blocks");
  for (const auto& b : v) {
    if (b.bits() != lambda.bits()) throw Error(Errc::size_mismatch, "AONT block width differs from lambda");
  }
}

}  // namespace

LinearAont::LinearAont(Block lambda, ReductionPoly poly) : lambda_(std::move(lambda)), poly_(std::move(poly)) {
  if (lambda_.bits() != poly_.degree()) throw Error(Errc::size_mismatch, "lambda width differs from field degree");
  if (lambda_.is_zero() || lambda_.is_one()) throw Error(Errc::invariant, "lambda must not be 0 or 1");
  gamma_even_ = inv(lambda_, poly_);
  gamma_odd_ = inv(lambda_ ^ Block::one(lambda_.bits()), poly_);
}

std::vector<Block> LinearAont::forward(std::span<const Block> x, OpCounters* counters) const {
  check_group(x, lambda_);
  const std::size_t s = x.size();
  const Block& last = x[s - 1];
  std::vector<Block> y;
  y.reserve(s);
  Block acc = mul(lambda_, last, poly_);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    y.push_back(x[i] ^ last);
    acc ^= x[i];
  }
  y.push_back(std::move(acc));
  count_xors(counters, 2 * (s - 1));
  count_mults(counters, 1);
  return y;
}

std::vector<Block> LinearAont::inverse(std::span<const Block> y, OpCounters* counters) const {
  check_group(y, lambda_);
  const std::size_t s = y.size();
  Block sum = y[0];
  for (std::size_t i = 1; i < s; ++i) sum ^= y[i];
  const Block last = mul(gamma(s), sum, poly_);
  std::vector<Block> x;
  x.reserve(s);
  for (std::size_t i = 0; i + 1 < s; ++i) x.push_back(y[i] ^ last);
  x.push_back(last);
  count_xors(counters, 2 * (s - 1));
  count_mults(counters, 1);
  return x;
}

std::vector<Block> aont_forward(std::span<const Block> x, const Block& lambda, const ReductionPoly& poly,
                                OpCounters* counters) {
  return LinearAont(lambda, poly).forward(x, counters);
}

std::vector<Block> aont_inverse(std::span<const Block> y, const Block& lambda, const ReductionPoly& poly,
                                OpCounters* counters) {
  return LinearAont(lambda, poly).inverse(y, counters);
}

}  // namespace jigsaw
