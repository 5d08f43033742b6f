// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/cf_engine.hpp"

#include <numeric>
#include <string>

#include "eaton/errors.hpp"

namespace eaton {

ContinuedFraction::ContinuedFraction(std::vector<std::int64_t> quotients)
    : quotients_(std::move(quotients)) {
  for (std::size_t i = 0; i < quotients_.size(); ++i) {
    if (quotients_[i] < 1)
      throw input_error("partial quotient a_" + std::to_string(i + 1) +
                        " = " + std::to_string(quotients_[i]) + " is not >= 1");
  }
}

ContinuedFraction ContinuedFraction::prefix(std::size_t n) const {
  if (n > quotients_.size())
    throw input_error("prefix longer than the continued fraction");
  return ContinuedFraction(
      std::vector<std::int64_t>(quotients_.begin(), quotients_.begin() + n));
}

IntegerMatrix2 IntegerMatrix2::h_plus(std::int64_t e) {
  return {1, Integer(static_cast<long>(e)), 0, 1};
}

IntegerMatrix2 IntegerMatrix2::h_minus(std::int64_t e) {
  return {1, 0, Integer(static_cast<long>(e)), 1};
}

IntegerMatrix2 IntegerMatrix2::omega() { return {0, 1, -1, 0}; }

IntegerMatrix2 IntegerMatrix2::inverse() const {
  const Integer det_value = det();
  if (det_value == 1) return {d, -b, -c, a};
  if (det_value == -1) return {-d, b, c, -a};
  throw input_error("matrix is not invertible over the integers");
}

IntegerMatrix2 IntegerMatrix2::operator*(const IntegerMatrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k) {
  if (k > cf.size())
    throw input_error("requested " + std::to_string(k) + " convergents but only " +
                      std::to_string(cf.size()) + " quotients are available");
  std::vector<Convergent> out;
  out.reserve(k);
  // Seeds (p_{-1}, q_{-1}) = (1, 0), (p_0, q_0) = (0, 1).
  Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const Integer a(static_cast<long>(cf.a(i)));
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({p, q, i});
  }
  return out;
}

IntegerMatrix2 word_matrix(const ContinuedFraction& cf, std::size_t k) {
  if (k % 2 != 0)
    throw input_error("word_matrix needs an even number of quotients (got " +
                      std::to_string(k) + ")");
  if (k > cf.size()) throw input_error("word_matrix index exceeds the quotients");
  IntegerMatrix2 m;
  for (std::size_t i = 1; i <= k; ++i) {
    m = m * (i % 2 == 1 ? IntegerMatrix2::h_plus(cf.a(i))
                        : IntegerMatrix2::h_minus(cf.a(i)));
  }
  return m;
}

void check_slit_parameters(std::int64_t r, std::int64_t s, std::int64_t q) {
  if (q < 1) throw input_error("q must be positive");
  if (std::abs(r) >= q || std::abs(s) >= q) throw input_error("|r|, |s| must be < q");
  if (s == 0) throw input_error("s must be non-zero");
  if (std::gcd(std::abs(s), q) != 1) throw input_error("s,q not coprime");
  if (r % 2 == 0 && s % 2 == 0) throw input_error("r and s are both even");
}

namespace {
std::int64_t mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}
}  // namespace

std::pair<std::int64_t, std::int64_t> solve_ad(std::int64_t r, std::int64_t s,
                                               std::int64_t q) {
  check_slit_parameters(r, s, q);
  const std::int64_t m = 2 * q;
  std::int64_t a = 0, d = 0;
  for (std::int64_t x = 4 * q + 1; x <= 6 * q && a == 0; ++x)
    if (mod(r + x * s + q, m) == 0) a = x;
  for (std::int64_t x = 4 * q + 1; x <= 6 * q && d == 0; ++x)
    if (mod(x * s - r + q, m) == 0) d = x;
  if (a == 0 || d == 0)
    throw Error(ErrorKind::infeasible,
                "no (a, d) in (4q, 6q] solves the congruences for (r, s, q) = (" +
                    std::to_string(r) + ", " + std::to_string(s) + ", " +
                    std::to_string(q) + ")");
  return {a, d};
}

std::pair<std::int64_t, std::int64_t> endpoint_ad(std::int64_t r, std::int64_t s,
                                                  std::int64_t q) {
  return s > 0 ? solve_ad(r, s, q) : solve_ad(-r, -s, q);
}

ContinuedFraction ergodic_cf(std::int64_t r, std::int64_t s, std::int64_t q,
                             std::span<const std::int64_t> n_seq,
                             std::size_t blocks) {
  check_slit_parameters(r, s, q);
  for (std::int64_t n : n_seq) {
    if (n <= 0 || n % (8 * q) != 0)
      throw input_error("n = " + std::to_string(n) +
                        " is not a positive multiple of 8q = " + std::to_string(8 * q));
  }
  if (blocks > 0 && n_seq.empty()) throw input_error("n sequence is empty");
  const auto [a, d] = endpoint_ad(r, s, q);
  std::vector<std::int64_t> out;
  out.reserve(10 * blocks);
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::int64_t n = n_seq[i % n_seq.size()];
    for (std::int64_t x : {d - 1, std::int64_t{1}, std::int64_t{1}, d, n,
                           a - 1, std::int64_t{1}, std::int64_t{1}, a, n})
      out.push_back(x);
  }
  return ContinuedFraction(std::move(out));
}

Rational cf_value(const ContinuedFraction& cf) {
  if (cf.empty()) return Rational(0);
  const auto conv = convergents(cf, cf.size());
  Rational v(conv.back().p, conv.back().q);
  v.canonicalize();
  return v;
}

Interval direction_value(const ContinuedFraction& cf, mpfr_prec_t precision) {
  if (cf.empty()) throw input_error("direction_value needs a non-empty continued fraction");
  // The value lies in (0, 1], so rounding to precision+1 bits leaves each
  // endpoint within 2^-(precision+1) of it.
  return Interval::from_rational(cf_value(cf), precision + 1);
}

RationalInterval prefix_enclosure(const ContinuedFraction& cf) {
  if (cf.empty()) return {0, 1};
  const auto conv = convergents(cf, cf.size());
  const Convergent& last = conv.back();
  Integer p_prev = 1, q_prev = 0;
  if (conv.size() >= 2) {
    p_prev = conv[conv.size() - 2].p;
    q_prev = conv[conv.size() - 2].q;
  } else {
    p_prev = 0;
    q_prev = 1;
  }
  Rational x(last.p, last.q), y(last.p + p_prev, last.q + q_prev);
  x.canonicalize();
  y.canonicalize();
  return x <= y ? RationalInterval{x, y} : RationalInterval{y, x};
}

}  // namespace eaton
