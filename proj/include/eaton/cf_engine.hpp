// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eaton/numeric.hpp"

namespace eaton {

/// Partial quotients a_1, a_2, ... of theta = [0; a_1, a_2, ...]. Every
/// quotient is at least 1.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::int64_t> quotients);

  std::span<const std::int64_t> quotients() const { return quotients_; }
  std::size_t size() const { return quotients_.size(); }
  bool empty() const { return quotients_.empty(); }
  /// 1-based access, matching the usual a_k notation.
  std::int64_t a(std::size_t k) const { return quotients_.at(k - 1); }

  /// First `n` quotients.
  ContinuedFraction prefix(std::size_t n) const;

  bool operator==(const ContinuedFraction&) const = default;

 private:
  std::vector<std::int64_t> quotients_;
};

/// p_k / q_k, the value of [0; a_1, ..., a_k].
struct Convergent {
  Integer p;
  Integer q;
  std::size_t index = 0;
};

/// 2x2 integer matrix ((a, b), (c, d)).
struct IntegerMatrix2 {
  Integer a{1}, b{0}, c{0}, d{1};

  static IntegerMatrix2 identity() { return {}; }
  /// h+^e = ((1, e), (0, 1)); e may be negative.
  static IntegerMatrix2 h_plus(std::int64_t e = 1);
  /// h-^e = ((1, 0), (e, 1)).
  static IntegerMatrix2 h_minus(std::int64_t e = 1);
  /// omega = ((0, 1), (-1, 0)).
  static IntegerMatrix2 omega();

  Integer det() const { return a * d - b * c; }
  /// Inverse of a determinant +-1 matrix.
  IntegerMatrix2 inverse() const;
  IntegerMatrix2 operator*(const IntegerMatrix2& o) const;
  IntegerMatrix2 operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const IntegerMatrix2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }

  /// Image of the column vector (x, y).
  std::pair<Integer, Integer> apply(const Integer& x, const Integer& y) const {
    return {a * x + b * y, c * x + d * y};
  }
};

/// Convergents p_i/q_i for i = 1..k. Throws an input error if k exceeds the
/// number of quotients.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k);

/// h+^{a_1} h-^{a_2} ... h-^{a_k}; columns are (q_k, p_k) and (q_{k-1}, p_{k-1}).
/// Requires k even.
IntegerMatrix2 word_matrix(const ContinuedFraction& cf, std::size_t k);

/// Smallest a, then smallest d, with 4q < a, d <= 6q and
///   r + a s = -q (mod 2q),   d s - r = -q (mod 2q).
/// Preconditions: |r|, |s| < q, s != 0 coprime with q, r or s odd.
std::pair<std::int64_t, std::int64_t> solve_ad(std::int64_t r, std::int64_t s,
                                               std::int64_t q);

/// Checks the rational slit-endpoint preconditions shared by the word and
/// direction constructions; throws an input error naming the violation.
void check_slit_parameters(std::int64_t r, std::int64_t s, std::int64_t q);

/// (a, d) used for the slit endpoint (r/2q, s/2q). For s < 0 the pair is
/// solved for the antipodal endpoint (-r, -s), whose word also fixes the
/// original point.
std::pair<std::int64_t, std::int64_t> endpoint_ad(std::int64_t r, std::int64_t s,
                                                  std::int64_t q);

/// Theta = [0; d-1, 1, 1, d, n_1, a-1, 1, 1, a, n_1, d-1, ...] with `blocks`
/// ten-quotient blocks. n_seq is cycled when shorter than `blocks`; every
/// entry must be a positive multiple of 8q.
ContinuedFraction ergodic_cf(std::int64_t r, std::int64_t s, std::int64_t q,
                             std::span<const std::int64_t> n_seq,
                             std::size_t blocks);

/// Exact value p_n/q_n of the finite continued fraction. Empty -> 0.
Rational cf_value(const ContinuedFraction& cf);

/// Enclosure of the finite continued-fraction value of width <= 2^-precision.
Interval direction_value(const ContinuedFraction& cf, mpfr_prec_t precision);

/// Exact enclosure of every real whose expansion starts with `cf`: the closed
/// interval between p_n/q_n and (p_n + p_{n-1})/(q_n + q_{n-1}).
RationalInterval prefix_enclosure(const ContinuedFraction& cf);

}  // namespace eaton
