// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "eaton/numeric.hpp"

namespace eaton {

/// Family of maps x -> [0; a, l, b, l + x] for l in D = {d k + c : k >= 1}.
struct IFSFamily {
  std::vector<std::int64_t> a_block;
  std::vector<std::int64_t> b_block;
  std::int64_t d = 1;
  std::int64_t c = 0;

  /// Input error unless the blocks have equal even length >= 4, entries
  /// >= 1, d >= 1 and c >= 0.
  void validate() const;
  bool in_D(std::int64_t l) const;
  /// k-th element of D (k >= 1).
  std::int64_t element(std::int64_t k) const { return d * k + c; }
};

/// Lower bound 1/(Q (l + 1) + Q')^2 on the derivative of the l-th map, where
/// Q' and Q are the last two convergent denominators of (a, l, b).
Rational e_value(const IFSFamily& fam, std::int64_t l);

inline constexpr mpfr_prec_t kPressurePrecision = 128;

/// Sum over k = 1..u of e_{element(k)}^s.
Interval pressure_sum(const IFSFamily& fam, std::int64_t u, const Interval& s);

/// Enclosure of width <= tol of the root s_u of pressure_sum(u, s) = 1.
/// For u = 1 the root is 0 and [0, tol] is returned.
Interval solve_su(const IFSFamily& fam, std::int64_t u, const Rational& tol);

struct FindUResult {
  std::int64_t u = 0;
  Interval s_u;
  Rational target;
};

inline constexpr std::int64_t kDefaultUMax = 1000000;

/// Smallest u <= u_max with s_u > target certified. s_u > target exactly when
/// the partial sum of e^target exceeds 1, so the search walks the partial
/// sums once. Not-found error when u_max is exhausted.
FindUResult find_u(const IFSFamily& fam, const Rational& target = Rational(1, 2),
                   std::int64_t u_max = kDefaultUMax,
                   const Rational& tol = Rational(1, 1000000));

}  // namespace eaton
