// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/hausdorff_bound.hpp"

#include <string>

#include "eaton/errors.hpp"

namespace eaton {

void IFSFamily::validate() const {
  if (a_block.size() != b_block.size())
    throw input_error("blocks must have equal length");
  if (a_block.size() < 4 || a_block.size() % 2 != 0)
    throw input_error("block length must be even and >= 4");
  for (const auto* block : {&a_block, &b_block})
    for (std::int64_t v : *block)
      if (v < 1) throw input_error("block entries must be >= 1");
  if (d < 1) throw input_error("d must be >= 1");
  if (c < 0) throw input_error("c must be >= 0");
}

bool IFSFamily::in_D(std::int64_t l) const { return l >= d + c && (l - c) % d == 0; }

Rational e_value(const IFSFamily& fam, std::int64_t l) {
  fam.validate();
  if (!fam.in_D(l))
    throw input_error("l = " + std::to_string(l) + " is not in D = " +
                      std::to_string(fam.d) + "N + " + std::to_string(fam.c));
  Integer q_prev = 0, q = 1;
  auto push = [&](std::int64_t a) {
    Integer next = Integer(static_cast<long>(a)) * q + q_prev;
    q_prev = std::move(q);
    q = std::move(next);
  };
  for (std::int64_t a : fam.a_block) push(a);
  push(l);
  for (std::int64_t b : fam.b_block) push(b);
  const Integer den = q * (l + 1) + q_prev;
  return Rational(Integer(1), den * den);
}

namespace {

// log e_l for k = 1..u.
std::vector<Interval> log_terms(const IFSFamily& fam, std::int64_t u, mpfr_prec_t prec) {
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(u));
  for (std::int64_t k = 1; k <= u; ++k)
    out.push_back(log(Interval::from_rational(e_value(fam, fam.element(k)), prec)));
  return out;
}

Interval sum_powers(const std::vector<Interval>& logs, const Interval& s) {
  Interval total = Interval::from_int(0, s.precision());
  for (const Interval& le : logs) total += exp(s * le);
  return total;
}

}  // namespace

Interval pressure_sum(const IFSFamily& fam, std::int64_t u, const Interval& s) {
  fam.validate();
  if (u < 1) throw input_error("u must be >= 1");
  return sum_powers(log_terms(fam, u, s.precision()), s);
}

Interval solve_su(const IFSFamily& fam, std::int64_t u, const Rational& tol) {
  fam.validate();
  if (u < 1) throw input_error("u must be >= 1");
  if (tol <= 0) throw input_error("tol must be positive");
  const mpfr_prec_t prec = kPressurePrecision;
  if (u == 1) {
    // Root 0; a dyadic upper end keeps the width within tol after rounding.
    Rational top(1);
    while (top > tol) top /= 2;
    return Interval::from_bounds(Rational(0), top, prec);
  }
  const auto logs = log_terms(fam, u, prec);
  const Interval one = Interval::from_int(1, prec);
  Rational lo(0), hi(1);
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    const Interval f = sum_powers(logs, Interval::from_rational(mid, prec));
    if (certainly_less(one, f) == Tri::yes) {
      lo = mid;
    } else if (certainly_less(f, one) == Tri::yes) {
      hi = mid;
    } else {
      throw undecided_error("pressure sum at s = " + mid.get_str() +
                            " cannot be separated from 1");
    }
  }
  return Interval::from_bounds(lo, hi, prec);
}

FindUResult find_u(const IFSFamily& fam, const Rational& target, std::int64_t u_max,
                   const Rational& tol) {
  fam.validate();
  if (target < 0 || target >= 1) throw input_error("target must lie in [0, 1)");
  if (u_max < 1) throw input_error("u_max must be >= 1");
  const mpfr_prec_t prec = kPressurePrecision;
  const Interval one = Interval::from_int(1, prec);
  const Interval s = Interval::from_rational(target, prec);
  Interval partial = Interval::from_int(0, prec);
  for (std::int64_t u = 1; u <= u_max; ++u) {
    const Rational e = e_value(fam, fam.element(u));
    partial += target == 0 ? one : exp(s * log(Interval::from_rational(e, prec)));
    if (certainly_less(one, partial) == Tri::yes) {
      Interval s_u = solve_su(fam, u, tol);
      return {u, std::move(s_u), target};
    }
  }
  throw Error(ErrorKind::not_found,
              "no u <= " + std::to_string(u_max) + " has s_u > " + target.get_str() +
                  " (partial sum of e^target reached " + partial.to_string(12) + ")");
}

}  // namespace eaton
