// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace eaton {

using Integer = mpz_class;
using Rational = mpq_class;

/// Outcome of a certified comparison.
enum class Tri { no, yes, undecided };

const char* to_string(Tri t);

/// Parses "p/q", an integer, or a finite decimal such as "-0.25" or "1e5"
/// into an exact rational. Throws an input error on anything else.
Rational parse_rational(std::string_view text);

/// Largest integer not exceeding q.
Integer floor(const Rational& q);

/// Decimal rendering of q with `digits` significant digits (truncated toward
/// the nearest representable value; for display only).
std::string decimal_string(const Rational& q, int digits = 20);

std::int64_t to_int64(const Integer& z);

/// Closed interval with exact rational endpoints. Arithmetic is exact, so the
/// enclosures carry no rounding error at all.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval point(const Rational& q) { return {q, q}; }

  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  Rational width() const { return hi - lo; }

  RationalInterval operator+(const RationalInterval& o) const;
  RationalInterval operator-(const RationalInterval& o) const;
  RationalInterval operator*(const RationalInterval& o) const;
  RationalInterval operator-() const { return {-hi, -lo}; }
  /// Throws an undecided error when 0 lies in the divisor.
  RationalInterval operator/(const RationalInterval& o) const;
  RationalInterval abs() const;
};

/// Closed interval of reals with MPFR endpoints. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the result always
/// contains the exact image of every point of the operands.
class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit Interval(mpfr_prec_t prec = kDefaultPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_rational(const Rational& q, mpfr_prec_t prec);
  static Interval from_integer(const Integer& z, mpfr_prec_t prec);
  static Interval from_int(long v, mpfr_prec_t prec);
  static Interval from_bounds(const Rational& lo, const Rational& hi,
                              mpfr_prec_t prec);
  static Interval from_rational_interval(const RationalInterval& r,
                                         mpfr_prec_t prec);
  /// Interval [lo, hi] from doubles taken as exact binary values.
  static Interval from_doubles(double lo, double hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  /// Endpoints rounded outward to double.
  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  /// Exact rational value of an endpoint.
  Rational lo_rational() const;
  Rational hi_rational() const;
  Rational mid_rational() const;

  /// Upper bound on hi - lo.
  Interval width() const;
  double width_double() const;
  /// Upper bound on the radius (hi - lo)/2, as a double.
  double radius_double() const;

  bool is_point() const;
  bool is_zero() const;
  bool contains(const Rational& q) const;
  bool contains_zero() const;

  /// +1, -1, 0 when certified (0 only for the exact point zero); nullopt-like
  /// value 2 when the sign is not determined.
  int sign() const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;
  Interval operator-() const;
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }

  Interval operator*(long k) const;
  Interval mul_integer(const Integer& z) const;

  friend Interval abs(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval sin(const Interval& x);
  friend Interval cos(const Interval& x);
  /// Convex hull of two intervals.
  friend Interval hull(const Interval& a, const Interval& b);

  std::string to_string(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;

  void set_precision(mpfr_prec_t prec);
};

inline constexpr int kSignUnknown = 2;

/// Certified comparisons: yes when true for every pair of points, no when
/// false for every pair, undecided otherwise.
Tri certainly_less(const Interval& a, const Interval& b);
Tri certainly_less_equal(const Interval& a, const Interval& b);

Tri certainly_less(const RationalInterval& a, const RationalInterval& b);
Tri certainly_less_equal(const RationalInterval& a, const RationalInterval& b);

/// Square of a point, interval-wise; tighter than x*x when x straddles 0.
Interval square(const Interval& x);

/// Interval exp(s log(base)) for base > 0.
Interval pow(const Interval& base, const Interval& s);

/// Runs `attempt(prec)` for prec = start, 2*start, ... up to `max_prec` until
/// the returned value reports a decided outcome via `decided(result)`.
template <class Attempt, class Decided>
auto refine_precision(mpfr_prec_t start, mpfr_prec_t max_prec,
                      Attempt&& attempt, Decided&& decided) {
  auto result = attempt(start);
  for (mpfr_prec_t p = start * 2; !decided(result) && p <= max_prec; p *= 2)
    result = attempt(p);
  return result;
}

}  // namespace eaton
