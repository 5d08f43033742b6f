// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <utility>

#include "eaton/errors.hpp"

namespace eaton {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::undecided: return "undecided";
  }
  return "undecided";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw input_error("empty rational literal");

  auto parse_int = [&](const std::string& digits) {
    if (digits.empty() || digits == "+" || digits == "-")
      throw input_error("malformed rational literal '" + std::string(text) + "'");
    std::size_t start = (digits[0] == '+' || digits[0] == '-') ? 1 : 0;
    for (std::size_t i = start; i < digits.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(digits[i])))
        throw input_error("malformed rational literal '" + std::string(text) + "'");
    return Integer(digits[0] == '+' ? digits.substr(1) : digits, 10);
  };

  if (auto e = s.find_first_of("eE"); e != std::string::npos && s.find('/') == std::string::npos) {
    const Rational mantissa = parse_rational(s.substr(0, e));
    const Integer exponent = parse_int(s.substr(e + 1));
    if (abs(exponent) > 1000) throw input_error("exponent out of range in '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, Integer(abs(exponent)).get_ui());
    Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa / scale);
    r.canonicalize();
    return r;
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string int_part = s.substr(0, dot);
    std::string frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") int_part += "0";
    if (frac_part.empty() || frac_part.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("malformed decimal literal '" + std::string(text) + "'");
    Integer whole = parse_int(int_part);
    Integer frac(frac_part, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational r(abs(whole) * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(s));
}

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::string decimal_string(const Rational& q, int digits) {
  mpfr_t tmp;
  mpfr_init2(tmp, static_cast<mpfr_prec_t>(digits * 4 + 16));
  mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, tmp);
  std::string out(buf);
  mpfr_free_str(buf);
  mpfr_clear(tmp);
  return out;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw input_error("integer out of 64-bit range");
  return z.get_si();
}

// ---------------------------------------------------------------------------
// RationalInterval

RationalInterval RationalInterval::operator+(const RationalInterval& o) const {
  return {lo + o.lo, hi + o.hi};
}

RationalInterval RationalInterval::operator-(const RationalInterval& o) const {
  return {lo - o.hi, hi - o.lo};
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

RationalInterval RationalInterval::operator/(const RationalInterval& o) const {
  if (o.lo <= 0 && o.hi >= 0)
    throw undecided_error("rational interval division by an interval containing 0");
  return *this * RationalInterval{1 / o.hi, 1 / o.lo};
}

RationalInterval RationalInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  return {0, std::max(Rational(-lo), hi)};
}

Tri certainly_less(const RationalInterval& a, const RationalInterval& b) {
  if (a.hi < b.lo) return Tri::yes;
  if (a.lo >= b.hi) return Tri::no;
  return Tri::undecided;
}

Tri certainly_less_equal(const RationalInterval& a, const RationalInterval& b) {
  if (a.hi <= b.lo) return Tri::yes;
  if (a.lo > b.hi) return Tri::no;
  return Tri::undecided;
}

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  set_precision(other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_precision(mpfr_prec_t prec) {
  if (precision() != prec) {
    mpfr_set_prec(lo_, prec);
    mpfr_set_prec(hi_, prec);
  }
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_q(out.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, q.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_integer(const Integer& z, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_z(out.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, z.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_int(long v, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_si(out.lo_, v, MPFR_RNDD);
  mpfr_set_si(out.hi_, v, MPFR_RNDU);
  return out;
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi,
                               mpfr_prec_t prec) {
  if (lo > hi) throw input_error("interval bounds out of order");
  Interval out(prec);
  mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_rational_interval(const RationalInterval& r,
                                          mpfr_prec_t prec) {
  return from_bounds(r.lo, r.hi, prec);
}

Interval Interval::from_doubles(double lo, double hi, mpfr_prec_t prec) {
  if (!(lo <= hi)) throw input_error("interval bounds out of order");
  Interval out(prec);
  mpfr_set_d(out.lo_, lo, MPFR_RNDD);
  mpfr_set_d(out.hi_, hi, MPFR_RNDU);
  return out;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

namespace {
Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  if (!mpfr_number_p(x)) throw undecided_error("non-finite interval endpoint");
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rational r(mant);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}
}  // namespace

Rational Interval::lo_rational() const { return mpfr_to_rational(lo_); }
Rational Interval::hi_rational() const { return mpfr_to_rational(hi_); }
Rational Interval::mid_rational() const {
  return (lo_rational() + hi_rational()) / 2;
}

Interval Interval::width() const {
  Interval out(precision());
  mpfr_sub(out.lo_, hi_, lo_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, lo_, MPFR_RNDU);
  return out;
}

double Interval::width_double() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

double Interval::radius_double() const { return width_double() / 2; }

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
bool Interval::is_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  if (is_zero()) return 0;
  return kSignUnknown;
}

namespace {
mpfr_prec_t joint(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

Interval Interval::operator+(const Interval& o) const {
  Interval out(joint(*this, o));
  mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-(const Interval& o) const {
  Interval out(joint(*this, o));
  mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator*(const Interval& o) const {
  const mpfr_prec_t prec = joint(*this, o);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero())
    throw undecided_error("interval division by an interval containing 0");
  const mpfr_prec_t prec = joint(*this, o);
  Interval out(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

Interval Interval::operator*(long k) const {
  Interval out(precision());
  if (k >= 0) {
    mpfr_mul_si(out.lo_, lo_, k, MPFR_RNDD);
    mpfr_mul_si(out.hi_, hi_, k, MPFR_RNDU);
  } else {
    mpfr_mul_si(out.lo_, hi_, k, MPFR_RNDD);
    mpfr_mul_si(out.hi_, lo_, k, MPFR_RNDU);
  }
  return out;
}

Interval Interval::mul_integer(const Integer& z) const {
  Interval out(precision());
  if (sgn(z) >= 0) {
    mpfr_mul_z(out.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(out.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(out.lo_, hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(out.hi_, lo_, z.get_mpz_t(), MPFR_RNDU);
  }
  return out;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval out(x.precision());
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, x.lo_, MPFR_RNDU);
  if (mpfr_greater_p(x.hi_, out.hi_)) mpfr_set(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw undecided_error("sqrt of an interval reaching below 0");
  Interval out(x.precision());
  mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw undecided_error("log of an interval reaching 0");
  Interval out(x.precision());
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out(x.precision());
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

namespace {

// Endpoint images of f with both roundings, widened to [-1, 1]-clamped
// extremum values when the derivative `df` may vanish inside x.
Interval trig(const Interval& x,
              int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t),
              int (*df)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), bool df_negated) {
  const mpfr_prec_t prec = x.precision();
  Interval out(prec);
  Interval w = x.width();
  if (mpfr_cmp_ui(w.hi(), 1) > 0) {
    return Interval::from_int(-1, prec) + Interval::from_doubles(0, 2, prec);
  }
  mpfr_t a, b;
  mpfr_init2(a, prec);
  mpfr_init2(b, prec);
  f(a, x.lo(), MPFR_RNDD);
  f(b, x.hi(), MPFR_RNDD);
  mpfr_min(const_cast<mpfr_ptr>(out.lo()), a, b, MPFR_RNDD);
  f(a, x.lo(), MPFR_RNDU);
  f(b, x.hi(), MPFR_RNDU);
  mpfr_max(const_cast<mpfr_ptr>(out.hi()), a, b, MPFR_RNDU);

  // Derivative sign at the endpoints; a sign change (or an unresolved sign)
  // means an extremum may sit inside. Width < 1 < pi admits at most one.
  mpfr_t dl, dh;
  mpfr_init2(dl, prec);
  mpfr_init2(dh, prec);
  df(dl, x.lo(), MPFR_RNDN);
  df(dh, x.hi(), MPFR_RNDN);
  int sl = mpfr_sgn(dl), sh = mpfr_sgn(dh);
  if (df_negated) {
    sl = -sl;
    sh = -sh;
  }
  const bool near_zero = mpfr_cmpabs_ui(dl, 0) == 0 || mpfr_cmpabs_ui(dh, 0) == 0 ||
                         mpfr_get_exp(dl) < -static_cast<mpfr_exp_t>(prec / 2) ||
                         mpfr_get_exp(dh) < -static_cast<mpfr_exp_t>(prec / 2);
  if (sl != sh || near_zero) {
    // Increasing then decreasing: a maximum of 1. Otherwise a minimum of -1.
    if (sl >= 0 && sh <= 0) mpfr_set_si(const_cast<mpfr_ptr>(out.hi()), 1, MPFR_RNDU);
    if (sl <= 0 && sh >= 0) mpfr_set_si(const_cast<mpfr_ptr>(out.lo()), -1, MPFR_RNDD);
  }
  mpfr_clears(a, b, dl, dh, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace

Interval sin(const Interval& x) { return trig(x, mpfr_sin, mpfr_cos, false); }
Interval cos(const Interval& x) { return trig(x, mpfr_cos, mpfr_sin, true); }

Interval hull(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

std::string Interval::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Tri certainly_less(const Interval& a, const Interval& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Tri::yes;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Tri::no;
  return Tri::undecided;
}

Tri certainly_less_equal(const Interval& a, const Interval& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Tri::yes;
  if (mpfr_greater_p(a.lo(), b.hi())) return Tri::no;
  return Tri::undecided;
}

Interval square(const Interval& x) {
  Interval a = abs(x);
  return a * a;
}

Interval pow(const Interval& base, const Interval& s) {
  return exp(s * log(base));
}

}  // namespace eaton
