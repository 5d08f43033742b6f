// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/slit_surface.hpp"

#include "eaton/errors.hpp"

namespace eaton {

namespace {

RationalInterval sq(const RationalInterval& x) {
  const RationalInterval a = x.abs();
  return a * a;
}

RationalInterval point(const Integer& z) { return RationalInterval::point(Rational(z)); }

Tri inside_unit(const RationalInterval& x) {
  if (x.lo >= -1 && x.hi <= 1) return Tri::yes;
  if (x.lo > 1 || x.hi < -1) return Tri::no;
  return Tri::undecided;
}

Tri both(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::undecided;
}

}  // namespace

const char* to_string(CylinderFamily f) {
  return f == CylinderFamily::horizontal ? "horizontal" : "vertical";
}

std::pair<CylinderData, CylinderData> base_cylinders(const Rational& x,
                                                     const Rational& y) {
  const Rational half(1, 2);
  if (abs(x) >= half || abs(y) >= half)
    throw input_error("base cylinders need |x|, |y| < 1/2, got (" + x.get_str() +
                      ", " + y.get_str() + ")");
  CylinderData h{1, 0, Rational(1 - 2 * abs(y)), 1, 0, CylinderFamily::horizontal};
  CylinderData v{0, 1, Rational(1 - 2 * abs(x)), 0, 1, CylinderFamily::vertical};
  h.area.canonicalize();
  v.area.canonicalize();
  return {h, v};
}

std::pair<CylinderData, CylinderData> base_cylinders(const TorusPoint& z) {
  return base_cylinders(z.x(), z.y());
}

CylinderData image_cylinder(const IntegerMatrix2& g, bool action_trivial,
                            const CylinderData& c) {
  if (!action_trivial)
    throw Error(ErrorKind::contract,
                "image_cylinder needs a word acting trivially on homology");
  CylinderData out = c;
  std::tie(out.vx, out.vy) = g.apply(c.vx, c.vy);
  return out;
}

StripQuality strip_quality(const RationalInterval& theta, const CylinderData& c,
                           const Rational& epsilon, mpfr_prec_t precision) {
  if (c.vx == 0 && c.vy == 0) throw input_error("cylinder holonomy is zero");
  const Rational one(1);
  const RationalInterval wedge = point(c.vy) - theta * point(c.vx);
  const RationalInterval norm2 = RationalInterval::point(one) + sq(theta);
  const RationalInterval lhs2 = sq(wedge) / norm2;
  const Rational len2 = Rational(c.vx * c.vx + c.vy * c.vy);
  const Rational scale = (one - epsilon) * c.area;
  const Rational rhs2 = scale * scale / (4 * len2);

  StripQuality out;
  out.epsilon = epsilon;
  // lhs <= rhs  <=>  lhs^2 <= rhs^2 when rhs >= 0.
  out.passes = scale < 0 ? Tri::no
                         : certainly_less_equal(lhs2, RationalInterval::point(rhs2));
  const Interval wi = Interval::from_rational_interval(wedge.abs(), precision);
  const Interval ni = sqrt(Interval::from_rational_interval(norm2, precision));
  out.lhs = wi / ni;
  out.rhs = Interval::from_rational(scale, precision) /
            (sqrt(Interval::from_rational(len2, precision)) * 2);
  return out;
}

SigmaMatrix sigma_n(const ContinuedFraction& cf, std::size_t k_n,
                    const RationalInterval& theta) {
  if (k_n % 2 != 0) throw input_error("sigma_n needs an even index");
  if (theta.lo <= 0) throw input_error("sigma_n needs theta > 0");
  const IntegerMatrix2 w = word_matrix(cf, k_n);
  const Integer& q = w.a;  // q_{k_n} (1 when k_n = 0)
  const RationalInterval inv_theta = RationalInterval::point(Rational(1)) / theta;
  const RationalInterval qi = point(q);
  SigmaMatrix out;
  // Row 1: q (theta * w.a - w.c), q (theta * w.b - w.d).
  out.entries[0] = qi * (theta * point(w.a) - point(w.c));
  out.entries[1] = qi * (theta * point(w.b) - point(w.d));
  // Row 2: (w.c / theta) / q, (w.d / theta) / q.
  const RationalInterval inv_q = RationalInterval::point(Rational(Integer(1), q));
  out.entries[2] = inv_q * point(w.c) * inv_theta;
  out.entries[3] = inv_q * point(w.d) * inv_theta;
  Tri all = Tri::yes;
  for (const auto& e : out.entries) all = both(all, inside_unit(e));
  out.bounded = all;
  return out;
}

Tri convergent_ordering(const ContinuedFraction& cf, std::size_t k,
                        const RationalInterval& theta) {
  if (k < 1) throw input_error("convergent_ordering needs k >= 1");
  const auto conv = convergents(cf, k);
  const Integer& qk = conv[k - 1].q;
  const Integer& pk = conv[k - 1].p;
  const Integer pk1 = k >= 2 ? conv[k - 2].p : Integer(1);
  const Rational lower(pk1, qk), upper(pk, qk);
  if (!(0 < lower && lower < upper)) return Tri::no;
  return certainly_less(RationalInterval::point(upper), theta);
}

Tri vertical_ratio_bound(const ContinuedFraction& cf, std::size_t k,
                         const RationalInterval& theta) {
  if (k < 2) throw input_error("vertical_ratio_bound needs k >= 2");
  const auto conv = convergents(cf, k);
  const Integer& q = conv[k - 2].q;
  const Integer& p = conv[k - 2].p;
  // ratio^2 = (q^2 + p^2) / (q^2 (1 + theta^2)) < 4.
  const RationalInterval num = RationalInterval::point(Rational(q * q + p * p));
  const RationalInterval den =
      point(q * q) * (RationalInterval::point(Rational(1)) + sq(theta));
  return certainly_less(num / den, RationalInterval::point(Rational(4)));
}

bool no_drift_check(const TorusPoint& z) {
  (void)z;
  // gamma_1 = h-loop in square 1 minus h-loop in square 2, gamma_2 likewise
  // with vertical loops. Each pair of loops has the same holonomy.
  const std::array<Integer, 2> loop_h{1, 0}, loop_v{0, 1};
  const std::array<Integer, 2> g1{loop_h[0] - loop_h[0], loop_h[1] - loop_h[1]};
  const std::array<Integer, 2> g2{loop_v[0] - loop_v[0], loop_v[1] - loop_v[1]};
  return g1[0] == 0 && g1[1] == 0 && g2[0] == 0 && g2[1] == 0;
}

}  // namespace eaton
