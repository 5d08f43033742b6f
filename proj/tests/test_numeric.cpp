// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "eaton/errors.hpp"
#include "eaton/numeric.hpp"

using namespace eaton;

TEST_CASE("parse_rational formats") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("1e5") == Rational(100000));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational(" 1 / 3 ") == Rational(1, 3));
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1e", "e5", "1/2e3", "--1"})
    CHECK_THROWS_AS(parse_rational(bad), Error);
}

TEST_CASE("interval functions enclose long double values") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1, 1000);
  for (int i = 0; i < 200; ++i) {
    const Rational q(num(rng), num(rng));
    const Interval x = Interval::from_rational(q, 128);
    const long double v = static_cast<long double>(q.get_d());
    // Tolerance for the double rounding of q itself.
    auto near = [](const Interval& e, long double want) {
      const long double slack = 1e-14L * (1 + std::fabs(want));
      return e.lo_double() <= want + slack && e.hi_double() >= want - slack;
    };
    CHECK(near(sqrt(x), std::sqrt(v)));
    CHECK(near(log(x), std::log(v)));
    CHECK(near(exp(x / Interval::from_int(100, 128)), std::exp(v / 100)));
    CHECK(near(sin(x), std::sin(v)));
    CHECK(near(cos(x), std::cos(v)));
    CHECK(x.contains(q));
    CHECK(sqrt(x).width_double() < 1e-30);
  }
}

TEST_CASE("certified comparisons") {
  const Interval a = Interval::from_rational(Rational(1, 3), 128);
  const Interval b = Interval::from_rational(Rational(1, 2), 128);
  CHECK(certainly_less(a, b) == Tri::yes);
  CHECK(certainly_less(b, a) == Tri::no);
  CHECK(certainly_less(a, a) == Tri::undecided);
  const Interval one = Interval::from_int(1, 128);
  CHECK(certainly_less(one, one) == Tri::no);
  CHECK(certainly_less_equal(one, one) == Tri::yes);
  CHECK((hull(a, b)).contains(Rational(2, 5)));
  const RationalInterval spans_zero{Rational(-1), Rational(1)};
  CHECK_THROWS_AS(RationalInterval::point(Rational(1)) / spans_zero, Error);
}

TEST_CASE("refine_precision doubles until decided") {
  int calls = 0;
  const int bits = refine_precision(
      64, 1024, [&](mpfr_prec_t p) { ++calls; return static_cast<int>(p); },
      [](int p) { return p >= 512; });
  CHECK(bits == 512);
  CHECK(calls == 4);
}
