// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <vector>

#include "doctest.h"
#include "eaton/cf_engine.hpp"
#include "eaton/errors.hpp"

using namespace eaton;

namespace {

// Backward evaluation of [0; a_1, ..., a_k]; independent of the forward
// recurrence used by the library.
Rational evaluate_backward(const std::vector<std::int64_t>& a, std::size_t k) {
  Rational x(0);
  for (std::size_t i = k; i-- > 0;) x = 1 / (Rational(static_cast<long>(a[i])) + x);
  x.canonicalize();
  return x;
}

std::vector<std::int64_t> random_quotients(std::mt19937_64& rng, std::size_t len,
                                           std::int64_t max_q) {
  std::uniform_int_distribution<std::int64_t> dist(1, max_q);
  std::vector<std::int64_t> out(len);
  for (auto& v : out) v = dist(rng);
  return out;
}

}  // namespace

TEST_CASE("continued fraction rejects zero quotients") {
  CHECK_THROWS_AS(ContinuedFraction({1, 0, 2}), Error);
  CHECK_NOTHROW(ContinuedFraction({1, 1, 2}));
}

TEST_CASE("convergents: small cases") {
  auto c = convergents(ContinuedFraction({2}), 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0].p == 1);
  CHECK(c[0].q == 2);

  c = convergents(ContinuedFraction({1, 1}), 2);
  CHECK(c[0].p == 1);
  CHECK(c[0].q == 1);
  CHECK(c[1].p == 1);
  CHECK(c[1].q == 2);

  c = convergents(ContinuedFraction({9, 1, 1, 10}), 4);
  std::vector<long> qs;
  for (const auto& cv : c) qs.push_back(cv.q.get_si());
  CHECK(qs == std::vector<long>{9, 10, 19, 200});
  // Frozen from backward evaluation of the truncations.
  for (std::size_t k = 1; k <= 4; ++k)
    CHECK(Rational(c[k - 1].p, c[k - 1].q) == evaluate_backward({9, 1, 1, 10}, k));

  CHECK_THROWS_AS(convergents(ContinuedFraction({1, 2}), 3), Error);
}

TEST_CASE("word_matrix: hand-multiplied products") {
  CHECK(word_matrix(ContinuedFraction({1, 1}), 2) == IntegerMatrix2{2, 1, 1, 1});
  CHECK(word_matrix(ContinuedFraction({2, 2}), 2) == IntegerMatrix2{5, 2, 2, 1});
  CHECK(word_matrix(ContinuedFraction({3, 5, 7}), 0) == IntegerMatrix2::identity());
  CHECK_THROWS_AS(word_matrix(ContinuedFraction({1, 1, 1}), 1), Error);
}

TEST_CASE("property: word matrix columns are convergent pairs") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_quotients(rng, 12, 10);
    const ContinuedFraction cf(a);
    for (std::size_t k = 2; k <= 12; k += 2) {
      const IntegerMatrix2 m = word_matrix(cf, k);
      const auto conv = convergents(cf, k);
      CHECK(m.a == conv[k - 1].q);
      CHECK(m.c == conv[k - 1].p);
      CHECK(m.b == conv[k - 2].q);
      CHECK(m.d == conv[k - 2].p);
      CHECK(m.det() == 1);
    }
  }
}

TEST_CASE("property: convergent recurrence bounds and coprimality") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_quotients(rng, 15, 20);
    const auto conv = convergents(ContinuedFraction(a), a.size());
    for (std::size_t k = 1; k <= a.size(); ++k) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), conv[k - 1].p.get_mpz_t(), conv[k - 1].q.get_mpz_t());
      CHECK(g == 1);
      CHECK(Rational(conv[k - 1].p, conv[k - 1].q) == evaluate_backward(a, k));
      if (k >= 3) {
        const Integer ak(static_cast<long>(a[k - 1]));
        CHECK(conv[k - 1].q > conv[k - 2].q);
        CHECK(ak * conv[k - 2].q < conv[k - 1].q);
        CHECK(conv[k - 1].q < (ak + 1) * conv[k - 2].q);
      }
    }
  }
}

TEST_CASE("solve_ad: frozen exhaustive-search values") {
  CHECK(solve_ad(0, 1, 2) == std::pair<std::int64_t, std::int64_t>{10, 10});
  CHECK(solve_ad(1, 1, 3) == std::pair<std::int64_t, std::int64_t>{14, 16});
  CHECK_THROWS_AS(solve_ad(0, 2, 4), Error);
  try {
    solve_ad(0, 2, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
    CHECK(std::string(e.what()) == "s,q not coprime");
  }
  CHECK_THROWS_AS(solve_ad(2, 1, 2), Error);  // |r| >= q
  CHECK_THROWS_AS(solve_ad(0, 0, 3), Error);
  CHECK_THROWS_AS(solve_ad(2, 2, 5), Error);  // both even
}

TEST_CASE("property: solve_ad is the minimal solution of both congruences") {
  for (std::int64_t q = 2; q <= 9; ++q) {
    for (std::int64_t r = -q + 1; r < q; ++r) {
      for (std::int64_t s = -q + 1; s < q; ++s) {
        if (s == 0 || std::gcd(std::abs(s), q) != 1 || (r % 2 == 0 && s % 2 == 0))
          continue;
        // Exhaustive oracle over the whole window.
        std::int64_t best_a = 0, best_d = 0;
        for (std::int64_t x = 6 * q; x > 4 * q; --x) {
          if ((((r + x * s) % (2 * q)) + 2 * q) % (2 * q) == q) best_a = x;
          if ((((x * s - r) % (2 * q)) + 2 * q) % (2 * q) == q) best_d = x;
        }
        if (best_a == 0 || best_d == 0) {
          CHECK_THROWS_AS(solve_ad(r, s, q), Error);
          continue;
        }
        const auto [a, d] = solve_ad(r, s, q);
        CHECK(a == best_a);
        CHECK(d == best_d);
      }
    }
  }
}

TEST_CASE("ergodic_cf: block pattern") {
  const std::vector<std::int64_t> n1{16};
  CHECK(ergodic_cf(0, 1, 2, n1, 1).quotients().size() == 10);
  const auto q1 = ergodic_cf(0, 1, 2, n1, 1);
  CHECK(std::vector<std::int64_t>(q1.quotients().begin(), q1.quotients().end()) ==
        std::vector<std::int64_t>{9, 1, 1, 10, 16, 9, 1, 1, 10, 16});

  const std::vector<std::int64_t> n2{24, 48};
  const auto q2 = ergodic_cf(1, 1, 3, n2, 2);
  CHECK(std::vector<std::int64_t>(q2.quotients().begin(), q2.quotients().end()) ==
        std::vector<std::int64_t>{15, 1, 1, 16, 24, 13, 1, 1, 14, 24,
                                  15, 1, 1, 16, 48, 13, 1, 1, 14, 48});

  CHECK(ergodic_cf(0, 1, 2, n1, 0).empty());
  const std::vector<std::int64_t> bad{8};
  CHECK_THROWS_AS(ergodic_cf(0, 1, 2, bad, 1), Error);
  const std::vector<std::int64_t> zero{0};
  CHECK_THROWS_AS(ergodic_cf(0, 1, 2, zero, 1), Error);
}

TEST_CASE("direction_value and prefix enclosures") {
  const Interval half = direction_value(ContinuedFraction({2}), 64);
  CHECK(half.contains(Rational(1, 2)));
  CHECK(half.width_double() <= std::ldexp(1.0, -64));

  // Golden mean (sqrt5 - 1)/2: its continued fraction is all ones. The
  // closed form is bracketed by exact rational neighbours with 30 digits.
  const ContinuedFraction golden(std::vector<std::int64_t>(20, 1));
  const Interval g = direction_value(golden, 128);
  const RationalInterval tail = prefix_enclosure(golden);
  const Rational g_lo = parse_rational("0.618033988749894848204586834365");
  const Rational g_hi = parse_rational("0.618033988749894848204586834366");
  CHECK(tail.lo <= g_lo);
  CHECK(g_hi <= tail.hi);
  // The truncated value itself is within 1/q_20^2 of the closed form.
  CHECK(std::abs(g.mid_double() - 0.6180339887498949) < 1e-8);

  const RationalInterval nine = prefix_enclosure(ContinuedFraction({9, 3, 4}));
  CHECK(nine.lo > Rational(1, 10));
  CHECK(nine.hi < Rational(1, 9));

  // Even truncations sit below every continuation, odd ones above.
  const auto a = std::vector<std::int64_t>{3, 1, 4, 1, 5, 9, 2, 6};
  const ContinuedFraction cf(a);
  const RationalInterval whole = prefix_enclosure(cf);
  for (std::size_t k = 1; k < a.size(); ++k) {
    const Rational v = cf_value(cf.prefix(k));
    if (k % 2 == 0) {
      CHECK(v < whole.lo);
    } else {
      CHECK(v > whole.hi);
    }
  }
}

TEST_CASE("property: |q_k theta - p_k| < 1/q_{k+1} on certified enclosures") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_quotients(rng, 25, 30);
    const ContinuedFraction cf(a);
    const RationalInterval theta = prefix_enclosure(cf);
    const auto conv = convergents(cf, a.size());
    for (std::size_t k = 1; k + 1 < 20; ++k) {
      const RationalInterval err =
          (theta * RationalInterval::point(Rational(conv[k - 1].q)) -
           RationalInterval::point(Rational(conv[k - 1].p)))
              .abs();
      CHECK(err.hi < Rational(1, conv[k].q));
    }
  }
}

TEST_CASE("omega identities hold as integer matrices") {
  const auto hp = IntegerMatrix2::h_plus(), hm = IntegerMatrix2::h_minus();
  const auto w = IntegerMatrix2::omega();
  CHECK(w * hp * w.inverse() == hm.inverse());
  CHECK(w * hm * w.inverse() == hp.inverse());
  CHECK(hm * hp.inverse() * hm == w.inverse());
  CHECK(hp * hm.inverse() * hp == w);
}
