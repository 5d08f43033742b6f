// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "eaton/cf_engine.hpp"
#include "eaton/cover_flow.hpp"
#include "eaton/errors.hpp"

using namespace eaton;

namespace {

Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

SurfaceGeometry surface(long px, long qx, long py, long qy) {
  return make_surface(TorusPoint(R(px, qx), R(py, qy)));
}

struct Run {
  ExactCoverState end;
  std::vector<ExactEvent> events;
};

Run run(const SurfaceGeometry& g, const ExactCoverState& s, const Rational& vx,
        const Rational& vy, const Rational& t) {
  Run out;
  out.end = advance<Rational>(g, s, {vx, vy}, t,
                              [&](const ExactEvent& e) { out.events.push_back(e); });
  return out;
}

ExactCoverState at(int square, const Rational& x, const Rational& y) {
  return {square, x, y, 0, 0};
}

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return R(d(rng), den);
}

}  // namespace

TEST_CASE("make_surface") {
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  CHECK(g.sx == 0);
  CHECK(g.sy == R(1, 4));
  const SurfaceGeometry h = surface(1, 4, 0, 1);
  CHECK(h.sx == R(1, 4));
  CHECK_THROWS_AS(make_surface(TorusPoint(R(-1, 2), R(1, 4))), Error);
}

TEST_CASE("calibration loops") {
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  const Rational start = R(-1, 2) + R(1, 1000);
  for (int square : {1, 2}) {
    const int sign = square == 1 ? 1 : -1;
    auto h = run(g, at(square, start, R(2, 5)), 1, 0, 1);
    CHECK(h.end.n1 == sign);
    CHECK(h.end.n2 == 0);
    CHECK(h.end.square == square);
    CHECK(h.end.x == start);
    for (const auto& e : h.events) CHECK(e.kind != EventKind::slit);

    auto v = run(g, at(square, R(2, 5), start), 0, 1, 1);
    CHECK(v.end.n1 == 0);
    CHECK(v.end.n2 == sign);
    CHECK(v.end.y == start);
  }
}

TEST_CASE("slit crossing toggles the square at the same position") {
  const SurfaceGeometry g = surface(1, 4, 0, 1);
  // Time 1/4 from y = -3/8 stops at y = -1/8, short of the slit.
  auto short_run = run(g, at(1, R(1, 16), R(-3, 8)), 0, 1, R(1, 4));
  CHECK(short_run.events.empty());
  CHECK(short_run.end.square == 1);

  auto r = run(g, at(1, R(1, 16), R(-3, 8)), 0, 1, R(1, 2));
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].kind == EventKind::slit);
  CHECK(r.events[0].time == R(3, 8));
  CHECK(r.events[0].after.x == R(1, 16));
  CHECK(r.events[0].after.y == 0);
  CHECK(r.events[0].square_after == 2);
  CHECK(r.end.square == 2);
  CHECK(r.end.n1 == 0);
  CHECK(r.end.n2 == 0);
}

TEST_CASE("slit endpoints and runs along the slit are singular") {
  const SurfaceGeometry g = surface(1, 4, 0, 1);
  try {
    advance<Rational>(g, at(1, R(1, 4), R(-1, 4)), {0, 1}, 1);
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular);
  }
  CHECK_THROWS_AS(advance<Rational>(g, at(1, R(-3, 8), 0), {1, 0}, 1), Error);
  // Parallel to the slit but on another line: no event.
  auto r = run(g, at(1, R(-3, 8), R(1, 8)), 1, 0, R(1, 2));
  CHECK(r.events.empty());
}

TEST_CASE("corner crossing handles both edges at once") {
  const SurfaceGeometry g = surface(1, 4, 0, 1);
  auto r = run(g, at(1, R(3, 8), R(3, 8)), 1, 1, R(1, 4));
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].dn1 == 1);
  CHECK(r.events[0].dn2 == 1);
  CHECK(r.end.x == R(-3, 8));
  CHECK(r.end.y == R(-3, 8));
}

TEST_CASE("vertical direction: n2 grows linearly") {
  const SurfaceGeometry g = surface(1, 4, 0, 1);
  const DiffusionStats st = simulate(g, Velocity::exact(0, 1), {1, R(3, 8), R(1, 10)}, 50);
  CHECK(st.exact);
  CHECK(st.final_state.n1 == 0);
  CHECK(st.final_state.n2 == 50);
  CHECK(st.n1_distinct == 1);
  CHECK(st.n2_distinct == 51);
}

TEST_CASE("T = 0 gives empty statistics and a header-only CSV") {
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  std::ostringstream csv;
  write_cover_csv_header(csv);
  const DiffusionStats st =
      simulate(g, Velocity::exact(1, R(1, 3)), {1, R(1, 5), R(1, 7)}, 0, {},
               [&](const EventRecord& rec) { write_cover_csv_row(csv, rec); });
  CHECK(st.events == 0);
  CHECK(st.distinct_cells == 1);
  CHECK(csv.str() == "t,square,x,y,n1,n2,event\n");
}

TEST_CASE("CSV rows") {
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  std::ostringstream csv;
  simulate(g, Velocity::exact(1, 0), {1, R(-3, 8), R(2, 5)}, 1, {},
           [&](const EventRecord& rec) { write_cover_csv_row(csv, rec); });
  const std::string text = csv.str();
  CHECK(text.find("edge_x") != std::string::npos);
  CHECK(text.find(",1,0,edge_x") != std::string::npos);
}

TEST_CASE("property: additivity, reversibility and loop nullity on exact configurations") {
  std::mt19937_64 rng(2026);
  int additivity = 0, reversed = 0, loops = 0, slit_loops = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const long den = 2 * (2 + trial % 7);
    const long num = 1 + trial % (den / 2 - 1);
    const SurfaceGeometry g = trial % 2 ? surface(0, 1, num, den) : surface(num, den, 1, den);
    std::uniform_int_distribution<long> px(1, 96), py(1, 88);
    const Rational x = R(px(rng), 97) - R(1, 2);
    const Rational y = R(py(rng), 89) - R(1, 2);
    const Rational vx = random_rational(rng, -3, 3, 7);
    const Rational vy = random_rational(rng, -3, 3, 11);
    const Rational t1 = random_rational(rng, 0, 6, 13);
    const Rational t2 = random_rational(rng, 0, 6, 17);
    const CoverStart start{1 + trial % 2, x, y};
    try {
      CHECK(cocycle_additivity_check(g, Velocity::exact(vx, vy), start, t1, t2));
      ++additivity;
      const ExactCoverState s0{start.square, x, y, 0, 0};
      const ExactCoverState fwd = advance<Rational>(g, s0, {vx, vy}, t1 + t2);
      const ExactCoverState back = advance<Rational>(g, fwd, {-vx, -vy}, t1 + t2);
      {
        CHECK(back.square == s0.square);
        CHECK(back.x == s0.x);
        CHECK(back.y == s0.y);
        CHECK(back.n1 == 0);
        CHECK(back.n2 == 0);
        ++reversed;
      }
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::singular);
    }

    // Rectangle loop: right a, up b, left a, down b.
    const Rational a = random_rational(rng, 0, 1, 19) + R(1, 19);
    const Rational b = random_rational(rng, 0, 1, 23) + R(1, 23);
    try {
      ExactCoverState s{start.square, x, y, 0, 0};
      int slits = 0;
      auto count = [&](const ExactEvent& e) { slits += e.kind == EventKind::slit; };
      s = advance<Rational>(g, s, {1, 0}, a, count);
      s = advance<Rational>(g, s, {0, 1}, b, count);
      s = advance<Rational>(g, s, {-1, 0}, a, count);
      s = advance<Rational>(g, s, {0, -1}, b, count);
      if (slits == 0) {
        CHECK(s.n1 == 0);
        CHECK(s.n2 == 0);
        CHECK(s.square == start.square);
        ++loops;
      }
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::singular);
    }

    // Small loop around the middle of the slit: two crossings.
    const Rational mx = g.sx / 2, my = g.sy / 2;
    const Rational r = R(1, 64);
    ExactCoverState s{1, mx - r, my - r, 0, 0};
    int slits = 0;
    auto count = [&](const ExactEvent& e) { slits += e.kind == EventKind::slit; };
    s = advance<Rational>(g, s, {1, 0}, 2 * r, count);
    s = advance<Rational>(g, s, {0, 1}, 2 * r, count);
    s = advance<Rational>(g, s, {-1, 0}, 2 * r, count);
    s = advance<Rational>(g, s, {0, -1}, 2 * r, count);
    CHECK(slits == 2);
    CHECK(s.square == 1);
    CHECK(s.n1 == 0);
    CHECK(s.n2 == 0);
    ++slit_loops;
  }
  CHECK(additivity >= 90);
  CHECK(reversed >= 80);
  CHECK(loops >= 30);
  CHECK(slit_loops == 100);
}

TEST_CASE("interval engine agrees with the exact engine") {
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  const Rational vy(3, 11);
  const DiffusionStats exact = simulate(g, Velocity::exact(1, vy), {1, R(1, 5), R(1, 7)}, 40);
  const Velocity thin{RationalInterval::point(1),
                      {vy - Rational(1, Integer("1000000000000000000000000000000")),
                       vy + Rational(1, Integer("1000000000000000000000000000000"))}};
  const DiffusionStats iv = simulate(g, thin, {1, R(1, 5), R(1, 7)}, 40);
  CHECK_FALSE(iv.exact);
  CHECK(iv.final_state.n1 == exact.final_state.n1);
  CHECK(iv.final_state.n2 == exact.final_state.n2);
  CHECK(iv.final_state.square == exact.final_state.square);
  CHECK(iv.events == exact.events);
  CHECK(iv.final_state.x.contains(exact.final_state.x.mid_rational()));
}

TEST_CASE("interval run at an irrational direction and additivity") {
  const std::vector<std::int64_t> n{16};
  const ContinuedFraction cf = ergodic_cf(0, 1, 2, n, 5);
  const RationalInterval theta = prefix_enclosure(cf);
  const SurfaceGeometry g = surface(0, 1, 1, 4);
  const Velocity v{RationalInterval::point(1), theta};
  CHECK(cocycle_additivity_check(g, v, {1, R(1, 5), R(1, 7)}, 1, 2));
  SimulationOptions opts;
  opts.sample_dt = 100;
  const DiffusionStats st = simulate(g, v, {1, R(1, 5), R(1, 7)}, 1000, opts);
  CHECK(st.samples.size() == 11);
  CHECK(st.events > 1000);
  CHECK(st.n1_max >= st.n1_min);
  CHECK(st.final_state.x.width_double() < 1e-40);
}
