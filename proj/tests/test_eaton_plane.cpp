// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "eaton/cf_engine.hpp"
#include "eaton/cover_flow.hpp"
#include "eaton/eaton_plane.hpp"
#include "eaton/errors.hpp"

using namespace eaton;

namespace {

Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Lattice2D square_lattice() { return Lattice2D::from_rational(1, 0, 0, 1, 256); }

RationalInterval slope_012() {
  const std::vector<std::int64_t> n{16};
  return prefix_enclosure(ergodic_cf(0, 1, 2, n, 4));
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::input;
}

}  // namespace

TEST_CASE("circular admissibility of Z^2") {
  CHECK(admissible_circular(square_lattice(), R(49, 100)) == Tri::yes);
  CHECK(admissible_circular(square_lattice(), R(1, 2)) == Tri::yes);  // tangent discs
  CHECK(admissible_circular(square_lattice(), R(51, 100)) == Tri::no);
  // A skewed basis of Z^2 gives the same answer.
  const Lattice2D skew = Lattice2D::from_rational(1, 7, 0, 1, 256);
  CHECK(admissible_circular(skew, R(49, 100)) == Tri::yes);
  CHECK(admissible_circular(skew, R(51, 100)) == Tri::no);
}

TEST_CASE("hexagonal lattice at its packing radius") {
  // Shortest vectors have length exactly 1; R = 1/2 touches, R slightly above overlaps.
  const mpfr_prec_t p = 256;
  const Interval h = sqrt(Interval::from_int(3, p)) / Interval::from_int(2, p);
  Lattice2D hex{Interval::from_int(1, p), Interval::from_rational(R(1, 2), p),
                Interval::from_int(0, p), h};
  const Tri at = admissible_circular(hex, R(1, 2));
  CHECK((at == Tri::yes || at == Tri::undecided));
  CHECK(admissible_circular(hex, R(501, 1000)) == Tri::no);
}

TEST_CASE("flat admissibility") {
  const Lattice2D l = Lattice2D::from_rational(R(1, 2), 0, 0, 2, 256);
  CHECK(admissible_flat(l, R(3, 10)) == Tri::no);
  CHECK(admissible_flat(l, R(1, 5)) == Tri::yes);
  CHECK(admissible_circular(l, R(1, 5)) == Tri::yes);
  // Rotated square: no horizontal vectors at all.
  const Lattice2D rot = Lattice2D::rotated_square(R(3, 10), 256);
  CHECK(rot.covolume_one() == Tri::yes);
  CHECK(admissible_flat(rot, R(49, 100)) == Tri::yes);
  CHECK(kind_of([&] { make_lens_config(l, R(3, 10), LensKind::flat); }) ==
        ErrorKind::construction);
  CHECK(kind_of([&] { make_lens_config(square_lattice(), R(1, 2), LensKind::flat); }) ==
        ErrorKind::input);
}

TEST_CASE("property: circular admissibility implies flat admissibility") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(1, 40);
  std::uniform_int_distribution<long> sgn(0, 1);
  int circular = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a = R(num(rng), 20);
    const Rational b = R(num(rng) * (sgn(rng) ? 1 : -1), 20);
    const Rational c = R(num(rng) * (sgn(rng) ? 1 : -1), 40);
    const Rational d = (1 + b * c) / a;
    const Lattice2D l = Lattice2D::from_rational(a, b, c, d, 256);
    REQUIRE(l.covolume_one() == Tri::yes);
    const Rational r = R(num(rng), 100);
    if (admissible_circular(l, r) == Tri::yes) {
      ++circular;
      CHECK(admissible_flat(l, r) == Tri::yes);
    }
  }
  CHECK(circular > 20);
}

TEST_CASE("build_lattice for R = 6/25 at the (0, 1/4) slit") {
  const LatticeBuild b = build_lattice(R(6, 25), 1, 2, slope_012(), 0);
  CHECK(b.t_star.mid_double() == doctest::Approx(-0.0359).epsilon(0.02));
  CHECK(b.t_bound.mid_double() == doctest::Approx(-0.0328).epsilon(0.02));
  CHECK(certainly_less(b.t_star, b.t_bound) == Tri::yes);
  CHECK(b.lattice.covolume_one() == Tri::yes);
  CHECK(admissible_circular(b.lattice, R(6, 25)) == Tri::yes);
  // First basis vector e^t (sin, -cos).
  CHECK(b.lattice.b.mid_double() < 0);
  CHECK(kind_of([] { build_lattice(R(6, 25), 1, 2, slope_012(), R(1, 5)); }) ==
        ErrorKind::construction);
  // Slope above 1/(4q) breaks the t* bound.
  CHECK(kind_of([] { build_lattice(R(6, 25), 1, 2, RationalInterval::point(R(1, 3)), 0); }) ==
        ErrorKind::construction);
  CHECK(kind_of([] { build_lattice(R(6, 25), 2, 4, slope_012(), 0); }) == ErrorKind::input);
}

TEST_CASE("reflection at a flat lens") {
  const LensConfig cfg = make_lens_config(square_lattice(), R(1, 4), LensKind::flat);
  std::vector<PlaneEvent> ev;
  const PlaneRun run = simulate_plane(cfg, {R(1, 10), R(-1, 2), 1}, R(1), 4096,
                                      [&](const PlaneEvent& e) { ev.push_back(e); });
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].kind == PlaneEventKind::obstacle);
  CHECK(ev[0].time.mid_double() == doctest::Approx(0.5));
  CHECK(ev[0].x.mid_double() == doctest::Approx(-0.1));
  CHECK(ev[0].y.mid_double() == doctest::Approx(0.0));
  CHECK(ev[0].orientation == -1);
  CHECK(ev[0].m == 0);
  CHECK(ev[0].n == 0);
  CHECK(ev[1].kind == PlaneEventKind::end);
  CHECK(run.orientation == -1);
  CHECK(run.y.mid_double() == doctest::Approx(-0.5));
  CHECK(run.obstacle_hits == 1);

  // Missing every lens: straight line.
  const PlaneRun free = simulate_plane(cfg, {R(1, 2), R(0), 1}, R(50));
  CHECK(free.obstacle_hits == 0);
  CHECK(free.y.mid_double() == doctest::Approx(50.0));

  // Hitting the centre sends the orbit straight back.
  const PlaneRun centre = simulate_plane(cfg, {R(0), R(-1, 2), 1}, R(1));
  CHECK(centre.obstacle_hits == 1);
  CHECK(centre.x.mid_double() == doctest::Approx(0.0));
  CHECK(centre.y.mid_double() == doctest::Approx(-0.5));
}

TEST_CASE("bounce between two lenses") {
  const LensConfig cfg = make_lens_config(square_lattice(), R(1, 4), LensKind::flat);
  const PlaneRun run = simulate_plane(cfg, {R(1, 10), R(-1, 2), 1}, R(10));
  CHECK(run.obstacle_hits == 10);
  CHECK(run.x.mid_double() == doctest::Approx(0.1));
  CHECK(run.y_max <= 0.0 + 1e-12);
  CHECK(run.y_min >= -1.0 - 1e-12);
}

TEST_CASE("plane singularities and input errors") {
  const LensConfig cfg = make_lens_config(square_lattice(), R(1, 4), LensKind::flat);
  CHECK(kind_of([&] { simulate_plane(cfg, {R(1, 4), R(-1, 2), 1}, R(1)); }) ==
        ErrorKind::singular);
  CHECK(kind_of([&] { simulate_plane(cfg, {R(1, 10), R(0), 1}, R(1)); }) == ErrorKind::input);
  CHECK(kind_of([&] { simulate_plane(cfg, {R(1, 10), R(1, 2), 0}, R(1)); }) ==
        ErrorKind::input);
  CHECK(kind_of([&] { simulate_plane(cfg, {R(1, 10), R(1, 2), 1}, R(-1)); }) ==
        ErrorKind::input);
  // Tip beyond the horizon is harmless.
  CHECK_NOTHROW(simulate_plane(cfg, {R(1, 4), R(-1, 2), 1}, R(1, 4)));
}

TEST_CASE("property: the flow is an involution after reversing") {
  const LensConfig cfg =
      make_lens_config(Lattice2D::rotated_square(R(3, 10), 256), R(6, 25), LensKind::flat);
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<long> num(1, 96);
  for (int trial = 0; trial < 25; ++trial) {
    const PlaneStart s{R(num(rng), 97), R(num(rng), 89), trial % 2 ? 1 : -1};
    const Rational T = R(num(rng), 3);
    const PlaneRun fwd = simulate_plane(cfg, s, T);
    const PlaneStart back{fwd.x.mid_rational(), fwd.y.mid_rational(), -fwd.orientation};
    const PlaneRun rev = simulate_plane(cfg, back, T);
    CHECK(rev.x.mid_double() == doctest::Approx(s.x.get_d()).epsilon(1e-12));
    CHECK(rev.y.mid_double() == doctest::Approx(s.y.get_d()).epsilon(1e-12));
    CHECK(rev.orientation == -s.orientation);
    CHECK(rev.obstacle_hits == fwd.obstacle_hits);
  }
}

TEST_CASE("band width") {
  std::vector<std::pair<double, double>> line;
  for (int i = 0; i <= 10; ++i) line.emplace_back(0.5, i);
  BandWidth bw = band_width(line);
  CHECK(bw.width.hi_double() < 1e-9);
  CHECK(bw.direction == doctest::Approx(M_PI / 2));

  const std::vector<std::pair<double, double>> box{{0, 0}, {4, 0}, {4, 1}, {0, 1}, {2, 0.5}};
  bw = band_width(box);
  CHECK(bw.width.contains(Rational(1)));
  CHECK(bw.width.hi_double() < 1.0001);
  CHECK(std::fabs(bw.direction) < 1e-9);
  CHECK_THROWS_AS(band_width({}), Error);
}

TEST_CASE("plane csv") {
  std::ostringstream out;
  write_plane_csv_header(out);
  const LensConfig cfg = make_lens_config(square_lattice(), R(1, 4), LensKind::flat);
  simulate_plane(cfg, {R(1, 10), R(-1, 2), 1}, R(1), 4096,
                 [&](const PlaneEvent& e) { write_plane_csv_row(out, e); });
  const std::string s = out.str();
  CHECK(s.rfind("t,x,y,orientation,event\n", 0) == 0);
  CHECK(s.find(",down,obstacle\n") != std::string::npos);
  CHECK(s.find(",down,end\n") != std::string::npos);
}

TEST_CASE("plane and cover agree on Z^2 with a horizontal slit") {
  // Flat lenses of half-length R = s/2q on Z^2 against the cover with slit
  // endpoint (s/2q, 0): a vertical slit would lie along the flow.
  for (auto [s, q] : {std::pair<long, long>{1, 2}, {1, 3}, {3, 8}}) {
    const Rational r = R(s, 2 * q);
    const LensConfig cfg = make_lens_config(square_lattice(), r, LensKind::flat);
    const SurfaceGeometry g = make_surface(TorusPoint(r, R(0)));
    for (const Rational& x : {R(1, 10), R(-1, 9), R(2, 5), R(-9, 20)}) {
      const Rational y = R(-2, 7);
      std::vector<PlaneEvent> plane;
      simulate_plane(cfg, {x, y, 1}, R(7), 4096, [&](const PlaneEvent& e) {
        if (e.kind == PlaneEventKind::obstacle) plane.push_back(e);
      });
      std::vector<ExactEvent> cover;
      advance<Rational>(g, {1, x, y, 0, 0}, {R(0), R(1)}, R(7), [&](const ExactEvent& e) {
        if (e.kind == EventKind::slit) cover.push_back(e);
      });
      REQUIRE(plane.size() == cover.size());
      CHECK(plane.empty() == (abs(x) >= r));
      for (std::size_t i = 0; i < plane.size(); ++i) {
        CHECK(plane[i].time.contains(cover[i].time));
        CHECK(abs(plane[i].x).contains(abs(cover[i].after.x)));
      }
    }
  }
}
