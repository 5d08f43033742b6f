// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "eaton/numeric.hpp"

namespace eaton {

/// Lattice generated by the columns (a, c) and (b, d) of ((a, b), (c, d)).
struct Lattice2D {
  Interval a, b, c, d;

  static Lattice2D from_rational(const Rational& a, const Rational& b, const Rational& c,
                                 const Rational& d, mpfr_prec_t prec);
  /// Z^2 rotated anticlockwise by `angle` radians.
  static Lattice2D rotated_square(const Rational& angle, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return a.precision(); }
  Interval det() const;
  /// |det - 1| <= 2^-64, certified.
  Tri covolume_one() const;
  /// m (a, c) + n (b, d).
  std::pair<Interval, Interval> point(std::int64_t m, std::int64_t n) const;
};

/// Circles of radius R at the lattice points are disjoint: every nonzero
/// lattice vector has length >= 2R.
Tri admissible_circular(const Lattice2D& lat, const Rational& R);

/// Horizontal segments of length 2R at the lattice points are disjoint: no
/// nonzero lattice vector (vx, 0) has |vx| < 2R.
Tri admissible_flat(const Lattice2D& lat, const Rational& R);

struct LatticeBuild {
  Lattice2D lattice;
  Interval t_star;
  Interval t_bound;  // log(R / ((s/2q) cos(arccot 4q)))
};

/// G_{t*} h_tau r_{pi/2 - theta} Z^2 for the direction theta of (1, slope),
/// with t* = log(R / ((s/2q) cos theta)). Construction error unless t* is
/// certified below the bound and below eps, |tau| < eps, the covolume is one
/// and the lattice is R-admissible for circles.
LatticeBuild build_lattice(const Rational& R, std::int64_t s, std::int64_t q,
                           const RationalInterval& slope, const Rational& tau,
                           const Rational& eps = Rational(1, 10),
                           mpfr_prec_t prec = Interval::kDefaultPrecision,
                           mpfr_prec_t max_prec = 4096);

enum class LensKind { flat, circular };

const char* to_string(LensKind k);

struct LensConfig {
  Lattice2D lattice;
  Rational R;
  LensKind kind = LensKind::flat;
};

/// Validates 0 < R < 1/2 and the admissibility of the matching kind;
/// construction error otherwise.
LensConfig make_lens_config(Lattice2D lattice, const Rational& R, LensKind kind);

struct PlaneStart {
  Rational x, y;
  int orientation = 1;  // +1 up, -1 down
};

enum class PlaneEventKind { obstacle, end };

struct PlaneEvent {
  Interval time;
  Interval x, y;    // position after the event
  int orientation;  // after the event
  PlaneEventKind kind;
  std::int64_t m = 0, n = 0;  // lattice coordinates of the obstacle
};

struct PlaneRun {
  std::size_t obstacle_hits = 0;
  Interval x, y;
  int orientation = 1;
  /// Start, every obstacle point and the end point, as doubles.
  std::vector<std::pair<double, double>> points;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  mpfr_prec_t precision = 0;
};

/// Vertical flow through flat lenses (circular lenses act the same outside
/// the discs): at the obstacle with centre c the orbit continues from
/// 2c - p with reversed orientation. Singular error at a segment tip;
/// undecided comparisons restart at doubled precision up to max_prec.
PlaneRun simulate_plane(const LensConfig& cfg, const PlaneStart& start, const Rational& T,
                        mpfr_prec_t max_prec = 4096,
                        const std::function<void(const PlaneEvent&)>& on_event = {});

struct BandWidth {
  Interval width;
  double direction = 0;  // angle of the band direction, radians in [0, pi)
};

/// Narrowest band containing every point, found over the edges of the convex
/// hull. The enclosure covers long double rounding of the input points.
BandWidth band_width(const std::vector<std::pair<double, double>>& points);

/// CSV with header t,x,y,orientation,event.
void write_plane_csv_header(std::ostream& out);
void write_plane_csv_row(std::ostream& out, const PlaneEvent& e);

}  // namespace eaton
