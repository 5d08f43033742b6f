// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eaton/numeric.hpp"
#include "eaton/torus_homology.hpp"

namespace eaton {

/// M(z): two unit squares glued along the segment from z to -z, with the
/// section lines x = -1/2 and y = -1/2 carrying the deck cocycle.
struct SurfaceGeometry {
  Rational sx, sy;  // slit endpoint z; the other endpoint is -z
};

/// Input error when |x| or |y| is 1/2.
SurfaceGeometry make_surface(const TorusPoint& z);

enum class EventKind { edge_x, edge_y, slit, singularity };

const char* to_string(EventKind k);

template <class Num>
struct BasicCoverState {
  int square = 1;
  Num x, y;
  std::int64_t n1 = 0, n2 = 0;
};

/// Velocity of the flow. It need not be a unit vector: time t moves a point
/// by t * (vx, vy).
template <class Num>
struct BasicVelocity {
  Num vx, vy;
};

template <class Num>
struct BasicEvent {
  Num time;  // since the start of the advance call
  EventKind kind;
  int square_before, square_after;
  int dn1, dn2;
  BasicCoverState<Num> after;
};

using ExactCoverState = BasicCoverState<Rational>;
using CoverState = BasicCoverState<Interval>;
using ExactVelocity = BasicVelocity<Rational>;
using ExactEvent = BasicEvent<Rational>;
using CoverEvent = BasicEvent<Interval>;

template <class Num>
using EventSink = std::function<void(const BasicEvent<Num>&)>;

/// Flows `state` for time t >= 0. Crossing x = -1/2 (resp. y = -1/2) in the
/// direction of sign s adds s to n1 (resp. n2) in square 1 and -s in
/// square 2; crossing the open slit toggles the square. Singular error when
/// the orbit meets a slit endpoint or runs along the slit; undecided error
/// when an interval comparison cannot be certified. `prec` is the working
/// precision for interval numbers and ignored for exact ones.
template <class Num>
BasicCoverState<Num> advance(const SurfaceGeometry& geom, const BasicCoverState<Num>& state,
                             const BasicVelocity<Num>& v, const Num& t,
                             const EventSink<Num>& sink = {},
                             mpfr_prec_t prec = Interval::kDefaultPrecision);

/// Start state given exactly.
struct CoverStart {
  int square = 1;
  Rational x, y;
  std::int64_t n1 = 0, n2 = 0;
};

/// Velocity given by certified rational enclosures of its components. When
/// both are points the exact engine is used.
struct Velocity {
  RationalInterval vx, vy;

  static Velocity exact(const Rational& vx, const Rational& vy) {
    return {RationalInterval::point(vx), RationalInterval::point(vy)};
  }
  /// Unit vector along (1, slope), enclosed by rationals to about `bits`
  /// bits.
  static Velocity unit_direction(const RationalInterval& slope, mpfr_prec_t bits);
  bool is_exact() const { return vx.lo == vx.hi && vy.lo == vy.hi; }
  Velocity negated() const { return {-vx, -vy}; }
};

struct DeckSample {
  Rational time;
  std::int64_t n1, n2;
};

struct DiffusionStats {
  std::size_t events = 0;
  std::size_t distinct_cells = 0;
  std::int64_t n1_min = 0, n1_max = 0, n2_min = 0, n2_max = 0;
  std::size_t n1_distinct = 0, n2_distinct = 0;
  std::vector<DeckSample> samples;
  CoverState final_state;
  bool exact = false;
  mpfr_prec_t precision = 0;
};

/// One row of the trajectory export.
struct EventRecord {
  Interval time;
  EventKind kind;
  CoverState state;
};

struct SimulationOptions {
  mpfr_prec_t precision = Interval::kDefaultPrecision;
  mpfr_prec_t max_precision = 4096;
  Rational sample_dt{0};  // 0: no sampled series
};

/// Runs the flow over [0, T] and collects diffusion statistics. Undecided
/// comparisons restart the run at doubled precision up to max_precision.
/// Errors carry the elapsed time. Events are passed to `on_event` only after
/// the run succeeds.
DiffusionStats simulate(const SurfaceGeometry& geom, const Velocity& v,
                        const CoverStart& start, const Rational& T,
                        const SimulationOptions& opts = {},
                        const std::function<void(const EventRecord&)>& on_event = {});

/// Deck and square after advancing t1 + t2 equal those after t1 then t2.
bool cocycle_additivity_check(const SurfaceGeometry& geom, const Velocity& v,
                              const CoverStart& start, const Rational& t1,
                              const Rational& t2, const SimulationOptions& opts = {});

/// CSV with header t,square,x,y,n1,n2,event.
void write_cover_csv_header(std::ostream& out);
void write_cover_csv_row(std::ostream& out, const EventRecord& rec);

/// Decimal rendering of an enclosure with as many digits as its width
/// supports (at least 6, at most 40).
std::string certified_decimal(const Interval& x);

}  // namespace eaton
