// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/cover_flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <utility>

#include "eaton/errors.hpp"

namespace eaton {

namespace {

template <class Num>
struct Ops;

template <>
struct Ops<Rational> {
  static Rational make(const Rational& q, mpfr_prec_t) { return q; }
  static int sign(const Rational& x) { return sgn(x); }
};

template <>
struct Ops<Interval> {
  static Interval make(const Rational& q, mpfr_prec_t prec) {
    return Interval::from_rational(q, prec);
  }
  static int sign(const Interval& x) {
    const int s = x.sign();
    if (s == kSignUnknown)
      throw undecided_error("cannot certify the sign of " + x.to_string(12));
    return s;
  }
};

template <class Num>
class Engine {
 public:
  Engine(const SurfaceGeometry& geom, const BasicVelocity<Num>& v, mpfr_prec_t prec)
      : v_(v),
        sx_(Ops<Num>::make(geom.sx, prec)),
        sy_(Ops<Num>::make(geom.sy, prec)),
        half_(Ops<Num>::make(Rational(1, 2), prec)),
        neg_half_(Ops<Num>::make(Rational(-1, 2), prec)),
        zero_(Ops<Num>::make(Rational(0), prec)),
        one_(Ops<Num>::make(Rational(1), prec)),
        svx_(sgn_(v.vx)),
        svy_(sgn_(v.vy)),
        det_(sx_ * v.vy - v.vx * sy_),
        sdet_(sgn_(det_)) {}

  BasicCoverState<Num> run(BasicCoverState<Num> st, const Num& t, const EventSink<Num>& sink) {
    if (sgn_(t) < 0) throw input_error("advance needs t >= 0");
    Num remaining = t;
    Num elapsed = zero_;
    bool skip_slit = false;
    for (;;) {
      // Edge candidates. Rightward/upward crossings count up to and
      // including the end time; leftward/downward ones from the start time
      // but not at the end.
      std::optional<Num> tx, ty;
      if (svx_ != 0) {
        Num c = ((svx_ > 0 ? half_ : neg_half_) - st.x) / v_.vx;
        const int s = sgn_(remaining - c);
        if (svx_ > 0 ? s >= 0 : s > 0) tx = std::move(c);
      }
      if (svy_ != 0) {
        Num c = ((svy_ > 0 ? half_ : neg_half_) - st.y) / v_.vy;
        const int s = sgn_(remaining - c);
        if (svy_ > 0 ? s >= 0 : s > 0) ty = std::move(c);
      }
      bool take_x = false, take_y = false;
      if (tx && ty) {
        const int s = sgn_(*ty - *tx);
        take_x = s >= 0;
        take_y = s <= 0;
      } else {
        take_x = tx.has_value();
        take_y = ty.has_value();
      }
      const Num* t_edge = take_x ? &*tx : take_y ? &*ty : nullptr;
      const Num& horizon = t_edge ? *t_edge : remaining;

      std::optional<std::pair<Num, Num>> t_slit;
      if (!skip_slit) t_slit = slit_time(st, horizon, t_edge != nullptr, elapsed);

      if (t_slit) {
        // Place the point on the slit line directly: p + t v would count the
        // width of p twice in interval mode.
        const auto& [dt, lambda] = *t_slit;
        st.x = lambda * sx_;
        st.y = lambda * sy_;
        remaining = remaining - dt;
        elapsed = elapsed + dt;
        const int before = st.square;
        st.square = 3 - st.square;
        skip_slit = true;
        if (sink) sink({elapsed, EventKind::slit, before, st.square, 0, 0, st});
        continue;
      }
      if (!t_edge) {
        st.x = st.x + remaining * v_.vx;
        st.y = st.y + remaining * v_.vy;
        return st;
      }
      const Num dt = *t_edge;
      int dn1 = 0, dn2 = 0;
      const int orient = st.square == 1 ? 1 : -1;
      if (take_x) {
        st.x = svx_ > 0 ? neg_half_ : half_;
        dn1 = svx_ * orient;
      } else {
        st.x = st.x + dt * v_.vx;
      }
      if (take_y) {
        st.y = svy_ > 0 ? neg_half_ : half_;
        dn2 = svy_ * orient;
      } else {
        st.y = st.y + dt * v_.vy;
      }
      st.n1 += dn1;
      st.n2 += dn2;
      remaining = remaining - dt;
      elapsed = elapsed + dt;
      skip_slit = false;
      if (sink)
        sink({elapsed, take_x ? EventKind::edge_x : EventKind::edge_y, st.square, st.square,
              dn1, dn2, st});
    }
  }

 private:
  static int sgn_(const Num& x) { return Ops<Num>::sign(x); }

  // Time of a crossing of the open slit in (0, min(horizon, end)], where the
  // horizon is exclusive when it is an edge time. Returns the time and the
  // slit parameter lambda of the crossing point lambda * z.
  std::optional<std::pair<Num, Num>> slit_time(const BasicCoverState<Num>& st, const Num& horizon,
                               bool horizon_is_edge, const Num& elapsed) {
    // p + t v = lambda s.
    const Num tn = st.x * sy_ - sx_ * st.y;
    if (sdet_ == 0) {
      if (sgn_(tn) != 0) return std::nullopt;
      // Moving along the slit line: singular if the piece meets the segment.
      const Num n2 = sx_ * sx_ + sy_ * sy_;
      const Num l0 = (st.x * sx_ + st.y * sy_) / n2;
      const Num mu = (v_.vx * sx_ + v_.vy * sy_) / n2;
      const Num l1 = l0 + mu * horizon;
      const Num& lo = sgn_(l1 - l0) >= 0 ? l0 : l1;
      const Num& hi = sgn_(l1 - l0) >= 0 ? l1 : l0;
      if (sgn_(hi + one_) >= 0 && sgn_(one_ - lo) >= 0)
        throw singular_error("orbit runs along the slit (elapsed time " +
                             describe(elapsed) + ")");
      return std::nullopt;
    }
    Num t = tn / det_;
    if (sgn_(t) <= 0) return std::nullopt;
    const int s = sgn_(horizon - t);
    if (horizon_is_edge ? s <= 0 : s < 0) return std::nullopt;
    const Num lambda = (st.x * v_.vy - st.y * v_.vx) / det_;
    const int above = sgn_(lambda - one_);
    const int below = sgn_(lambda + one_);
    if (above > 0 || below < 0) return std::nullopt;
    if (above == 0 || below == 0)
      throw singular_error("orbit hits a slit endpoint (elapsed time " +
                           describe(elapsed + t) + ")");
    return std::make_pair(std::move(t), lambda);
  }

  static std::string describe(const Num& x) {
    if constexpr (std::is_same_v<Num, Rational>)
      return x.get_str();
    else
      return x.to_string(12);
  }

  BasicVelocity<Num> v_;
  Num sx_, sy_, half_, neg_half_, zero_, one_;
  int svx_, svy_;
  Num det_;
  int sdet_;
};

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

template <class Num>
BasicCoverState<Num> make_state(const CoverStart& s, mpfr_prec_t prec) {
  return {s.square, Ops<Num>::make(s.x, prec), Ops<Num>::make(s.y, prec), s.n1, s.n2};
}

void check_start(const SurfaceGeometry& geom, const CoverStart& s) {
  if (s.square != 1 && s.square != 2) throw input_error("square must be 1 or 2");
  const Rational half(1, 2);
  if (s.x < -half || s.x >= half || s.y < -half || s.y >= half)
    throw input_error("start position outside [-1/2, 1/2)^2");
  if ((s.x == geom.sx && s.y == geom.sy) || (s.x == -geom.sx && s.y == -geom.sy))
    throw singular_error("start position is a slit endpoint");
}

BasicVelocity<Interval> interval_velocity(const Velocity& v, mpfr_prec_t prec) {
  return {Interval::from_rational_interval(v.vx, prec),
          Interval::from_rational_interval(v.vy, prec)};
}

CoverState to_interval(const ExactCoverState& s, mpfr_prec_t prec) {
  return {s.square, Interval::from_rational(s.x, prec), Interval::from_rational(s.y, prec),
          s.n1, s.n2};
}

struct Collector {
  std::set<std::pair<std::int64_t, std::int64_t>> cells;
  std::set<std::int64_t> n1s, n2s;
  DiffusionStats stats;

  void visit(std::int64_t n1, std::int64_t n2) {
    cells.emplace(n1, n2);
    n1s.insert(n1);
    n2s.insert(n2);
    stats.n1_min = std::min(stats.n1_min, n1);
    stats.n1_max = std::max(stats.n1_max, n1);
    stats.n2_min = std::min(stats.n2_min, n2);
    stats.n2_max = std::max(stats.n2_max, n2);
  }
};

template <class Num>
DiffusionStats run_stats(const SurfaceGeometry& geom, const BasicVelocity<Num>& v,
                         BasicCoverState<Num> st, const Rational& T,
                         const SimulationOptions& opts, mpfr_prec_t prec,
                         std::vector<EventRecord>* buffer) {
  Collector col;
  col.stats.n1_min = col.stats.n1_max = st.n1;
  col.stats.n2_min = col.stats.n2_max = st.n2;
  col.visit(st.n1, st.n2);
  Engine<Num> engine(geom, v, prec);
  Rational done(0);
  std::size_t events = 0;
  const bool sampling = opts.sample_dt > 0;
  if (sampling) col.stats.samples.push_back({done, st.n1, st.n2});
  while (done < T) {
    Rational chunk = T - done;
    if (sampling && opts.sample_dt < chunk) chunk = opts.sample_dt;
    const Rational offset = done;
    EventSink<Num> sink = [&](const BasicEvent<Num>& e) {
      ++events;
      col.visit(e.after.n1, e.after.n2);
      if (buffer) {
        if constexpr (std::is_same_v<Num, Rational>) {
          buffer->push_back({Interval::from_rational(offset + e.time, prec), e.kind,
                             to_interval(e.after, prec)});
        } else {
          buffer->push_back(
              {Interval::from_rational(offset, prec) + e.time, e.kind, e.after});
        }
      }
    };
    try {
      st = engine.run(std::move(st), Ops<Num>::make(chunk, prec), sink);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " after time " + offset.get_str());
    }
    done += chunk;
    if (sampling) col.stats.samples.push_back({done, st.n1, st.n2});
  }
  col.stats.events = events;
  col.stats.distinct_cells = col.cells.size();
  col.stats.n1_distinct = col.n1s.size();
  col.stats.n2_distinct = col.n2s.size();
  if constexpr (std::is_same_v<Num, Rational>) {
    col.stats.final_state = to_interval(st, prec);
    col.stats.exact = true;
  } else {
    col.stats.final_state = std::move(st);
  }
  col.stats.precision = prec;
  return std::move(col.stats);
}

}  // namespace

Velocity Velocity::unit_direction(const RationalInterval& slope, mpfr_prec_t bits) {
  const Interval m = Interval::from_rational_interval(slope, bits + 16);
  const Interval inv = Interval::from_int(1, bits + 16) / sqrt(Interval::from_int(1, bits + 16) + square(m));
  const Interval vy = m * inv;
  return {{inv.lo_rational(), inv.hi_rational()}, {vy.lo_rational(), vy.hi_rational()}};
}

SurfaceGeometry make_surface(const TorusPoint& z) {
  const Rational half(1, 2);
  if (abs_q(z.x()) >= half || abs_q(z.y()) >= half)
    throw input_error("slit endpoint " + z.to_string() + " touches the domain boundary");
  return {z.x(), z.y()};
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::edge_x: return "edge_x";
    case EventKind::edge_y: return "edge_y";
    case EventKind::slit: return "slit";
    case EventKind::singularity: return "singularity";
  }
  return "?";
}

template <class Num>
BasicCoverState<Num> advance(const SurfaceGeometry& geom, const BasicCoverState<Num>& state,
                             const BasicVelocity<Num>& v, const Num& t,
                             const EventSink<Num>& sink, mpfr_prec_t prec) {
  if (state.square != 1 && state.square != 2) throw input_error("square must be 1 or 2");
  Engine<Num> engine(geom, v, prec);
  return engine.run(state, t, sink);
}

template BasicCoverState<Rational> advance(const SurfaceGeometry&,
                                           const BasicCoverState<Rational>&,
                                           const BasicVelocity<Rational>&, const Rational&,
                                           const EventSink<Rational>&, mpfr_prec_t);
template BasicCoverState<Interval> advance(const SurfaceGeometry&,
                                           const BasicCoverState<Interval>&,
                                           const BasicVelocity<Interval>&, const Interval&,
                                           const EventSink<Interval>&, mpfr_prec_t);

DiffusionStats simulate(const SurfaceGeometry& geom, const Velocity& v,
                        const CoverStart& start, const Rational& T,
                        const SimulationOptions& opts,
                        const std::function<void(const EventRecord&)>& on_event) {
  check_start(geom, start);
  if (T < 0) throw input_error("T must be >= 0");
  if (opts.sample_dt < 0) throw input_error("sample_dt must be >= 0");
  std::vector<EventRecord> buffer;
  std::vector<EventRecord>* buf = on_event ? &buffer : nullptr;
  DiffusionStats stats;
  if (v.is_exact()) {
    stats = run_stats<Rational>(geom, {v.vx.lo, v.vy.lo}, make_state<Rational>(start, 0), T,
                                opts, opts.precision, buf);
  } else {
    stats = refine_precision(
        opts.precision, opts.max_precision,
        [&](mpfr_prec_t prec) -> std::optional<DiffusionStats> {
          buffer.clear();
          try {
            return run_stats<Interval>(geom, interval_velocity(v, prec),
                                       make_state<Interval>(start, prec), T, opts, prec, buf);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::undecided || prec * 2 > opts.max_precision) throw;
            return std::nullopt;
          }
        },
        [](const std::optional<DiffusionStats>& r) { return r.has_value(); })
                .value();
  }
  if (on_event)
    for (const EventRecord& rec : buffer) on_event(rec);
  return stats;
}

bool cocycle_additivity_check(const SurfaceGeometry& geom, const Velocity& v,
                              const CoverStart& start, const Rational& t1,
                              const Rational& t2, const SimulationOptions& opts) {
  check_start(geom, start);
  if (t1 < 0 || t2 < 0) throw input_error("times must be >= 0");
  if (v.is_exact()) {
    const ExactVelocity ev{v.vx.lo, v.vy.lo};
    const ExactCoverState s0 = make_state<Rational>(start, 0);
    const ExactCoverState whole = advance<Rational>(geom, s0, ev, t1 + t2);
    const ExactCoverState mid = advance<Rational>(geom, s0, ev, t1);
    const ExactCoverState split = advance<Rational>(geom, mid, ev, t2);
    return whole.square == split.square && whole.n1 == split.n1 && whole.n2 == split.n2 &&
           whole.x == split.x && whole.y == split.y;
  }
  return refine_precision(
             opts.precision, opts.max_precision,
             [&](mpfr_prec_t prec) -> std::optional<bool> {
               try {
                 const auto iv = interval_velocity(v, prec);
                 const CoverState s0 = make_state<Interval>(start, prec);
                 const auto whole = advance<Interval>(
                     geom, s0, iv, Interval::from_rational(t1 + t2, prec), {}, prec);
                 const auto mid = advance<Interval>(
                     geom, s0, iv, Interval::from_rational(t1, prec), {}, prec);
                 const auto split = advance<Interval>(
                     geom, mid, iv, Interval::from_rational(t2, prec), {}, prec);
                 auto overlap = [](const Interval& a, const Interval& b) {
                   return certainly_less(a, b) != Tri::yes && certainly_less(b, a) != Tri::yes;
                 };
                 return whole.square == split.square && whole.n1 == split.n1 &&
                        whole.n2 == split.n2 && overlap(whole.x, split.x) &&
                        overlap(whole.y, split.y);
               } catch (const Error& e) {
                 if (e.kind() != ErrorKind::undecided || prec * 2 > opts.max_precision) throw;
                 return std::nullopt;
               }
             },
             [](const std::optional<bool>& r) { return r.has_value(); })
      .value();
}

std::string certified_decimal(const Interval& x) {
  const double w = x.width_double();
  int digits = 40;
  if (w > 0) digits = std::clamp(static_cast<int>(-std::log10(w)) + 1, 6, 40);
  const Rational mid = x.mid_rational();
  return decimal_string(mid, digits);
}

void write_cover_csv_header(std::ostream& out) { out << "t,square,x,y,n1,n2,event\n"; }

void write_cover_csv_row(std::ostream& out, const EventRecord& rec) {
  out << certified_decimal(rec.time) << ',' << rec.state.square << ','
      << certified_decimal(rec.state.x) << ',' << certified_decimal(rec.state.y) << ','
      << rec.state.n1 << ',' << rec.state.n2 << ',' << to_string(rec.kind) << '\n';
}

}  // namespace eaton
