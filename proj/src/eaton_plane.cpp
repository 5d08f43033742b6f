// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/eaton_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "eaton/cf_engine.hpp"
#include "eaton/cover_flow.hpp"
#include "eaton/errors.hpp"

namespace eaton {

namespace {

Error construction_error(const std::string& what) {
  return Error(ErrorKind::construction, what);
}

Interval at_precision(const Interval& x, mpfr_prec_t prec) {
  return Interval::from_bounds(x.lo_rational(), x.hi_rational(), prec);
}

Lattice2D at_precision(const Lattice2D& l, mpfr_prec_t prec) {
  return {at_precision(l.a, prec), at_precision(l.b, prec), at_precision(l.c, prec),
          at_precision(l.d, prec)};
}

double upper(const Interval& x) { return std::max(std::fabs(x.lo_double()), std::fabs(x.hi_double())); }

double lower_abs(const Interval& x) {
  if (x.contains_zero()) return 0;
  return std::min(std::fabs(x.lo_double()), std::fabs(x.hi_double()));
}

// Columns u, v of a Gauss-reduced basis, computed from the midpoints and
// applied exactly (in interval arithmetic) to the lattice.
struct Reduced {
  Interval ux, uy, vx, vy;
};

Reduced gauss_reduce(const Lattice2D& l) {
  long double u[2] = {l.a.mid_double(), l.c.mid_double()};
  long double v[2] = {l.b.mid_double(), l.d.mid_double()};
  // Integer coordinates of u and v in the original basis.
  std::int64_t U[2][2] = {{1, 0}, {0, 1}};
  auto dot = [](const long double* p, const long double* q) { return p[0] * q[0] + p[1] * q[1]; };
  for (int iter = 0; iter < 200; ++iter) {
    if (dot(u, u) > dot(v, v)) {
      std::swap(u, v);
      std::swap(U[0][0], U[0][1]);
      std::swap(U[1][0], U[1][1]);
    }
    const long double mu = std::nearbyint(dot(u, v) / dot(u, u));
    if (mu == 0) break;
    const auto k = static_cast<std::int64_t>(mu);
    v[0] -= mu * u[0];
    v[1] -= mu * u[1];
    U[0][1] -= k * U[0][0];
    U[1][1] -= k * U[1][0];
  }
  auto [ux, uy] = l.point(U[0][0], U[1][0]);
  auto [vx, vy] = l.point(U[0][1], U[1][1]);
  return {std::move(ux), std::move(uy), std::move(vx), std::move(vy)};
}

// Calls f(wx, wy) for every nonzero lattice vector that may be shorter than L.
template <class F>
void short_vectors(const Lattice2D& l, double L, F&& f) {
  const Reduced r = gauss_reduce(l);
  const Interval det = r.ux * r.vy - r.uy * r.vx;
  const double dlo = lower_abs(det);
  if (dlo <= 0) throw undecided_error("lattice determinant not separated from zero");
  const double nu = std::hypot(upper(r.ux), upper(r.uy));
  const double nv = std::hypot(upper(r.vx), upper(r.vy));
  const auto bi = static_cast<std::int64_t>(std::floor(L * nv / dlo)) + 1;
  const auto bj = static_cast<std::int64_t>(std::floor(L * nu / dlo)) + 1;
  for (std::int64_t i = -bi; i <= bi; ++i)
    for (std::int64_t j = -bj; j <= bj; ++j) {
      if (i == 0 && j == 0) continue;
      f(r.ux * i + r.vx * j, r.uy * i + r.vy * j);
    }
}

}  // namespace

Lattice2D Lattice2D::from_rational(const Rational& a, const Rational& b, const Rational& c,
                                   const Rational& d, mpfr_prec_t prec) {
  return {Interval::from_rational(a, prec), Interval::from_rational(b, prec),
          Interval::from_rational(c, prec), Interval::from_rational(d, prec)};
}

Lattice2D Lattice2D::rotated_square(const Rational& angle, mpfr_prec_t prec) {
  const Interval t = Interval::from_rational(angle, prec);
  const Interval co = cos(t), si = sin(t);
  return {co, -si, si, co};
}

Interval Lattice2D::det() const { return a * d - b * c; }

Tri Lattice2D::covolume_one() const {
  const mpfr_prec_t p = precision();
  const Interval err = abs(det() - Interval::from_int(1, p));
  const Interval tol = Interval::from_rational(Rational(1, Integer(1) << 64), p);
  return certainly_less_equal(err, tol);
}

std::pair<Interval, Interval> Lattice2D::point(std::int64_t m, std::int64_t n) const {
  return {a * static_cast<long>(m) + b * static_cast<long>(n),
          c * static_cast<long>(m) + d * static_cast<long>(n)};
}

Tri admissible_circular(const Lattice2D& lat, const Rational& R) {
  if (R <= 0) throw input_error("R must be positive");
  const mpfr_prec_t p = lat.precision();
  const Interval four_r2 = Interval::from_rational(4 * R * R, p);
  bool undecided = false;
  bool shorter = false;
  short_vectors(lat, 2 * R.get_d() * (1 + 1e-9), [&](const Interval& wx, const Interval& wy) {
    const Tri t = certainly_less(square(wx) + square(wy), four_r2);
    shorter |= t == Tri::yes;
    undecided |= t == Tri::undecided;
  });
  if (shorter) return Tri::no;
  return undecided ? Tri::undecided : Tri::yes;
}

Tri admissible_flat(const Lattice2D& lat, const Rational& R) {
  if (R <= 0) throw input_error("R must be positive");
  const mpfr_prec_t p = lat.precision();
  const Interval two_r = Interval::from_rational(2 * R, p);
  bool undecided = false;
  bool overlap = false;
  short_vectors(lat, 2 * R.get_d() * (1 + 1e-9), [&](const Interval& wx, const Interval& wy) {
    if (wy.sign() == 1 || wy.sign() == -1) return;
    const Tri t = certainly_less(abs(wx), two_r);
    if (wy.is_zero() && t == Tri::yes) {
      overlap = true;
    } else if (t != Tri::no) {
      undecided = true;
    }
  });
  if (overlap) return Tri::no;
  return undecided ? Tri::undecided : Tri::yes;
}

LatticeBuild build_lattice(const Rational& R, std::int64_t s, std::int64_t q,
                           const RationalInterval& slope, const Rational& tau,
                           const Rational& eps, mpfr_prec_t prec, mpfr_prec_t max_prec) {
  if (R <= 0 || R >= Rational(1, 2)) throw input_error("R must lie in (0, 1/2)");
  check_slit_parameters(0, s, q);
  if (s <= 0) throw input_error("s must be positive");
  if (eps <= 0) throw input_error("eps must be positive");
  if (slope.lo <= 0) throw input_error("the direction slope must be positive");
  if (abs(tau) >= eps) throw construction_error("|tau| must be below eps");
  const Rational half_ratio(s, 2 * q);

  auto attempt = [&](mpfr_prec_t p) -> std::optional<LatticeBuild> {
    const Interval one = Interval::from_int(1, p);
    const Interval m = Interval::from_rational_interval(slope, p);
    const Interval norm = sqrt(one + square(m));
    const Interval cos_t = one / norm, sin_t = m / norm;
    const Interval r = Interval::from_rational(R, p);
    const Interval z = Interval::from_rational(half_ratio, p);
    // e^{t*} = R / ((s/2q) cos theta).
    const Interval et = r * norm / z;
    const Interval t_star = log(et);
    const long fq = 4 * q;
    const Interval cos_bound =
        Interval::from_int(fq, p) / sqrt(Interval::from_int(1 + fq * fq, p));
    const Interval t_bound = log(r / (z * cos_bound));
    const Interval tau_i = Interval::from_rational(tau, p);
    const Interval eti = one / et;
    Lattice2D lat{et * sin_t, -(et * cos_t), eti * (tau_i * sin_t + cos_t),
                  eti * (sin_t - tau_i * cos_t)};

    const Tri checks[] = {certainly_less_equal(t_star, t_bound),
                          certainly_less(t_star, Interval::from_rational(eps, p)),
                          lat.covolume_one(), admissible_circular(lat, R)};
    const char* names[] = {"t* <= log(R / ((s/2q) cos(arccot 4q)))", "t* < eps",
                           "covolume one", "R-admissibility"};
    bool undecided = false;
    for (int i = 0; i < 4; ++i) {
      if (checks[i] == Tri::no)
        throw construction_error(std::string("lattice construction failed: ") + names[i] +
                                 " (t* = " + t_star.to_string(12) + ")");
      undecided |= checks[i] == Tri::undecided;
    }
    if (undecided) {
      if (p * 2 > max_prec)
        throw undecided_error("lattice construction checks undecided at " +
                              std::to_string(p) + " bits");
      return std::nullopt;
    }
    return LatticeBuild{std::move(lat), t_star, t_bound};
  };
  return *refine_precision(prec, max_prec, attempt,
                           [](const std::optional<LatticeBuild>& r) { return r.has_value(); });
}

const char* to_string(LensKind k) { return k == LensKind::flat ? "flat" : "circular"; }

LensConfig make_lens_config(Lattice2D lattice, const Rational& R, LensKind kind) {
  if (R <= 0 || R >= Rational(1, 2)) throw input_error("R must lie in (0, 1/2)");
  if (lattice.covolume_one() != Tri::yes)
    throw construction_error("lattice covolume is not certified to be one");
  const Tri ok = kind == LensKind::flat ? admissible_flat(lattice, R)
                                        : admissible_circular(lattice, R);
  if (ok != Tri::yes)
    throw construction_error(std::string("lattice is not ") +
                             (ok == Tri::no ? "" : "certified ") + "R-admissible for " +
                             to_string(kind) + " lenses");
  return {std::move(lattice), R, kind};
}

namespace {

struct Hit {
  std::int64_t m, n;
  Interval cx, cy, dist;
  bool tip = false;
};

class PlaneEngine {
 public:
  PlaneEngine(const LensConfig& cfg, mpfr_prec_t prec)
      : lat_(at_precision(cfg.lattice, prec)),
        prec_(prec),
        r_(Interval::from_rational(cfg.R, prec)),
        rd_(cfg.R.get_d()) {
    const Interval det = lat_.det();
    det_ = det.mid_double();
    // X = m a + n b: solve for the coefficient with the larger magnitude.
    solve_m_ = std::fabs(lat_.a.mid_double()) >= std::fabs(lat_.b.mid_double());
  }

  PlaneRun run(const PlaneStart& start, const Rational& T,
               const std::function<void(const PlaneEvent&)>& sink) {
    PlaneRun out;
    Interval x = Interval::from_rational(start.x, prec_);
    Interval y = Interval::from_rational(start.y, prec_);
    int o = start.orientation;
    Interval remaining = Interval::from_rational(T, prec_);
    Interval elapsed = Interval::from_int(0, prec_);
    std::optional<std::pair<std::int64_t, std::int64_t>> last;
    auto note = [&](const Interval& px, const Interval& py) {
      const double dx = px.mid_double(), dy = py.mid_double();
      out.points.emplace_back(dx, dy);
      out.x_min = std::min(out.x_min, dx);
      out.x_max = std::max(out.x_max, dx);
      out.y_min = std::min(out.y_min, dy);
      out.y_max = std::max(out.y_max, dy);
    };
    out.x_min = out.x_max = x.mid_double();
    out.y_min = out.y_max = y.mid_double();
    note(x, y);
    for (;;) {
      std::optional<Hit> hit;
      const double rem = remaining.hi_double();
      for (double window = 4;; window *= 2) {
        const double w = std::min(window, rem + 1);
        hit = next_obstacle(x, y, o, w, last);
        if (hit || w >= rem + 1) break;
      }
      if (hit) {
        const Tri within = certainly_less_equal(hit->dist, remaining);
        if (within == Tri::undecided)
          throw undecided_error("obstacle distance not separated from the end time");
        if (within == Tri::no) hit.reset();
      }
      if (hit && hit->tip) {
        const Interval off = abs(x - hit->cx);
        if (certainly_less(off, r_) == Tri::no && certainly_less(r_, off) == Tri::no)
          throw singular_error("orbit hits the tip of the obstacle at lattice point (" +
                               std::to_string(hit->m) + ", " + std::to_string(hit->n) + ")");
        throw undecided_error("cannot decide whether the orbit misses an obstacle tip");
      }
      if (!hit) {
        y = y + remaining * o;
        elapsed = elapsed + remaining;
        note(x, y);
        if (sink) sink({elapsed, x, y, o, PlaneEventKind::end, 0, 0});
        out.x = x;
        out.y = y;
        out.orientation = o;
        out.precision = prec_;
        return out;
      }
      elapsed = elapsed + hit->dist;
      remaining = remaining - hit->dist;
      x = hit->cx * 2 - x;
      y = hit->cy;
      o = -o;
      last = std::make_pair(hit->m, hit->n);
      ++out.obstacle_hits;
      note(x, y);
      if (sink) sink({elapsed, x, y, o, PlaneEventKind::obstacle, hit->m, hit->n});
    }
  }

 private:
  // First obstacle ahead within distance w, excluding `last`.
  std::optional<Hit> next_obstacle(const Interval& x, const Interval& y, int o, double w,
                                   const std::optional<std::pair<std::int64_t, std::int64_t>>& last) {
    const double xm = x.mid_double(), ym = y.mid_double();
    const double a = lat_.a.mid_double(), b = lat_.b.mid_double();
    const double c = lat_.c.mid_double(), d = lat_.d.mid_double();
    const double x0 = xm - rd_ - 1e-9, x1 = xm + rd_ + 1e-9;
    const double y0 = o > 0 ? ym - 1e-9 : ym - w - 1e-9;
    const double y1 = o > 0 ? ym + w + 1e-9 : ym + 1e-9;
    // Range of the outer coordinate over the box corners.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double X : {x0, x1})
      for (double Y : {y0, y1}) {
        const double v = solve_m_ ? (-c * X + a * Y) / det_ : (d * X - b * Y) / det_;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    std::optional<Hit> best;
    const auto outer_lo = static_cast<std::int64_t>(std::floor(lo)) - 1;
    const auto outer_hi = static_cast<std::int64_t>(std::ceil(hi)) + 1;
    for (std::int64_t k = outer_lo; k <= outer_hi; ++k) {
      // X = m a + n b with the outer coordinate fixed at k.
      const double coef = solve_m_ ? a : b;
      const double other = solve_m_ ? b : a;
      double i0 = (x0 - k * other) / coef, i1 = (x1 - k * other) / coef;
      if (i0 > i1) std::swap(i0, i1);
      const auto in_lo = static_cast<std::int64_t>(std::floor(i0)) - 1;
      const auto in_hi = static_cast<std::int64_t>(std::ceil(i1)) + 1;
      for (std::int64_t j = in_lo; j <= in_hi; ++j) {
        const std::int64_t m = solve_m_ ? j : k;
        const std::int64_t n = solve_m_ ? k : j;
        if (last && last->first == m && last->second == n) continue;
        auto [cx, cy] = lat_.point(m, n);
        const Interval dist = (cy - y) * o;
        const int ds = dist.sign();
        if (ds == -1) continue;
        const Interval off = abs(x - cx);
        const Tri inside = certainly_less(off, r_);
        const Tri outside = certainly_less(r_, off);
        if (outside == Tri::yes) continue;
        if (ds == kSignUnknown)
          throw undecided_error("obstacle height not separated from the orbit");
        if (ds == 0) {
          if (inside == Tri::no && outside == Tri::no) continue;
          throw input_error("the orbit starts on an obstacle");
        }
        if (dist.lo_double() > w + 1e-6) continue;
        const bool tip = inside != Tri::yes;
        if (!best || certainly_less(dist, best->dist) == Tri::yes) {
          best = Hit{m, n, cx, cy, dist, tip};
        } else if (certainly_less(best->dist, dist) != Tri::yes) {
          throw undecided_error("two obstacles at indistinguishable heights");
        }
      }
    }
    return best;
  }

  Lattice2D lat_;
  mpfr_prec_t prec_;
  Interval r_;
  double rd_;
  double det_ = 1;
  bool solve_m_ = true;
};

}  // namespace

PlaneRun simulate_plane(const LensConfig& cfg, const PlaneStart& start, const Rational& T,
                        mpfr_prec_t max_prec,
                        const std::function<void(const PlaneEvent&)>& on_event) {
  if (T < 0) throw input_error("T must be >= 0");
  if (start.orientation != 1 && start.orientation != -1)
    throw input_error("orientation must be +1 or -1");
  std::vector<PlaneEvent> buffer;
  auto attempt = [&](mpfr_prec_t p) -> std::optional<PlaneRun> {
    buffer.clear();
    try {
      PlaneEngine engine(cfg, p);
      std::function<void(const PlaneEvent&)> sink;
      if (on_event) sink = [&](const PlaneEvent& e) { buffer.push_back(e); };
      return engine.run(start, T, sink);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::undecided || p * 2 > max_prec) throw;
      return std::nullopt;
    }
  };
  PlaneRun run = *refine_precision(cfg.lattice.precision(), max_prec, attempt,
                                   [](const std::optional<PlaneRun>& r) { return r.has_value(); });
  if (on_event)
    for (const PlaneEvent& e : buffer) on_event(e);
  return run;
}

BandWidth band_width(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw input_error("band_width needs at least one point");
  using P = std::pair<long double, long double>;
  std::vector<P> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  long double scale = 0;
  for (const P& p : pts) scale = std::max({scale, std::fabs(p.first), std::fabs(p.second)});
  const long double fp = 1e-15L * (scale + 1);
  if (pts.size() == 1) return {Interval::from_doubles(0, static_cast<double>(fp), 64), 0};

  // Convex hull (monotone chain).
  auto cross = [](const P& o, const P& a, const P& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (const P& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  // The narrowest strip has one side through a hull edge. For collinear
  // points the hull is a doubled segment and the width is zero.
  long double best = std::numeric_limits<long double>::infinity(), best_dir = 0, best_err = fp;
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const P& p = hull[e];
    const P& q = hull[(e + 1) % hull.size()];
    const long double ex = q.first - p.first, ey = q.second - p.second;
    const long double len = std::hypot(ex, ey);
    if (len == 0) continue;
    long double w = 0;
    for (const P& r : hull) w = std::max(w, std::fabs(cross(p, q, r)) / len);
    if (w < best) {
      best = w;
      // Rounding of the cross products, the norm and the division.
      best_err = fp + 16 * std::numeric_limits<long double>::epsilon() *
                          ((scale + 1) * (scale + 1) / len + w);
      best_dir = std::atan2(ey, ex);
    }
  }
  if (best_dir < 0) best_dir += std::numbers::pi_v<long double>;
  if (best_dir >= std::numbers::pi_v<long double>) best_dir -= std::numbers::pi_v<long double>;
  return {Interval::from_doubles(static_cast<double>(std::max(0.0L, best - best_err)),
                                 static_cast<double>(best + best_err), 64),
          static_cast<double>(best_dir)};
}

void write_plane_csv_header(std::ostream& out) { out << "t,x,y,orientation,event\n"; }

void write_plane_csv_row(std::ostream& out, const PlaneEvent& e) {
  out << certified_decimal(e.time) << ',' << certified_decimal(e.x) << ','
      << certified_decimal(e.y) << ',' << (e.orientation > 0 ? "up" : "down") << ','
      << (e.kind == PlaneEventKind::obstacle ? "obstacle" : "end") << '\n';
}

}  // namespace eaton
