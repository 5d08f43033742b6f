// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "eaton/eaton.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "eaton/cf_engine.hpp"
#include "eaton/cover_flow.hpp"
#include "eaton/eaton_plane.hpp"
#include "eaton/errors.hpp"
#include "eaton/hausdorff_bound.hpp"
#include "eaton/torus_homology.hpp"

struct eaton_lattice {
  eaton::Lattice2D lattice;
};

namespace {

using nlohmann::json;
using namespace eaton;

thread_local std::string g_last_error;

eaton_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return EATON_ERR_INPUT;
    case ErrorKind::infeasible: return EATON_ERR_INFEASIBLE;
    case ErrorKind::singular: return EATON_ERR_SINGULAR;
    case ErrorKind::undecided: return EATON_ERR_UNDECIDED;
    case ErrorKind::contract: return EATON_ERR_CONTRACT;
    case ErrorKind::construction: return EATON_ERR_CONSTRUCTION;
    case ErrorKind::not_found: return EATON_ERR_NOT_FOUND;
  }
  return EATON_ERR_INTERNAL;
}

template <class F>
eaton_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return EATON_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return EATON_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (!out) throw input_error("output pointer is null");
  *out = dup(j.dump(2));
}

Rational rational_arg(const char* s, const char* name) {
  if (!s) throw input_error(std::string(name) + " is required");
  return parse_rational(s);
}

json enclosure(const Interval& x) { return json::array({x.lo_double(), x.hi_double()}); }

std::vector<std::int64_t> int_array(const int64_t* p, size_t n, const char* name) {
  if (n > 0 && !p) throw input_error(std::string(name) + " is null");
  return std::vector<std::int64_t>(p, p + n);
}

mpfr_prec_t precision_arg(unsigned prec) {
  if (prec == 0) return Interval::kDefaultPrecision;
  if (prec < 64) throw input_error("precision must be at least 64 bits");
  return static_cast<mpfr_prec_t>(prec);
}

const Lattice2D& lattice_arg(const eaton_lattice* l) {
  if (!l) throw input_error("lattice handle is null");
  return l->lattice;
}

std::ofstream open_csv(const char* path) {
  std::ofstream out(path);
  if (!out) throw input_error(std::string("cannot open ") + path + " for writing");
  return out;
}

}  // namespace

extern "C" {

const char* eaton_version(void) { return "0.1.0"; }

const char* eaton_last_error(void) { return g_last_error.c_str(); }

const char* eaton_status_name(eaton_status status) {
  switch (status) {
    case EATON_OK: return "ok";
    case EATON_ERR_INPUT: return "input";
    case EATON_ERR_INFEASIBLE: return "infeasible";
    case EATON_ERR_SINGULAR: return "singular";
    case EATON_ERR_UNDECIDED: return "undecided";
    case EATON_ERR_CONTRACT: return "contract";
    case EATON_ERR_CONSTRUCTION: return "construction";
    case EATON_ERR_NOT_FOUND: return "not_found";
    case EATON_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void eaton_string_free(char* s) { std::free(s); }

eaton_status eaton_direction_json(int64_t r, int64_t s, int64_t q, const int64_t* n_seq,
                                  size_t n_len, size_t blocks, unsigned prec, char** out) {
  return guard([&] {
    const auto n = int_array(n_seq, n_len, "n_seq");
    const auto [a, d] = endpoint_ad(r, s, q);
    const ContinuedFraction cf = ergodic_cf(r, s, q, n, blocks);
    const mpfr_prec_t bits = precision_arg(prec);
    // The empty expansion [0;] is the horizontal direction.
    const Interval theta = cf.empty() ? Interval::from_int(0, bits) : direction_value(cf, bits);
    json j;
    j["a"] = a;
    j["d"] = d;
    j["cf"] = std::vector<std::int64_t>(cf.quotients().begin(), cf.quotients().end());
    j["theta"] = enclosure(theta);
    emit(out, j);
  });
}

eaton_status eaton_verify_word_json(int64_t r, int64_t s, int64_t q, int64_t m, int* passed,
                                    char** out) {
  return guard([&] {
    const VerificationReport rep = verify_g(r, s, q, m);
    auto point = [](const std::optional<TorusPoint>& p) -> json {
      if (!p) return nullptr;
      return json::array({p->x().get_str(), p->y().get_str()});
    };
    const IntegerMatrix2& mat = rep.action.matrix;
    json chain = json::array();
    for (const LetterTrace& t : rep.chain)
      chain.push_back({{"generator", t.letter.gen == Generator::h_plus ? "h+" : "h-"},
                       {"exponent", t.letter.exponent},
                       {"after", point(t.after)},
                       {"induced_exponent", t.induced_exponent}});
    json j = {{"r", rep.r}, {"s", rep.s}, {"q", rep.q}, {"m", rep.m},
              {"a", rep.a}, {"d", rep.d}, {"n", rep.n},
              {"start", point(rep.start)}, {"final", point(rep.final_point)},
              {"action", json::array({json::array({mat.a.get_str(), mat.b.get_str()}),
                                      json::array({mat.c.get_str(), mat.d.get_str()})})},
              {"fixed_point", rep.fixed_point}, {"action_trivial", rep.action_trivial},
              {"passed", rep.passed()}, {"chain", chain}};
    if (passed) *passed = rep.passed() ? 1 : 0;
    emit(out, j);
  });
}

eaton_status eaton_hausdorff_json(const int64_t* a_block, size_t a_len, const int64_t* b_block,
                                  size_t b_len, int64_t d, int64_t c, const char* target,
                                  int64_t u_max, const char* tol, char** out) {
  return guard([&] {
    IFSFamily fam{int_array(a_block, a_len, "a_block"), int_array(b_block, b_len, "b_block"),
                  d, c};
    const Rational t = target ? parse_rational(target) : Rational(1, 2);
    const Rational eps = tol ? parse_rational(tol) : Rational(1, 1000000);
    const FindUResult res = find_u(fam, t, u_max > 0 ? u_max : kDefaultUMax, eps);
    emit(out, {{"u", res.u}, {"s_u", enclosure(res.s_u)}, {"target", res.target.get_str()}});
  });
}

eaton_status eaton_lattice_from_rational(const char* a, const char* b, const char* c,
                                         const char* d, unsigned prec, eaton_lattice** out) {
  return guard([&] {
    if (!out) throw input_error("output pointer is null");
    *out = new eaton_lattice{Lattice2D::from_rational(
        rational_arg(a, "a"), rational_arg(b, "b"), rational_arg(c, "c"), rational_arg(d, "d"),
        precision_arg(prec))};
  });
}

eaton_status eaton_lattice_rotated_square(const char* angle, unsigned prec,
                                          eaton_lattice** out) {
  return guard([&] {
    if (!out) throw input_error("output pointer is null");
    *out = new eaton_lattice{
        Lattice2D::rotated_square(rational_arg(angle, "angle"), precision_arg(prec))};
  });
}

eaton_status eaton_lattice_build(const char* R, int64_t s, int64_t q, const int64_t* n_seq,
                                 size_t n_len, size_t blocks, const char* tau, const char* eps,
                                 unsigned prec, eaton_lattice** out, char** report) {
  return guard([&] {
    if (!out) throw input_error("output pointer is null");
    const auto n = int_array(n_seq, n_len, "n_seq");
    if (blocks == 0) throw input_error("the direction needs at least one block");
    const RationalInterval slope = prefix_enclosure(ergodic_cf(0, s, q, n, blocks));
    const LatticeBuild b =
        build_lattice(rational_arg(R, "R"), s, q, slope, tau ? parse_rational(tau) : Rational(0),
                      eps ? parse_rational(eps) : Rational(1, 10), precision_arg(prec));
    if (report) {
      const Lattice2D& l = b.lattice;
      *report = dup(json({{"basis", json::array({json::array({enclosure(l.a), enclosure(l.b)}),
                                                 json::array({enclosure(l.c), enclosure(l.d)})})},
                          {"t_star", enclosure(b.t_star)},
                          {"t_bound", enclosure(b.t_bound)},
                          {"slope", json::array({slope.lo.get_str(), slope.hi.get_str()})},
                          {"det", enclosure(l.det())}})
                        .dump(2));
    }
    *out = new eaton_lattice{b.lattice};
  });
}

void eaton_lattice_free(eaton_lattice* lattice) { delete lattice; }

eaton_status eaton_lattice_json(const eaton_lattice* lattice, const char* R, char** out) {
  return guard([&] {
    const Lattice2D& l = lattice_arg(lattice);
    const Rational r = rational_arg(R, "R");
    emit(out, {{"basis", json::array({json::array({enclosure(l.a), enclosure(l.b)}),
                                      json::array({enclosure(l.c), enclosure(l.d)})})},
               {"det", enclosure(l.det())},
               {"covolume_one", to_string(l.covolume_one())},
               {"R", r.get_str()},
               {"circular", to_string(admissible_circular(l, r))},
               {"flat", to_string(admissible_flat(l, r))}});
  });
}

eaton_status eaton_plane_simulate(const eaton_lattice* lattice, const char* R,
                                  eaton_lens_kind kind, const char* x, const char* y,
                                  int orientation, const char* T, unsigned max_prec,
                                  const char* csv_path, char** summary) {
  return guard([&] {
    const LensConfig cfg =
        make_lens_config(lattice_arg(lattice), rational_arg(R, "R"),
                         kind == EATON_LENS_CIRCULAR ? LensKind::circular : LensKind::flat);
    const PlaneStart start{rational_arg(x, "x"), rational_arg(y, "y"), orientation};
    const Rational horizon = rational_arg(T, "T");
    std::ofstream csv;
    std::function<void(const PlaneEvent&)> sink;
    if (csv_path) {
      csv = open_csv(csv_path);
      write_plane_csv_header(csv);
      sink = [&](const PlaneEvent& e) { write_plane_csv_row(csv, e); };
    }
    // T = 0 leaves the series empty apart from its header.
    if (horizon == 0) {
      emit(summary, {{"obstacle_hits", 0}, {"T", "0"}});
      return;
    }
    const PlaneRun run =
        simulate_plane(cfg, start, horizon, max_prec ? max_prec : 4096, sink);
    const BandWidth bw = band_width(run.points);
    emit(summary, {{"T", horizon.get_str()},
                   {"obstacle_hits", run.obstacle_hits},
                   {"final", {{"x", enclosure(run.x)},
                              {"y", enclosure(run.y)},
                              {"orientation", run.orientation}}},
                   {"bbox", {{"x", {run.x_min, run.x_max}}, {"y", {run.y_min, run.y_max}}}},
                   {"band_width", enclosure(bw.width)},
                   {"band_direction", bw.direction},
                   {"precision", run.precision}});
  });
}

eaton_status eaton_cover_simulate(const eaton_cover_params* p, const char* csv_path,
                                  char** summary) {
  return guard([&] {
    if (!p) throw input_error("parameters are null");
    const Rational zx = p->zx ? parse_rational(p->zx) : Rational(p->r, 2 * p->q);
    const Rational zy = p->zy ? parse_rational(p->zy) : Rational(p->s, 2 * p->q);
    if (!p->zx || !p->zy) check_slit_parameters(p->r, p->s, p->q);
    const SurfaceGeometry geom = make_surface(TorusPoint(zx, zy));
    SimulationOptions opts;
    opts.precision = precision_arg(p->prec);
    if (p->max_prec) opts.max_precision = p->max_prec;
    opts.sample_dt = p->sample_dt ? parse_rational(p->sample_dt) : Rational(0);
    Velocity v;
    if (p->vx && p->vy) {
      v = Velocity::exact(parse_rational(p->vx), parse_rational(p->vy));
    } else {
      const auto n = int_array(p->n_seq, p->n_len, "n_seq");
      if (p->blocks == 0) throw input_error("the direction needs at least one block");
      const RationalInterval slope = prefix_enclosure(ergodic_cf(p->r, p->s, p->q, n, p->blocks));
      v = Velocity::unit_direction(slope, opts.precision);
    }
    const CoverStart start{p->square, rational_arg(p->x, "x"), rational_arg(p->y, "y"), 0, 0};
    const Rational horizon = rational_arg(p->T, "T");
    std::ofstream csv;
    std::function<void(const EventRecord&)> sink;
    if (csv_path) {
      csv = open_csv(csv_path);
      write_cover_csv_header(csv);
      sink = [&](const EventRecord& e) { write_cover_csv_row(csv, e); };
    }
    const DiffusionStats st = simulate(geom, v, start, horizon, opts, sink);
    json samples = json::array();
    for (const DeckSample& s : st.samples)
      samples.push_back({s.time.get_d(), s.n1, s.n2});
    const CoverState& f = st.final_state;
    emit(summary, {{"T", horizon.get_str()},
                   {"events", st.events},
                   {"distinct_cells", st.distinct_cells},
                   {"n1", {{"min", st.n1_min}, {"max", st.n1_max}, {"distinct", st.n1_distinct}}},
                   {"n2", {{"min", st.n2_min}, {"max", st.n2_max}, {"distinct", st.n2_distinct}}},
                   {"final", {{"square", f.square},
                              {"x", enclosure(f.x)},
                              {"y", enclosure(f.y)},
                              {"n1", f.n1},
                              {"n2", f.n2}}},
                   {"exact", st.exact},
                   {"precision", st.precision},
                   {"samples", samples}});
  });
}

}  // extern "C"
