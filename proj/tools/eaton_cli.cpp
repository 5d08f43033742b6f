// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

// eatonflow command-line front end. Links only the C interface.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "eaton/eaton.h"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInvalid = 2, kUndecided = 3 };

int exit_code(eaton_status s) {
  switch (s) {
    case EATON_OK: return kOk;
    case EATON_ERR_UNDECIDED: return kUndecided;
    case EATON_ERR_CONSTRUCTION:
    case EATON_ERR_NOT_FOUND: return kCheckFailed;
    default: return kInvalid;
  }
}

int fail(eaton_status s) {
  std::cerr << "error (" << eaton_status_name(s) << "): " << eaton_last_error() << '\n';
  return exit_code(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  eaton_string_free(s);
  return out;
}

int write_report(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return kOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kInvalid;
  }
  out << text << '\n';
  return kOk;
}

// out.csv with several horizons becomes out-T<horizon>.csv.
std::string csv_path_for(const std::string& base, const std::string& horizon, bool many) {
  if (base.empty() || !many) return base;
  std::string tag = horizon;
  std::replace(tag.begin(), tag.end(), '/', '_');
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + "-T" + tag;
  return base.substr(0, dot) + "-T" + tag + base.substr(dot);
}

struct Job {
  std::string horizon;
  eaton_status status = EATON_OK;
  std::string error;
  std::string summary;
};

// Runs f(job) over every horizon on up to `jobs` threads and prints the
// summaries in input order.
template <class F>
int run_horizons(const std::vector<std::string>& horizons, int jobs, F&& f) {
  std::vector<Job> work(horizons.size());
  for (std::size_t i = 0; i < horizons.size(); ++i) work[i].horizon = horizons[i];
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      char* out = nullptr;
      work[i].status = f(work[i].horizon, &out);
      if (work[i].status == EATON_OK)
        work[i].summary = take(out);
      else
        work[i].error = eaton_last_error();
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  int code = kOk;
  if (work.size() > 1) std::cout << "[\n";
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (work[i].status != EATON_OK) {
      std::cerr << "error at T=" << work[i].horizon << " ("
                << eaton_status_name(work[i].status) << "): " << work[i].error << '\n';
      code = std::max(code, exit_code(work[i].status));
      continue;
    }
    std::cout << work[i].summary << (i + 1 < work.size() ? ",\n" : "\n");
  }
  if (work.size() > 1) std::cout << "]\n";
  return code;
}

struct DirectionArgs {
  std::int64_t r = 0, s = 1, q = 2;
  std::vector<std::int64_t> n{16};
  std::size_t blocks = 1;
};

void add_direction_options(CLI::App* cmd, DirectionArgs& d, bool with_r = true) {
  if (with_r) cmd->add_option("--r", d.r, "slit endpoint numerator r in (r/2q, s/2q)");
  cmd->add_option("--s", d.s, "slit endpoint numerator s");
  cmd->add_option("--q", d.q, "q in the denominator 2q");
  cmd->add_option("--n", d.n, "block parameters n_i (multiples of 8q), cycled")->delimiter(',');
  cmd->add_option("--blocks", d.blocks, "number of ten-quotient blocks");
}

CLI::Validator positive_precision() {
  return CLI::Range(64u, 1u << 20);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ergodic directions, slit-torus covers and flat-lens flows"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(eaton_version()));

  unsigned prec = 256;
  std::string out_path;
  app.add_option("--prec", prec, "working precision in bits")
      ->check(positive_precision())
      ->capture_default_str();
  app.add_option("--out", out_path, "output path (JSON report, or CSV series for simulate)");

  // direction
  DirectionArgs dir;
  auto* direction = app.add_subcommand("direction", "ergodic direction for a rational slit");
  add_direction_options(direction, dir);

  // verify-word
  std::int64_t vm = 1;
  DirectionArgs vw;
  auto* verify = app.add_subcommand("verify-word", "check the word g_z(8qm) fixes z trivially");
  add_direction_options(verify, vw);
  verify->add_option("--m", vm, "n = 8qm");

  // hausdorff
  std::vector<std::int64_t> a_block{9, 1, 1, 10}, b_block{9, 1, 1, 10};
  std::int64_t hd = 16, hc = 0, u_max = 1000000;
  std::string target = "1/2", tol = "1/1000000";
  auto* hausdorff = app.add_subcommand("hausdorff", "search u with s_u above a target");
  hausdorff->add_option("--a", a_block, "block a")->delimiter(',')->capture_default_str();
  hausdorff->add_option("--b", b_block, "block b")->delimiter(',')->capture_default_str();
  hausdorff->add_option("--d", hd, "progression step d in D = dN + c")->capture_default_str();
  hausdorff->add_option("--c", hc, "progression offset c")->capture_default_str();
  hausdorff->add_option("--target", target, "target dimension")->capture_default_str();
  hausdorff->add_option("--u-max", u_max, "search budget")->capture_default_str();
  hausdorff->add_option("--tol", tol, "enclosure width for s_u")->capture_default_str();

  // lattice
  DirectionArgs ld;
  std::string radius = "6/25", tau = "0", eps = "1/10", rotated;
  auto* lattice = app.add_subcommand("lattice", "normalised R-admissible lattice");
  add_direction_options(lattice, ld, false);
  lattice->add_option("--R", radius, "lens radius")->capture_default_str();
  lattice->add_option("--tau", tau, "horocycle shear")->capture_default_str();
  lattice->add_option("--eps", eps, "admissibility margin")->capture_default_str();
  lattice->add_option("--rotated", rotated, "report on Z^2 rotated by this angle instead");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a flow and summarise it");
  simulate->require_subcommand(1);
  simulate->fallthrough();
  std::vector<std::string> horizons{"1000"};
  int jobs = 1;
  std::string sample_dt = "0";

  DirectionArgs cd;
  std::string zx, zy, vx, vy, cx = "1/5", cy = "1/7";
  int square = 1;
  auto* cover = simulate->add_subcommand("cover", "flow on the Z^2 cover of the slit torus");
  add_direction_options(cover, cd);
  cover->add_option("--zx", zx, "slit endpoint x (default r/2q)");
  cover->add_option("--zy", zy, "slit endpoint y (default s/2q)");
  cover->add_option("--vx", vx, "exact velocity x (with --vy)");
  cover->add_option("--vy", vy, "exact velocity y (with --vx)");
  cover->add_option("--square", square, "starting square, 1 or 2")->capture_default_str();
  cover->add_option("--x", cx, "start x")->capture_default_str();
  cover->add_option("--y", cy, "start y")->capture_default_str();
  cover->add_option("--sample-dt", sample_dt, "deck sampling interval, 0 for none");

  DirectionArgs pd;
  std::string plane_r = "6/25", plane_lattice = "rotated:3/10", px = "1/7", py = "1/11";
  std::string kind = "flat", orientation = "up", plane_tau = "0", plane_eps = "1/10";
  auto* plane = simulate->add_subcommand("plane", "vertical flow among periodic lenses");
  add_direction_options(plane, pd, false);
  plane->add_option("--R", plane_r, "lens radius")->capture_default_str();
  plane->add_option("--lattice", plane_lattice,
                    "rotated:<angle>, basis:<a>,<b>,<c>,<d> or build")
      ->capture_default_str();
  plane->add_option("--tau", plane_tau, "horocycle shear for --lattice build");
  plane->add_option("--eps", plane_eps, "admissibility margin for --lattice build");
  plane->add_option("--kind", kind, "lens kind")
      ->check(CLI::IsMember({"flat", "circular"}))
      ->capture_default_str();
  plane->add_option("--x", px, "start x")->capture_default_str();
  plane->add_option("--y", py, "start y")->capture_default_str();
  plane->add_option("--orientation", orientation, "initial orientation")
      ->check(CLI::IsMember({"up", "down"}))
      ->capture_default_str();

  for (auto* cmd : {cover, plane}) {
    cmd->add_option("--time", horizons, "time horizon(s); several run independently")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--jobs", jobs, "parallel horizons")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (direction->parsed()) {
    char* out = nullptr;
    const eaton_status s = eaton_direction_json(dir.r, dir.s, dir.q, dir.n.data(), dir.n.size(),
                                                dir.blocks, prec, &out);
    if (s != EATON_OK) return fail(s);
    return write_report(take(out), out_path);
  }

  if (verify->parsed()) {
    char* out = nullptr;
    int passed = 0;
    const eaton_status s = eaton_verify_word_json(vw.r, vw.s, vw.q, vm, &passed, &out);
    if (s != EATON_OK) return fail(s);
    const int code = write_report(take(out), out_path);
    return code != kOk ? code : (passed ? kOk : kCheckFailed);
  }

  if (hausdorff->parsed()) {
    char* out = nullptr;
    const eaton_status s =
        eaton_hausdorff_json(a_block.data(), a_block.size(), b_block.data(), b_block.size(), hd,
                             hc, target.c_str(), u_max, tol.c_str(), &out);
    if (s != EATON_OK) return fail(s);
    return write_report(take(out), out_path);
  }

  if (lattice->parsed()) {
    eaton_lattice* l = nullptr;
    char* report = nullptr;
    eaton_status s = rotated.empty()
                         ? eaton_lattice_build(radius.c_str(), ld.s, ld.q, ld.n.data(),
                                               ld.n.size(), ld.blocks, tau.c_str(), eps.c_str(),
                                               prec, &l, &report)
                         : eaton_lattice_rotated_square(rotated.c_str(), prec, &l);
    if (s != EATON_OK) return fail(s);
    char* summary = nullptr;
    s = eaton_lattice_json(l, radius.c_str(), &summary);
    eaton_lattice_free(l);
    if (s != EATON_OK) {
      eaton_string_free(report);
      return fail(s);
    }
    nlohmann::json merged = nlohmann::json::parse(take(summary));
    if (report) merged.update(nlohmann::json::parse(take(report)));
    return write_report(merged.dump(2), out_path);
  }

  const bool many = horizons.size() > 1;
  if (cover->parsed()) {
    if (vx.empty() != vy.empty()) {
      std::cerr << "error: --vx and --vy go together\n";
      return kInvalid;
    }
    return run_horizons(horizons, jobs, [&](const std::string& T, char** out) {
      const std::string csv = csv_path_for(out_path, T, many);
      eaton_cover_params p{};
      p.zx = zx.empty() ? nullptr : zx.c_str();
      p.zy = zy.empty() ? nullptr : zy.c_str();
      p.r = cd.r;
      p.s = cd.s;
      p.q = cd.q;
      p.n_seq = cd.n.data();
      p.n_len = cd.n.size();
      p.blocks = cd.blocks;
      p.vx = vx.empty() ? nullptr : vx.c_str();
      p.vy = vy.empty() ? nullptr : vy.c_str();
      p.square = square;
      p.x = cx.c_str();
      p.y = cy.c_str();
      p.T = T.c_str();
      p.sample_dt = sample_dt.c_str();
      p.prec = prec;
      p.max_prec = 4096;
      return eaton_cover_simulate(&p, csv.empty() ? nullptr : csv.c_str(), out);
    });
  }

  if (plane->parsed()) {
    eaton_lattice* l = nullptr;
    eaton_status s;
    if (plane_lattice.rfind("rotated:", 0) == 0) {
      s = eaton_lattice_rotated_square(plane_lattice.substr(8).c_str(), prec, &l);
    } else if (plane_lattice.rfind("basis:", 0) == 0) {
      std::vector<std::string> parts;
      std::string rest = plane_lattice.substr(6);
      for (std::size_t pos; (pos = rest.find(',')) != std::string::npos; rest.erase(0, pos + 1))
        parts.push_back(rest.substr(0, pos));
      parts.push_back(rest);
      if (parts.size() != 4) {
        std::cerr << "error: basis needs four entries a,b,c,d\n";
        return kInvalid;
      }
      s = eaton_lattice_from_rational(parts[0].c_str(), parts[1].c_str(), parts[2].c_str(),
                                      parts[3].c_str(), prec, &l);
    } else if (plane_lattice == "build") {
      s = eaton_lattice_build(plane_r.c_str(), pd.s, pd.q, pd.n.data(), pd.n.size(), pd.blocks,
                              plane_tau.c_str(), plane_eps.c_str(), prec, &l, nullptr);
    } else {
      std::cerr << "error: unknown lattice spec '" << plane_lattice << "'\n";
      return kInvalid;
    }
    if (s != EATON_OK) return fail(s);
    const int code = run_horizons(horizons, jobs, [&](const std::string& T, char** out) {
      const std::string csv = csv_path_for(out_path, T, many);
      return eaton_plane_simulate(l, plane_r.c_str(),
                                  kind == "flat" ? EATON_LENS_FLAT : EATON_LENS_CIRCULAR,
                                  px.c_str(), py.c_str(), orientation == "up" ? 1 : -1,
                                  T.c_str(), 4096, csv.empty() ? nullptr : csv.c_str(), out);
    });
    eaton_lattice_free(l);
    return code;
  }
  return kInvalid;
}
