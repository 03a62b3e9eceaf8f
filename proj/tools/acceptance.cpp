// Runs the acceptance criteria and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cr3kit/cli.hpp"
#include "cr3kit/corpus.hpp"
#include "cr3kit/deform.hpp"
#include "cr3kit/sweep.hpp"

using namespace cr3kit;
using nlohmann::json;

namespace {

const std::vector<std::string> kCatalog = {"flat", "round", "hyperbolic"};
const std::string kSinSin = "sin(2*3.141592653589793*x)*sin(2*3.141592653589793*y)";

struct Outcome {
  bool pass = true;
  std::string detail;
};

json run(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run_cli(args, out, err);
  if (code) *code = rc;
  try {
    return json::parse(out.str());
  } catch (const json::exception&) {
    return json{{"error", {{"type", "unparsable"}, {"message", err.str()}}}};
  }
}

double defect(const json& report, const std::string& name) {
  for (const json& c : report.value("checks", json::array())) {
    if (c["name"] == name) return c["max_defect"].is_number() ? c["max_defect"].get<double>() : NAN;
  }
  return NAN;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Records the worst value of a named check across several reports.
struct Worst {
  double value = 0;
  std::string where;
  // A missing or NaN defect poisons the result.
  void add(double v, const std::string& tag) {
    if (std::isnan(value)) return;
    if (std::isnan(v) || v > value) {
      value = v;
      where = tag;
    }
  }
};

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  for (const std::string& m : kCatalog) {
    const json r = run({"verify", "--model", m, "--suite", "frame"});
    w.add(defect(r, "jet_fd_first"), m);
    w.add(defect(r, "jet_fd_second"), m);
  }
  const double t = seconds_since(t0);
  return {w.value < 1e-4 && t < 5.0,
          fmt("max relative gap %.2e (limit 1e-4), frame suites %.2f s (limit 5 s)", w.value, t) + " worst on " + w.where};
}

Outcome criterion2() {
  Worst kk, area;
  for (const std::string& m : kCatalog) {
    const json r = run({"verify", "--model", m, "--suite", "frame", "--grid", "10"});
    kk.add(defect(r, "kk_consistency"), m);
    area.add(defect(r, "area_form"), m);
  }
  return {kk.value < 1e-10 && area.value < 1e-10,
          fmt("kk defect %.2e, area form defect %.2e (limit 1e-10)", kk.value, area.value)};
}

std::vector<json> curvature_runs(double* secs) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<json> out;
  for (const char* m : {"flat", "round", "hyperbolic", "perturbed"}) {
    out.push_back(run({"verify", "--model", m, "--suite", "curvature", "--grid", "16"}));
  }
  *secs = seconds_since(t0);
  return out;
}

Outcome criterion3(const std::vector<json>& runs, double secs) {
  Worst w;
  for (const json& r : runs) w.add(defect(r, "k_plus_gauss"), r["model"]);
  return {w.value < 1e-8 && secs < 10.0,
          fmt("max |k + K| %.2e (limit 1e-8), 4 charts in %.2f s (limit 10 s)", w.value, secs)};
}

Outcome criterion4(const std::vector<json>& runs) {
  Worst w;
  for (const json& r : runs) w.add(defect(r, "sec_q_2k_plus_3"), r["model"]);
  double flat_sec = NAN;
  const json flat = run({"curvature", "--model", "flat", "--grid", "16"});
  for (const json& row : flat["rows"]) {
    const double s = row["sec_Q"].get<double>();
    if (std::isnan(flat_sec) || std::abs(s + 3) > std::abs(flat_sec + 3)) flat_sec = s;
  }
  const bool calib = std::abs(flat_sec + 3) < 1e-8;
  return {w.value < 1e-8 && calib,
          fmt("max |sec_Q + 2k + 3| %.3g (limit 1e-8), worst on ", w.value) + w.where +
              fmt("; flat sec_Q %.12f (expected -3)", flat_sec)};
}

Outcome criterion5() {
  Worst ax, tau;
  for (const std::string& m : kCatalog) {
    const json r = run({"verify", "--model", m, "--suite", "connection"});
    ax.add(defect(r, "tw_axioms"), m);
    tau.add(defect(r, "tau_tilde"), m);
  }
  return {ax.value < 1e-9 && tau.value < 1e-9,
          fmt("axiom defect %.2e, tau~ %.2e (limit 1e-9)", ax.value, tau.value)};
}

Outcome criterion6() {
  Worst w;
  for (const std::string& m : kCatalog) {
    w.add(defect(run({"verify", "--model", m, "--suite", "connection"}), "box_tw_vs_lc"), m);
  }
  return {w.value < 1e-9, fmt("max |box_TW - box_LC| %.2e (limit 1e-9), 20 f x 8 directions", w.value)};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst flat;
  for (const std::string& m : kCatalog) {
    flat.add(defect(run({"verify", "--model", m, "--suite", "curvature", "--grid", "32"}), "phi_flat"), m);
  }
  double pert = 0;
  const json p = run({"curvature", "--model", "perturbed", "--grid", "32"});
  for (const json& row : p["rows"]) pert = std::max(pert, row["phi_max"].get<double>());
  const double t = seconds_since(t0);
  return {flat.value < 1e-7 && pert > 1e-4 && t < 60.0,
          fmt("constant-curvature max|Phi| %.2e (< 1e-7), perturbed max|Phi| %.3g (> 1e-4), %.1f s (limit 60 s)",
              flat.value, pert, t)};
}

Outcome criterion8(const std::vector<json>& runs) {
  Worst w;
  for (const json& r : runs) w.add(defect(r, "phi_trace_free"), r["model"]);
  return {w.value < 1e-8, fmt("max |Phi(X,X) + Phi(JX,JX)| %.2e (limit 1e-8)", w.value)};
}

Outcome criterion9() {
  const SasakiChart flat = build_model("flat");
  const std::vector<ScalarField> corpus = random_basic_corpus(9, 20, true);
  bool ok = true;
  double min_margin = INFINITY, drift = 0;
  for (const ScalarField& f : corpus) {
    const HolderResult a = holder_volume_check(flat, f), b = holder_volume_check(flat, f);
    ok = ok && a.holds && !a.equality;
    min_margin = std::min(min_margin, a.margin);
    drift = std::max(drift, std::abs(a.margin - b.margin));
  }
  const HolderResult one = holder_volume_check(flat, parse_field("1"));
  ok = ok && one.holds && one.equality && drift <= 1e-9;
  return {ok, fmt("20 f hold, min margin %.3g, rerun drift %.1e; constant f equality %.0f", min_margin, drift,
                  one.equality ? 1.0 : 0.0)};
}

Outcome criterion10() {
  const SasakiChart flat = build_model("flat");
  const std::vector<Point> grid = grid_points(flat.base.sample_region, 16);
  double weakest = INFINITY;
  for (const ScalarField& f : random_basic_corpus(10, 50, true)) {
    const std::vector<double> d =
        sweep_parallel<double>(grid, [&](Point p) { return cr_reeb_defect(flat, f, p); });
    weakest = std::min(weakest, max_at(d).value);
  }
  const SasakiChart round = build_model("round");
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> cdist(-1.0, 1.0), extra(0.1, 2.0);
  double sphere = 0;
  const std::vector<Point> pts = random_points(round.base.sample_region, 100, 10);
  for (int n = 0; n < 5; ++n) {
    const double c = cdist(rng), a = std::abs(c) + extra(rng);
    const Field f = parse_field(std::to_string(a) + " + " + std::to_string(c) + "*(1-x^2-y^2)/(1+x^2+y^2)");
    for (const Point& p : pts) sphere = std::max(sphere, cr_reeb_defect(round, f, p));
  }
  return {weakest > 1e-6 && sphere < 1e-8,
          fmt("flat torus: smallest per-f max defect %.3g (> 1e-6); sphere family max %.2e (< 1e-8)", weakest, sphere)};
}

Outcome criterion11() {
  int code = 0;
  const json r = run({"deform", "--model", "flat", "--kind", "type2", "--sigma", "0.05*" + kSinSin}, &code);
  if (r.contains("error")) {
    return {false, "deform_type2 raised " + r["error"]["type"].get<std::string>() + ": " +
                       r["error"]["message"].get<std::string>() +
                       fmt(" (eta' ^ d eta' = %.3f at x=%.4f)", r["error"].value("value", NAN),
                           r["error"]["point"].value("x", NAN))};
  }
  Worst w;
  for (const char* name : {"after.k_plus_gauss", "after.sec_q_2k_plus_3", "after.phi_reduction"}) {
    for (const json& c : r["after"]) {
      if (c["name"] == name) w.add(c["max_defect"].get<double>(), name);
    }
  }
  return {w.value < 1e-6, fmt("worst re-check %.3g (limit 1e-6) on ", w.value) + w.where};
}

Outcome criterion12() {
  using C = std::complex<double>;
  const C w = std::polar(1.0, 2 * std::numbers::pi / 3);
  const HopfVerdict a = hopf_reeb(C(0.5, 0), C(0.5, 0));
  const HopfVerdict b = hopf_reeb(0.5 * w, 0.25 * w);
  const HopfVerdict c = hopf_reeb(std::polar(0.5, 1.0), C(0.5, 0));
  const bool ok = a.closed && a.order == 1 && b.closed && b.order == 3 && !c.closed;
  return {ok, fmt("(closed, order): (%.0f, 1) (%.0f, 3) and not closed = %.0f", a.closed ? 1.0 : 0.0,
                  b.closed ? 1.0 : 0.0, c.closed ? 0.0 : 1.0)};
}

}  // namespace

int main() {
  double secs = 0;
  const std::vector<json> curv = curvature_runs(&secs);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 jet oracle", criterion1},
      {"2 Kaluza-Klein consistency", criterion2},
      {"3 k + K = 0", [&] { return criterion3(curv, secs); }},
      {"4 sec_Q + 2k + 3 = 0", [&] { return criterion4(curv); }},
      {"5 Tanaka-Webster axioms", criterion5},
      {"6 box TW = box LC", criterion6},
      {"7 flatness", criterion7},
      {"8 Phi trace free", [&] { return criterion8(curv); }},
      {"9 Hoelder volume", criterion9},
      {"10 CR Reeb rigidity", criterion10},
      {"11 type-2 closure", criterion11},
      {"12 Hopf orbits", criterion12},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
