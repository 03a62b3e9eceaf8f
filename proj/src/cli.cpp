#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cr3kit/cli.hpp"
#include "cr3kit/curvature.hpp"
#include "cr3kit/deform.hpp"
#include "cr3kit/sweep.hpp"

namespace cr3kit::cli {
namespace {

struct Common {
  std::string model;
  std::string config;
  std::string connection;
  int grid = 16;
  double tol = 0.0;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  bool timing = false;
};

struct DeformFlags {
  std::string kind;
  double c = 0.0;
  std::string f;
  std::string sigma;
  bool holder = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model, "catalog tag: flat, round, hyperbolic, perturbed, custom:<u>");
  sub->add_option("--config", c.config, "JSON or TOML model file");
  sub->add_option("--connection", c.connection, "connection 1-form, e.g. \"-y*dx + x*dy\"");
  sub->add_option("--grid", c.grid, "grid resolution per axis")->check(CLI::Range(1, 4096));
  sub->add_option("--tol", c.tol, "override every tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "seed for random points and function corpora");
  sub->add_option("--out", c.out_path, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timing", c.timing, "add wall_time_ms to the report");
}

json point_json(Point p) { return {{"x", p.x}, {"y", p.y}, {"t", p.t}}; }

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json error_json(const std::exception& e) {
  json j = {{"message", e.what()}, {"type", "Error"}};
  if (auto* d = dynamic_cast<const ContactDegenerate*>(&e)) {
    j["type"] = "ContactDegenerate";
    j["point"] = point_json(d->worst());
    j["value"] = d->volume();
  } else if (auto* n = dynamic_cast<const NonPositive*>(&e)) {
    j["type"] = "NonPositive";
    j["point"] = point_json(n->where());
    j["value"] = n->value();
  } else if (auto* r = dynamic_cast<const ReductionInvalid*>(&e)) {
    j["type"] = "ReductionInvalid";
    j["point"] = point_json(r->where());
    j["value"] = r->defect();
  } else if (dynamic_cast<const NonCompactCell*>(&e)) {
    j["type"] = "NonCompactCell";
  } else if (auto* dom = dynamic_cast<const DomainError*>(&e)) {
    j["type"] = "DomainError";
    j["value"] = dom->value();
  } else if (dynamic_cast<const DegenerateJet*>(&e)) {
    j["type"] = "DegenerateJet";
  }
  return j;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const Check& c : checks) arr.push_back(to_json(c));
  return arr;
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::string s = "name,max_defect,tolerance,pass\n";
  for (const Check& c : checks) {
    s += c.name + "," + number(c.max_defect) + "," + number(c.tolerance) + "," +
         (c.pass ? "true" : "false") + "\n";
  }
  return s;
}

std::vector<Point> parse_points(const std::string& text) {
  std::vector<Point> pts;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    double v[3] = {0, 0, 0};
    std::stringstream one(item);
    std::string tok;
    int n = 0;
    while (std::getline(one, tok, ',')) {
      if (n >= 3) throw ConfigError("point '" + item + "' has more than 3 coordinates");
      try {
        v[n++] = std::stod(tok);
      } catch (const std::exception&) {
        throw ConfigError("bad coordinate '" + tok + "'");
      }
    }
    if (n < 2) throw ConfigError("point '" + item + "' needs at least x,y");
    pts.push_back({v[0], v[1], v[2]});
  }
  return pts;
}

class Runner {
 public:
  Runner(const Common& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {}

  // Model construction; configuration problems surface as exit code 2.
  int prepare() {
    try {
      if (!c_.config.empty()) cfg_ = config_from_json(load_config_file(c_.config));
      if (!c_.model.empty()) cfg_.model = c_.model;
      if (!c_.connection.empty()) {
        cfg_.connection = c_.connection;
        cfg_.a.reset();
      }
      chart_ = build_chart(cfg_);
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return 2;
    }
    opt_.grid = c_.grid;
    opt_.seed = c_.seed;
    if (c_.tol > 0.0) opt_.tol = c_.tol;
    opt_.tolerances = cfg_.tolerances;
    start_ = std::chrono::steady_clock::now();
    return 0;
  }

  json header(const std::string& command) const {
    json j = {{"schema", 1}, {"command", command}, {"model", chart_.name}, {"grid", c_.grid},
              {"seed", c_.seed}};
    return j;
  }

  int emit(json report, bool pass, const std::string& csv = "") {
    if (c_.timing) {
      const auto dt = std::chrono::steady_clock::now() - start_;
      report["wall_time_ms"] = std::chrono::duration<double, std::milli>(dt).count();
    }
    const std::string text = c_.format == "csv" && !csv.empty() ? csv : report.dump(2) + "\n";
    if (c_.out_path.empty()) {
      out_ << text;
    } else {
      std::ofstream f(c_.out_path);
      if (!f || !(f << text)) {
        err_ << "error: cannot write '" << c_.out_path << "'\n";
        return 2;
      }
    }
    return pass ? 0 : 1;
  }

  int fail(const std::string& command, const std::exception& e) {
    json report = header(command);
    report["error"] = error_json(e);
    report["pass"] = false;
    c_.format = "json";
    return emit(report, false);
  }

  int verify(const std::string& suite) {
    std::vector<Check> checks;
    try {
      checks = run_suite(chart_, suite, opt_);
    } catch (const ConfigError& e) {
      err_ << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      return fail("verify", e);
    }
    json report = header("verify");
    report["suite"] = suite;
    report["points"] = c_.grid * c_.grid * 4;
    report["checks"] = checks_json(checks);
    const bool pass = all_pass(checks);
    report["pass"] = pass;
    return emit(report, pass, checks_csv(checks));
  }

  int curvature(const std::string& points_text) {
    std::vector<Point> points;
    try {
      points = points_text.empty() ? grid_points(chart_.base.sample_region, c_.grid, 1, chart_.fiber_len)
                                   : parse_points(points_text);
    } catch (const ConfigError& e) {
      err_ << "error: " << e.what() << "\n";
      return 2;
    }
    struct Row {
      CurvatureReport r;
      double phi_max = 0.0;
    };
    std::vector<Row> rows;
    try {
      const SasakianStructure s = structure_of(chart_);
      rows = sweep_parallel<Row>(points, [&s](Point p) {
        check_in_domain(s.base, p);
        Row row{curvature_report(s, p), 0.0};
        const LocalGeometry g = LocalGeometry::at(s.frame(p));
        for (int n = 0; n < 8; ++n) {
          row.phi_max = std::max(row.phi_max, std::abs(tanaka_phi(g, q_direction(n, 8))));
        }
        return row;
      });
    } catch (const std::exception& e) {
      return fail("curvature", e);
    }
    json report = header("curvature");
    json arr = json::array();
    std::string csv = "x,y,t,K_base,k_tanaka,sec_Q,phi_max\n";
    for (const Row& row : rows) {
      const CurvatureReport& r = row.r;
      arr.push_back({{"K_base", r.K_base},
                     {"k_tanaka", r.k_tanaka},
                     {"sec_Q", r.sec_Q},
                     {"phi_T_component", r.phi_T_component},
                     {"box_k_max", r.box_k_max},
                     {"phi_max", row.phi_max},
                     {"point", point_json(r.point)}});
      csv += number(r.point.x) + "," + number(r.point.y) + "," + number(r.point.t) + "," +
             number(r.K_base) + "," + number(r.k_tanaka) + "," + number(r.sec_Q) + "," +
             number(row.phi_max) + "\n";
    }
    report["rows"] = arr;
    report["pass"] = true;
    return emit(report, true, csv);
  }

  int deform(const DeformFlags& flags) {
    DeformSpec spec;
    if (cfg_.deformation) spec = *cfg_.deformation;
    if (!flags.kind.empty()) spec.kind = flags.kind;
    if (flags.c != 0.0) spec.c = flags.c;
    if (!flags.f.empty()) spec.f = flags.f;
    if (!flags.sigma.empty()) spec.sigma = flags.sigma;
    std::optional<Field> param;
    json dj = {{"kind", spec.kind}};
    try {
      if (spec.kind == "type0") {
        dj["c"] = spec.c;
      } else if (spec.kind == "type1") {
        if (spec.f.empty()) throw ConfigError("type1 needs --f");
        param = parse_field(spec.f);
        dj["f"] = spec.f;
      } else if (spec.kind == "type2") {
        if (spec.sigma.empty()) throw ConfigError("type2 needs --sigma");
        param = parse_field(spec.sigma);
        dj["sigma"] = spec.sigma;
      } else {
        throw ConfigError("deformation kind must be type0, type1 or type2");
      }
      if (param && !param->basic()) throw ConfigError("deformation function must not depend on t");
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return 2;
    }

    json report = header("deform");
    report["deformation"] = dj;
    std::vector<Check> checks, before, after;
    std::optional<HolderResult> holder;
    try {
      before = curvature_checks(structure_of(chart_), opt_, "before.");
      const std::vector<Point> points =
          grid_points(chart_.base.sample_region, c_.grid, 4, chart_.fiber_len);
      std::vector<double> d1(points.size()), d2(points.size()), d3(points.size()),
          d4(points.size());
      auto push = [&](const std::string& name, double tol, const std::vector<double>& v) {
        const MaxAt m = max_at(v);
        Check k;
        k.name = name;
        k.tolerance = opt_.tolerances.count(name) ? opt_.tolerances.at(name) : opt_.tol.value_or(tol);
        k.max_defect = m.value;
        k.pass = m.value <= k.tolerance;
        if (!points.empty()) k.worst = points[m.index];
        checks.push_back(k);
      };
      std::optional<Field> holder_f;
      if (spec.kind == "type0" || spec.kind == "type1") {
        const Type1Deformation d =
            spec.kind == "type0" ? deform_type0(chart_, spec.c) : reeb_deform_type1(chart_, *param);
        struct R {
          double a, b, c, d;
        };
        const auto rows = sweep_parallel<R>(points, [&](Point p) {
          return R{d.eta_of_reeb_defect(p), d.lie_defect(p), xf_sign_defect(chart_, d.f(), p),
                   d.cr_reeb_defect(p)};
        });
        for (std::size_t i = 0; i < rows.size(); ++i) {
          d1[i] = rows[i].a;
          d2[i] = rows[i].b;
          d3[i] = rows[i].c;
          d4[i] = rows[i].d;
        }
        push("cr_reeb_defect", 1e-8, d4);
        push("eta_of_reeb", 1e-8, d1);
        push("lie_eta", 1e-8, d2);
        push("xf_sign", 1e-9, d3);
        holder_f = d.f();
        after = spec.kind == "type0"
                    ? curvature_checks(structure_of(type0_closed_form(chart_, spec.c)), opt_, "after.")
                    : curvature_checks(d.structure(), opt_, "after.", false);
      } else {
        const Type2Deformation d = deform_type2(chart_, *param);
        const SasakiChart closed = d.closed_form();
        const SasakianStructure generic = d.generic_structure();
        struct R {
          double a, b, c;
        };
        const auto rows = sweep_parallel<R>(points, [&](Point p) {
          const ReebDefect rd = d.reeb_defect(p);
          const LocalGeometry g = LocalGeometry::at(adapted_frame(closed, p));
          const LocalGeometry h = LocalGeometry::at(generic.frame(p));
          const double gap = std::max({std::abs(tanaka_k_jet(h).value() - tanaka_k_jet(g).value()),
                                       std::abs(sectional_q(h) - sectional_q(g)),
                                       tw_axiom_suite(h.tw).worst()});
          return R{std::max(rd.eta, rd.deta), gap, kk_consistency(closed, p)};
        });
        for (std::size_t i = 0; i < rows.size(); ++i) {
          d1[i] = rows[i].a;
          d2[i] = rows[i].b;
          d3[i] = rows[i].c;
        }
        push("generic_frame_agreement", 1e-6, d2);
        push("kk_consistency", 1e-10, d3);
        push("reeb", 1e-8, d1);
        holder_f = Field(constant_field(1.0));
        after = curvature_checks(d.structure(), opt_, "after.");
      }
      if (flags.holder) {
        holder = holder_volume_check(chart_, *holder_f);
        Check k;
        k.name = "holder_inequality";
        k.tolerance = opt_.tol.value_or(kQuadratureTolerance);
        const double v = holder->v;
        k.max_defect = holder->holds ? 0.0 : v * v * v - holder->v_prime * v * v;
        k.pass = holder->holds;
        checks.push_back(k);
      }
    } catch (const std::exception& e) {
      return fail("deform", e);
    }
    std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    report["before"] = checks_json(before);
    report["after"] = checks_json(after);
    report["checks"] = checks_json(checks);
    if (holder) {
      report["holder"] = {{"v", holder->v},           {"v_prime", holder->v_prime},
                          {"margin", holder->margin}, {"normalization", holder->normalization},
                          {"holds", holder->holds},   {"equality", holder->equality}};
    }
    const bool pass = all_pass(after) && all_pass(checks);
    report["pass"] = pass;
    std::vector<Check> all = checks;
    all.insert(all.end(), after.begin(), after.end());
    return emit(report, pass, checks_csv(all));
  }

 private:
  Common c_;
  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  SasakiChart chart_;
  SuiteOptions opt_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sasakian and CR curvature checks on Kaluza-Klein charts", "cr3kit"};
  app.require_subcommand(1);
  Common common;
  std::string suite = "all";
  std::string points;
  DeformFlags deform;

  CLI::App* verify = app.add_subcommand("verify", "run invariant suites and report defects");
  add_common(verify, common);
  verify->add_option("--suite", suite, "frame, connection, curvature, deform or all")
      ->check(CLI::IsMember({"frame", "connection", "curvature", "deform", "all"}));

  CLI::App* curvature = app.add_subcommand("curvature", "tabulate curvature at grid or listed points");
  add_common(curvature, common);
  curvature->add_option("--points", points, "\"x,y,t;x,y,t\" instead of the grid");

  CLI::App* def = app.add_subcommand("deform", "apply a deformation and re-run the curvature checks");
  add_common(def, common);
  def->add_option("--kind", deform.kind, "type0, type1 or type2");
  def->add_option("--c", deform.c, "type0 scale")->check(CLI::PositiveNumber);
  def->add_option("--f", deform.f, "type1 function");
  def->add_option("--sigma", deform.sigma, "type2 function");
  def->add_flag("--holder", deform.holder, "run the Hoelder volume check on the compact cell");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  Runner runner(common, out, err);
  if (const int rc = runner.prepare(); rc != 0) return rc;
  if (verify->parsed()) return runner.verify(suite);
  if (curvature->parsed()) return runner.curvature(points);
  return runner.deform(deform);
}

}  // namespace cr3kit::cli
