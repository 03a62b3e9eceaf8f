#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "finite_diff.hpp"
#include "cr3kit/cli.hpp"
#include "cr3kit/corpus.hpp"
#include "cr3kit/curvature.hpp"
#include "cr3kit/deform.hpp"
#include "cr3kit/sweep.hpp"

namespace cr3kit::cli {
namespace {

constexpr double kJetTol = 1e-8;
constexpr double kPipelineTol = 1e-6;
constexpr double kAxiomTol = 1e-9;
constexpr double kFdTol = 1e-4;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kFiberPoints = 4;

const char* const kSigmaSmall = "0.01*sin(6.283185307179586*x)*sin(6.283185307179586*y)";
const char* const kFType1 = "2 + 0.25*sin(6.283185307179586*x)*cos(6.283185307179586*y)";

struct Spec {
  std::string name;
  double tol;
};

double resolve(const SuiteOptions& opt, const std::string& name, double fallback) {
  if (auto it = opt.tolerances.find(name); it != opt.tolerances.end()) return it->second;
  return opt.tol ? *opt.tol : fallback;
}

Check make_check(const SuiteOptions& opt, const std::string& name, double tol, double defect,
                 std::optional<Point> worst = std::nullopt) {
  Check c;
  c.name = name;
  c.tolerance = resolve(opt, name, tol);
  c.max_defect = defect;
  c.pass = defect <= c.tolerance;  // NaN fails
  c.worst = worst;
  return c;
}

using Kernel = std::function<std::vector<double>(Point)>;

void sweep_checks(const std::vector<Point>& points, const std::vector<Spec>& specs,
                  const Kernel& kernel, const SuiteOptions& opt, std::vector<Check>& out) {
  const auto rows = sweep_parallel<std::vector<double>>(points, kernel);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    std::vector<double> column(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i][k];
    const MaxAt m = max_at(column);
    std::optional<Point> where;
    if (!points.empty()) where = points[m.index];
    out.push_back(make_check(opt, specs[k].name, specs[k].tol, m.value, where));
  }
}

std::vector<Point> suite_points(const SurfaceChart& base, double fiber_len, int grid) {
  return grid_points(base.sample_region, grid, kFiberPoints, fiber_len);
}

Vec3 coords(const VecJ& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

double vmax(const FrameVec& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

void frame_suite(const SasakiChart& c, const SuiteOptions& opt, std::vector<Check>& out) {
  const std::vector<Spec> specs = {
      {"area_form", kJetTol},        {"eta_frame", kJetTol},   {"kk_consistency", 1e-10},
      {"levi_hermitian", kJetTol},   {"lie_t_metric", kJetTol}, {"metric_assembly", kJetTol},
      {"nijenhuis", kJetTol},        {"orthonormal_frame", kJetTol}, {"reeb", kJetTol},
  };
  auto kernel = [&c](Point p) {
    const AdaptedFrame fr = adapted_frame(c, p);
    const FormJ eta = contact_form(c, p);
    double eta_frame = std::abs(pair(eta, fr.e[0]).value() - 1.0);
    for (int i = 1; i < 3; ++i) eta_frame = std::max(eta_frame, std::abs(pair(eta, fr.e[i]).value()));

    const MetricMatrix gm = metric_matrix(c, p);
    std::vector<Vec3> vs = {coords(fr.e[0]), coords(fr.e[1]), coords(fr.e[2])};
    double ortho = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ortho = std::max(ortho, std::abs(metric_eval(gm, vs[i], vs[j]) - (i == j ? 1.0 : 0.0)));
      }
    }
    vs.push_back({1, 0, 0});
    vs.push_back({0.3, -0.7, 0.2});
    vs.push_back({-0.4, 0.1, 0.9});
    double assembly = 0.0;
    for (const Vec3& v : vs) {
      for (const Vec3& w : vs) {
        assembly = std::max(assembly, std::abs(metric_eval(gm, v, w) - metric_assembled(fr, v, w)));
      }
    }

    double levi = std::abs(levi_form(fr, {0, 1, 0}, {0, 0, 1}).levi + 2.0);
    double nij = vmax(nijenhuis(fr, {0, 1, 0}, {0, 0, 1}));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const FrameVec x = q_direction(a, 4), y = q_direction(b, 4);
        const LeviForm lf = levi_form(fr, x, y);
        const LeviForm lj = levi_form(fr, apply_j(x), apply_j(y));
        const double dot = x[1] * y[1] + x[2] * y[2];
        levi = std::max({levi, std::abs(lf.hermitian - dot), std::abs(lj.levi - lf.levi)});
        nij = std::max(nij, vmax(nijenhuis(fr, x, y)));
      }
    }
    const ReebDefect rd = reeb_check(fr, fr.e[0]);
    return std::vector<double>{area_form_defect(c, p), eta_frame, kk_consistency(c, p), levi,
                               lie_t_metric_defect(c, p), assembly, nij, ortho,
                               std::max(rd.eta, rd.deta)};
  };
  sweep_checks(suite_points(c.base, c.fiber_len, opt.grid), specs, kernel, opt, out);

  // Jet partials against central differences at random points.
  const std::vector<Point> pts = random_points(c.base.sample_region, 100, opt.seed, c.fiber_len);
  const std::vector<Field> fields = {c.base.u, c.conn.ax, c.conn.ay};
  const std::vector<MultiIndex> first = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const std::vector<MultiIndex> second = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                          {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  auto gaps = [&](const std::vector<MultiIndex>& ms) {
    return [&, ms](Point p) {
      double worst = 0.0;
      for (const Field& f : fields) {
        const Jet j = f.jet(p);
        for (const MultiIndex& m : ms) {
          worst = std::max(worst, oracle::relative_gap(j.partial(m), oracle::finite_diff(f, p, m)));
        }
      }
      return std::vector<double>{worst};
    };
  };
  sweep_checks(pts, {{"jet_fd_first", kFdTol}}, gaps(first), opt, out);
  sweep_checks(pts, {{"jet_fd_second", kFdTol}}, gaps(second), opt, out);
}

void connection_suite(const SasakiChart& c, const SuiteOptions& opt, std::vector<Check>& out) {
  const std::vector<ScalarField> corpus = random_basic_corpus(opt.seed, 20, false);
  const std::vector<Spec> specs = {{"box_tw_vs_lc", kAxiomTol}, {"lc_metric", kJetTol},
                                   {"lc_torsion_free", kJetTol}, {"tau_tilde", kAxiomTol},
                                   {"tw_axioms", kAxiomTol}};
  auto kernel = [&](Point p) {
    const FrameConnection lc = levi_civita(c, p);
    const FrameConnection tw = tanaka_webster(lc);
    const TwAxiomReport rep = tw_axiom_suite(tw);
    double metric = 0.0, torsion = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) metric = std::max(metric, std::abs(lc.gamma(i, j, k) + lc.gamma(i, k, j)));
        FrameVec ei{}, ej{};
        ei[i] = 1.0;
        ej[j] = 1.0;
        torsion = std::max(torsion, vmax(lc.torsion(ei, ej)));
      }
    }
    double box = 0.0;
    for (const ScalarField& f : corpus) {
      const Jet fj = f.jet(p);
      for (int n = 0; n < 8; ++n) {
        const FrameVec x = q_direction(n, 8);
        box = std::max(box, std::abs(box_m(tw, fj, x) - box_m(lc, fj, x)));
      }
    }
    const double axioms = std::max({rep.t_parallel, rep.j_parallel, rep.q_preserved, rep.torsion_q,
                                    rep.tau_tilde_anti});
    return std::vector<double>{box, metric, torsion, rep.tau_tilde, axioms};
  };
  sweep_checks(suite_points(c.base, c.fiber_len, opt.grid), specs, kernel, opt, out);
}

bool constant_curvature_model(const std::string& name) {
  return name == "flat" || name == "round" || name == "hyperbolic";
}

void deform_suite(const SasakiChart& c, const SuiteOptions& opt, std::vector<Check>& out) {
  const std::vector<Point> points = suite_points(c.base, c.fiber_len, opt.grid);

  const Type1Deformation t0 = deform_type0(c, 2.0);
  const SasakiChart t0_chart = type0_closed_form(c, 2.0);
  const Field f1 = parse_field(kFType1);
  const Type1Deformation t1 = reeb_deform_type1(c, f1);
  sweep_checks(points,
               {{"type0_kk", 1e-10}, {"type0_reeb", kJetTol}, {"type0_lie", kJetTol},
                {"type1_lie", kJetTol}, {"type1_reeb", kJetTol}, {"xf_sign", kAxiomTol}},
               [&](Point p) {
                 return std::vector<double>{kk_consistency(t0_chart, p), t0.eta_of_reeb_defect(p),
                                            t0.lie_defect(p), t1.lie_defect(p),
                                            t1.eta_of_reeb_defect(p), xf_sign_defect(c, f1, p)};
               },
               opt, out);

  std::optional<Type2Deformation> t2;
  try {
    t2 = deform_type2(c, parse_field(kSigmaSmall));
  } catch (const ContactDegenerate& e) {
    Check failed = make_check(opt, "type2_contact", 0.0, -e.volume(), e.worst());
    failed.pass = false;
    out.push_back(failed);
  }
  if (t2) {
    const SasakiChart closed = t2->closed_form();
    const SasakianStructure generic = t2->generic_structure();
    sweep_checks(points,
                 {{"type2_k_plus_gauss", kPipelineTol}, {"type2_generic_frame", kPipelineTol},
                  {"type2_kk", 1e-10}, {"type2_reeb", kJetTol}, {"type2_tw_axioms", kPipelineTol}},
                 [&](Point p) {
                   const LocalGeometry g = LocalGeometry::at(adapted_frame(closed, p));
                   const LocalGeometry h = LocalGeometry::at(generic.frame(p));
                   const double k = tanaka_k_jet(g).value();
                   const double gap = std::max({std::abs(tanaka_k_jet(h).value() - k),
                                                std::abs(sectional_q(h) - sectional_q(g)),
                                                tw_axiom_suite(h.tw).worst()});
                   const ReebDefect rd = t2->reeb_defect(p);
                   return std::vector<double>{std::abs(k + gauss_curvature(closed.base, p)), gap,
                                              kk_consistency(closed, p), std::max(rd.eta, rd.deta),
                                              tw_axiom_suite(g.tw).worst()};
                 },
                 opt, out);
  }

  if (c.base.has_compact_cell) {
    double holder = 0.0;
    for (const ScalarField& f : random_basic_corpus(opt.seed, 3, true)) {
      const HolderResult r = holder_volume_check(c, f);
      holder = std::max(holder, r.holds ? 0.0 : r.v * r.v * r.v - r.v_prime * r.v * r.v);
    }
    out.push_back(make_check(opt, "holder_inequality", kQuadratureTolerance, holder));
    const HolderResult eq = holder_volume_check(c, constant_field(1.5));
    out.push_back(make_check(opt, "holder_equality_constant", kQuadratureTolerance,
                             eq.equality ? std::abs(eq.margin) : kNaN));
  }
}

}  // namespace

json to_json(const Check& c) {
  json j = {{"name", c.name}, {"max_defect", c.max_defect}, {"tolerance", c.tolerance},
            {"pass", c.pass}};
  if (c.worst) j["worst"] = {{"x", c.worst->x}, {"y", c.worst->y}, {"t", c.worst->t}};
  return j;
}

std::vector<Check> curvature_checks(const SasakianStructure& s, const SuiteOptions& opt,
                                   const std::string& prefix, bool with_base) {
  // Order matches the kernel row below.
  std::vector<Spec> specs = {{prefix + "bianchi_lc", kJetTol},
                             {prefix + "phi_trace_free", kJetTol},
                             {prefix + "sec_q_2k_plus_3", kJetTol},
                             {prefix + "sec_q_identity", kJetTol},
                             {prefix + "phi_reduction", kAxiomTol}};
  if (with_base) specs.push_back({prefix + "k_plus_gauss", kJetTol});
  const bool flat_expected = with_base && constant_curvature_model(s.name);
  if (flat_expected) specs.push_back({prefix + "phi_flat", kFlatnessThreshold});

  auto kernel = [&](Point p) {
    const LocalGeometry g = LocalGeometry::at(s.frame(p));
    const double k = tanaka_k_jet(g).value();
    const double sec = sectional_q(g);
    const double axioms = tw_axiom_suite(g.tw).worst();
    double bianchi = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) {
          FrameVec a{}, b{}, d{};
          a[i] = 1.0;
          b[j] = 1.0;
          d[l] = 1.0;
          const FrameVec r1 = g.r_lc.apply(a, b, d), r2 = g.r_lc.apply(b, d, a),
                         r3 = g.r_lc.apply(d, a, b);
          for (int m = 0; m < 3; ++m) bianchi = std::max(bianchi, std::abs(r1[m] + r2[m] + r3[m]));
        }
      }
    }
    // Phi in its CR-Reeb form is only meaningful where the connection axioms hold.
    double trace = kNaN, phi_max = kNaN;
    if (axioms <= kReductionTolerance) {
      trace = phi_max = 0.0;
      for (int n = 0; n < 8; ++n) {
        const FrameVec x = q_direction(n, 8);
        const double phi = tanaka_phi(g, x);
        trace = std::max(trace, std::abs(phi + tanaka_phi(g, apply_j(x))));
        phi_max = std::max(phi_max, std::abs(phi));
      }
    }
    std::vector<double> row = {bianchi, trace, std::abs(sec + 2 * k + 3), std::abs(sec + k + 3),
                               axioms};
    if (with_base) row.push_back(std::abs(k + gauss_curvature(s.base, p)));
    if (flat_expected) row.push_back(phi_max);
    return row;
  };
  std::vector<Check> out;
  sweep_checks(suite_points(s.base, s.fiber_len, opt.grid), specs, kernel, opt, out);
  return out;
}

std::vector<Check> run_suite(const SasakiChart& c, const std::string& suite,
                             const SuiteOptions& opt) {
  const bool all = suite == "all";
  if (!all && suite != "frame" && suite != "connection" && suite != "curvature" &&
      suite != "deform") {
    throw ConfigError("unknown suite '" + suite + "'");
  }
  std::vector<Check> out;
  if (all || suite == "frame") frame_suite(c, opt, out);
  if (all || suite == "connection") connection_suite(c, opt, out);
  if (all || suite == "curvature") {
    for (Check& k : curvature_checks(structure_of(c), opt)) out.push_back(std::move(k));
  }
  if (all || suite == "deform") deform_suite(c, opt, out);
  std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return out;
}

}  // namespace cr3kit::cli
