#include "cr3kit/curvature.hpp"

#include <cmath>
#include <numbers>

#include "cr3kit/errors.hpp"
#include "cr3kit/sweep.hpp"

namespace cr3kit {
namespace {

// Frame derivative E_i.f of a jet.
Jet frame_derivative(const AdaptedFrame& f, int i, const Jet& value) {
  return derivative(f.e[i], value);
}

}  // namespace

CurvatureTensor::CurvatureTensor(const FrameConnection& conn) {
  const AdaptedFrame& f = conn.frame();
  // R^m_{ijl} = E_i(G^m_jl) - E_j(G^m_il) + G^n_jl G^m_in - G^n_il G^m_jn - c^n_ij G^m_nl
  // where G^m_jl = gamma(j, l, m).
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        for (int m = 0; m < 3; ++m) {
          if (i == j) {
            r_[i][j][l][m] = Jet::constant(0.0, f.p);
            continue;
          }
          if (j < i) {
            r_[i][j][l][m] = -r_[j][i][l][m];
            continue;
          }
          Jet v = frame_derivative(f, i, conn.gamma_jet(j, l, m)) -
                  frame_derivative(f, j, conn.gamma_jet(i, l, m));
          for (int n = 0; n < 3; ++n) {
            v += conn.gamma_jet(j, l, n) * conn.gamma_jet(i, n, m);
            v -= conn.gamma_jet(i, l, n) * conn.gamma_jet(j, n, m);
            v -= conn.structure_jet(i, j, n) * conn.gamma_jet(n, l, m);
          }
          r_[i][j][l][m] = v;
        }
      }
    }
  }
}

FrameVec CurvatureTensor::apply(const FrameVec& x, const FrameVec& y, const FrameVec& z) const {
  FrameVec out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) continue;
      for (int l = 0; l < 3; ++l) {
        if (z[l] == 0.0) continue;
        for (int m = 0; m < 3; ++m) out[m] += xy * z[l] * r_[i][j][l][m].value();
      }
    }
  }
  return out;
}

FrameVec curvature_tensor(const FrameConnection& conn, const FrameVec& x, const FrameVec& y,
                          const FrameVec& z) {
  return CurvatureTensor(conn).apply(x, y, z);
}

LocalGeometry LocalGeometry::at(const AdaptedFrame& frame) {
  FrameConnection lc = levi_civita(frame);
  FrameConnection tw = tanaka_webster(lc);
  CurvatureTensor r_lc(lc);
  CurvatureTensor r_tw(tw);
  return {std::move(lc), std::move(tw), std::move(r_lc), std::move(r_tw)};
}

Jet tanaka_k_jet(const LocalGeometry& g) { return g.r_tw.component_jet(1, 2, 1, 2); }

double tanaka_k(const SasakiChart& c, Point p) {
  return tanaka_k_jet(LocalGeometry::at(adapted_frame(c, p))).value();
}

double sectional_q(const LocalGeometry& g) { return g.r_lc.component(1, 2, 2, 1); }

double sectional_q(const SasakiChart& c, Point p) {
  return sectional_q(LocalGeometry::at(adapted_frame(c, p)));
}

double box_m(const FrameConnection& conn, const Jet& f, const FrameVec& x) {
  const AdaptedFrame& fr = conn.frame();
  const FrameVec jx = apply_j(x);
  const VecJ vx = fr.field(x);
  const VecJ vjx = fr.field(jx);
  const double second = derivative(vx, derivative(vjx, f)).value() +
                        derivative(vjx, derivative(vx, f)).value();
  const FrameVec a = conn.covariant(x, jx);
  const FrameVec b = conn.covariant(jx, x);
  double first = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double coeff = a[k] + b[k];
    if (coeff != 0.0) first += coeff * derivative(fr.e[k], f).value();
  }
  return second - first;
}

double box_m(const SasakiChart& c, ConnectionKind kind, const Field& f, const FrameVec& x,
             Point p) {
  const FrameConnection lc = levi_civita(c, p);
  const Jet fj = f.jet(p);
  if (kind == ConnectionKind::levi_civita) return box_m(lc, fj, x);
  return box_m(tanaka_webster(lc), fj, x);
}

double tanaka_phi(const LocalGeometry& g, const FrameVec& x) {
  // The difference formulas give tau~ = 0 by construction, so the CR Reeb
  // condition shows up as a failure of the other axioms.
  const double defect = tw_axiom_suite(g.tw).worst();
  if (defect > kReductionTolerance) {
    throw ReductionInvalid("T is not a CR Reeb field here: Tanaka-Webster axioms fail",
                           g.frame().p, defect);
  }
  return -0.5 * box_m(g.tw, tanaka_k_jet(g), x);
}

double tanaka_phi(const SasakiChart& c, const FrameVec& x, Point p) {
  return tanaka_phi(LocalGeometry::at(adapted_frame(c, p)), x);
}

FrameVec q_direction(int n, int count) {
  const double a = std::numbers::pi * n / count;
  return {0.0, std::cos(a), std::sin(a)};
}

CurvatureReport curvature_report(const SasakianStructure& s, Point p) {
  const LocalGeometry g = LocalGeometry::at(s.frame(p));
  CurvatureReport r;
  r.point = p;
  r.K_base = gauss_curvature(s.base, p);
  r.k_tanaka = tanaka_k_jet(g).value();
  r.sec_Q = sectional_q(g);
  r.phi_T_component = tanaka_phi(g, {0, 1, 0});
  const Jet k = tanaka_k_jet(g);
  for (int n = 0; n < 8; ++n) {
    r.box_k_max = std::max(r.box_k_max, std::abs(box_m(g.tw, k, q_direction(n, 8))));
  }
  return r;
}

namespace {

struct PointFlatness {
  double max_phi = 0.0;
  int direction = 0;
  double trace_defect = 0.0;
};

PointFlatness flatness_at(const SasakianStructure& s, Point p) {
  const LocalGeometry g = LocalGeometry::at(s.frame(p));
  PointFlatness out;
  for (int n = 0; n < 8; ++n) {
    const FrameVec x = q_direction(n, 8);
    const double phi = tanaka_phi(g, x);
    const double phi_j = tanaka_phi(g, apply_j(x));
    out.trace_defect = std::max(out.trace_defect, std::abs(phi + phi_j));
    if (n == 0 || std::abs(phi) > out.max_phi) {
      out.max_phi = std::abs(phi);
      out.direction = n;
    }
  }
  return out;
}

}  // namespace

FlatnessVerdict flatness_test(const SasakianStructure& s, int grid, bool parallel) {
  const std::vector<Point> points = grid_points(s.base.sample_region, grid);
  auto kernel = [&s](Point p) { return flatness_at(s, p); };
  const std::vector<PointFlatness> per_point =
      parallel ? sweep_parallel<PointFlatness>(points, kernel)
               : sweep_serial<PointFlatness>(points, kernel);
  std::vector<double> phis(per_point.size());
  FlatnessVerdict v;
  v.points = static_cast<int>(points.size());
  for (std::size_t i = 0; i < per_point.size(); ++i) {
    phis[i] = per_point[i].max_phi;
    v.max_trace_defect = std::max(v.max_trace_defect, per_point[i].trace_defect);
  }
  const MaxAt best = max_at(phis);
  v.max_phi = best.value;
  if (!points.empty()) {
    v.where = points[best.index];
    v.direction = q_direction(per_point[best.index].direction, 8);
  }
  v.flat = v.max_phi < kFlatnessThreshold;
  return v;
}

}  // namespace cr3kit
