#include "cr3kit/sasaki.hpp"

#include <cmath>

#include "cr3kit/errors.hpp"
#include "cr3kit/quadrature.hpp"

namespace cr3kit {

SasakiChart build_model(const std::string& tag, const std::optional<ConnectionForm>& conn,
                        double fiber_len) {
  if (!(fiber_len > 0.0)) throw Error("fiber length must be positive");
  SasakiChart c;
  c.name = tag;
  c.fiber_len = fiber_len;
  c.base = make_surface(tag);
  if (conn) {
    c.conn = *conn;
  } else if (tag == "flat") {
    c.conn = {parse_field("-y"), parse_field("x")};
  } else if (tag == "round") {
    c.conn = {parse_field("-4*y/(1+x^2+y^2)"), parse_field("4*x/(1+x^2+y^2)")};
  } else if (tag == "hyperbolic") {
    c.conn = {parse_field("-4*y/(1-x^2-y^2)"), parse_field("4*x/(1-x^2-y^2)")};
  } else if (tag == "perturbed") {
    c.conn = potential_by_quadrature(c.base.u);
  } else {
    throw NotIntegrated("model '" + tag + "' needs an explicit connection form A");
  }
  if (!c.conn.ax.basic() || !c.conn.ay.basic()) {
    throw Error("connection form components must not depend on t");
  }
  return c;
}

ConnectionForm potential_by_quadrature(const Field& u, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  Field ay("int_0^x 2 exp(2 u) ds", true, [u, rule](const JetVars& v) {
    Jet sum;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const JetVars scaled = {v[0] * rule.nodes[k], v[1], v[2]};
      sum += exp(2.0 * u(scaled)) * (2.0 * rule.weights[k]);
    }
    return v[0] * sum;
  });
  return {parse_field("0"), std::move(ay)};
}

Jet connection_curvature(const SasakiChart& c, Point p) {
  const JetVars v = seed(p);
  return c.conn.ay(v).diff(Axis::x) - c.conn.ax(v).diff(Axis::y);
}

double kk_consistency(const SasakiChart& c, Point p) {
  check_in_domain(c.base, p);
  const double f = connection_curvature(c, p).value();
  return std::abs(f - 2.0 * std::exp(2.0 * c.base.u(p)));
}

FormJ contact_form(const SasakiChart& c, Point p) {
  const JetVars v = seed(p);
  return {c.conn.ax(v), c.conn.ay(v), Jet::constant(1.0, p)};
}

AdaptedFrame adapted_frame(const SasakiChart& c, Point p) {
  check_in_domain(c.base, p);
  const JetVars v = seed(p);
  const Jet u = c.base.u(v);
  const Jet ax = c.conn.ax(v);
  const Jet ay = c.conn.ay(v);
  const Jet inv = exp(-u);
  const Jet fwd = exp(u);
  const Jet zero = Jet::constant(0.0, p);
  const Jet one = Jet::constant(1.0, p);
  AdaptedFrame f;
  f.p = p;
  f.e[0] = {zero, zero, one};
  f.e[1] = {inv, zero, -inv * ax};
  f.e[2] = {zero, inv, -inv * ay};
  f.theta[0] = {ax, ay, one};
  f.theta[1] = {fwd, zero, zero};
  f.theta[2] = {zero, fwd, zero};
  return f;
}

MetricMatrix metric_matrix(const SasakiChart& c, Point p) {
  check_in_domain(c.base, p);
  const double eta[3] = {c.conn.ax(p), c.conn.ay(p), 1.0};
  const double conformal = std::exp(2.0 * c.base.u(p));
  MetricMatrix g{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) g[a][b] = eta[a] * eta[b] + (a == b && a < 2 ? conformal : 0.0);
  }
  return g;
}

double metric_eval(const MetricMatrix& g, const Vec3& v, const Vec3& w) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) s += g[a][b] * v[a] * w[b];
  }
  return s;
}

double metric_eval(const SasakiChart& c, const Vec3& v, const Vec3& w, Point p) {
  return metric_eval(metric_matrix(c, p), v, w);
}

double d_eta(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y) {
  return exterior_derivative(f.eta(), f.field(x), f.field(y)).value();
}

double metric_assembled(const SasakiChart& c, const Vec3& v, const Vec3& w, Point p) {
  return metric_assembled(adapted_frame(c, p), v, w);
}

double metric_assembled(const AdaptedFrame& f, const Vec3& v, const Vec3& w) {
  auto frame_comps = [&](const Vec3& a) {
    FrameVec out{};
    for (int k = 0; k < 3; ++k) {
      out[k] = f.theta[k][0].value() * a[0] + f.theta[k][1].value() * a[1] +
               f.theta[k][2].value() * a[2];
    }
    return out;
  };
  const FrameVec fv = frame_comps(v);
  const FrameVec fw = frame_comps(w);
  const FrameVec qv = {0.0, fv[1], fv[2]};
  const FrameVec qw = {0.0, fw[1], fw[2]};
  return fv[0] * fw[0] - 0.5 * d_eta(f, apply_j(qv), qw);
}

LeviForm levi_form(const SasakiChart& c, const FrameVec& x, const FrameVec& y, Point p) {
  return levi_form(adapted_frame(c, p), x, y);
}

LeviForm levi_form(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y) {
  LeviForm out;
  out.levi = pair(f.eta(), bracket(f.field(x), f.field(y))).value();
  out.hermitian = -0.5 * d_eta(f, apply_j(x), y);
  return out;
}

FrameVec nijenhuis(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y) {
  const VecJ vx = f.field(x), vy = f.field(y);
  const VecJ jx = f.field(apply_j(x)), jy = f.field(apply_j(y));
  // J of the Q-projection Z - eta(Z) T, in frame components.
  auto j_of_q = [&](const VecJ& z) {
    const auto comps = f.components(z);
    return FrameVec{0.0, -comps[2].value(), comps[1].value()};
  };
  auto values = [&](const VecJ& z) {
    const auto comps = f.components(z);
    return FrameVec{comps[0].value(), comps[1].value(), comps[2].value()};
  };
  const FrameVec a = values(bracket(jx, jy));
  const FrameVec b = j_of_q(bracket(jx, vy));
  const FrameVec d = j_of_q(bracket(vx, jy));
  const FrameVec e = values(bracket(vx, vy));
  FrameVec out{};
  for (int k = 0; k < 3; ++k) out[k] = a[k] - b[k] - d[k] - e[k];
  return out;
}

FrameVec nijenhuis(const SasakiChart& c, const FrameVec& x, const FrameVec& y, Point p) {
  return nijenhuis(adapted_frame(c, p), x, y);
}

ReebDefect reeb_check(const AdaptedFrame& f, const VecJ& v) {
  ReebDefect out;
  out.eta = std::abs(pair(f.eta(), v).value() - 1.0);
  for (int a = 0; a < 3; ++a) {
    out.deta = std::max(out.deta, std::abs(exterior_derivative(f.eta(), v, f.e[a]).value()));
  }
  return out;
}

ReebDefect reeb_check(const SasakiChart& c, const VectorFieldSpec& spec, Point p) {
  const AdaptedFrame f = adapted_frame(c, p);
  const JetVars vars = seed(p);
  VecJ v;
  if (spec.basis == VectorFieldSpec::Basis::coordinate) {
    v = {spec.comps[0](vars), spec.comps[1](vars), spec.comps[2](vars)};
  } else {
    v = scale(spec.comps[0](vars), f.e[0]);
    v = add(v, scale(spec.comps[1](vars), f.e[1]));
    v = add(v, scale(spec.comps[2](vars), f.e[2]));
  }
  return reeb_check(f, v);
}

double area_form_defect(const SasakiChart& c, Point p) {
  const AdaptedFrame f = adapted_frame(c, p);
  return std::abs(0.5 * d_eta(f, {0, 1, 0}, {0, 0, 1}) - 1.0);
}

double lie_t_metric_defect(const SasakiChart& c, Point p) {
  const FormJ eta = contact_form(c, p);
  const Jet conformal = exp(2.0 * c.base.u(seed(p)));
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Jet g = eta[a] * eta[b];
      if (a == b && a < 2) g += conformal;
      const Jet dt = g.diff(Axis::t);
      for (int k = 0; k < kJetSize; ++k) {
        if (jet_multi_index(k).degree() <= dt.order()) {
          worst = std::max(worst, std::abs(dt.coeffs()[k]));
        }
      }
    }
  }
  return worst;
}

SasakianStructure structure_of(const SasakiChart& c) {
  return {c.name, c.base, [c](Point p) { return adapted_frame(c, p); }, c.fiber_len};
}

}  // namespace cr3kit
