#include "cr3kit/deform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cr3kit/errors.hpp"
#include "cr3kit/quadrature.hpp"
#include "cr3kit/sweep.hpp"

namespace cr3kit {
namespace {

const FrameVec kE1 = {0, 1, 0};
const FrameVec kE2 = {0, 0, 1};

// J0 d_c expressed as a vector field: theta^1(d_c) E2 - theta^2(d_c) E1.
VecJ j0_of_coordinate(const AdaptedFrame& f, int c) {
  return add(scale(f.theta[1][c], f.e[2]), scale(-f.theta[2][c], f.e[1]));
}

// (alpha ^ beta)(d_x, d_y, d_t) for a 1-form alpha and the 2-form d alpha.
double volume_of(const FormJ& alpha, Point p) {
  const VecJ dx = coordinate_field(0, p), dy = coordinate_field(1, p), dt = coordinate_field(2, p);
  const double a0 = alpha[0].value(), a1 = alpha[1].value(), a2 = alpha[2].value();
  return a0 * exterior_derivative(alpha, dy, dt).value() -
         a1 * exterior_derivative(alpha, dx, dt).value() +
         a2 * exterior_derivative(alpha, dx, dy).value();
}

}  // namespace

FrameVec xf_field(const SasakiChart& c, const Field& f, Point p) {
  if (!f.basic()) throw Error("X_f requires a basic function");
  const AdaptedFrame fr = adapted_frame(c, p);
  const Jet fj = f.jet(p);
  const double e1f = derivative(fr.e[1], fj).value();
  const double e2f = derivative(fr.e[2], fj).value();
  // (df|_Q)^sharp = (E1.f) E1 + (E2.f) E2 for the orthonormal h.
  const FrameVec sharp = {0.0, e1f, e2f};
  const FrameVec j = apply_j(sharp);
  return {0.0, 0.5 * j[1], 0.5 * j[2]};
}

double xf_sign_defect(const SasakiChart& c, const Field& f, Point p) {
  const AdaptedFrame fr = adapted_frame(c, p);
  const FrameVec xf = xf_field(c, f, p);
  const Jet fj = f.jet(p);
  double worst = 0.0;
  for (const FrameVec& y : {kE1, kE2}) {
    const double lhs = d_eta(fr, xf, y);
    const double df = derivative(fr.field(y), fj).value();
    worst = std::max(worst, std::abs(lhs + df));
  }
  return worst;
}

double hessian_q(const FrameConnection& tw, const Jet& f, const FrameVec& x, const FrameVec& y) {
  const AdaptedFrame& fr = tw.frame();
  const double second = derivative(fr.field(x), derivative(fr.field(y), f)).value();
  const FrameVec nabla = tw.covariant(x, y);
  double first = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (nabla[k] != 0.0) first += nabla[k] * derivative(fr.e[k], f).value();
  }
  return second - first;
}

double cr_reeb_defect(const FrameConnection& tw, const Jet& f) {
  const double h11 = hessian_q(tw, f, kE1, kE1);
  const double h22 = hessian_q(tw, f, kE2, kE2);
  const double h12 = hessian_q(tw, f, kE1, kE2);
  const double h21 = hessian_q(tw, f, kE2, kE1);
  return std::max(std::abs(h11 - h22), std::abs(h12 + h21));
}

double cr_reeb_defect(const SasakiChart& c, const Field& f, Point p) {
  return cr_reeb_defect(tanaka_webster(c, p), f.jet(p));
}

HessianFit hessian_scalar_fit(const SasakiChart& c, const Field& f, Point p) {
  const FrameConnection tw = tanaka_webster(c, p);
  const Jet fj = f.jet(p);
  const double h11 = hessian_q(tw, fj, kE1, kE1);
  const double h22 = hessian_q(tw, fj, kE2, kE2);
  const double h12 = hessian_q(tw, fj, kE1, kE2);
  const double h21 = hessian_q(tw, fj, kE2, kE1);
  HessianFit fit;
  fit.lambda = 0.5 * (h11 + h22);
  fit.residual = std::max({std::abs(h11 - fit.lambda), std::abs(h22 - fit.lambda),
                           std::abs(h12), std::abs(h21)});
  return fit;
}

Type1Deformation::Type1Deformation(SasakiChart chart, Field f)
    : chart_(std::move(chart)), f_(std::move(f)) {}

VecJ Type1Deformation::reeb(Point p) const {
  const AdaptedFrame fr = adapted_frame(chart_, p);
  const Jet fj = f_.jet(p);
  const Jet e1f = derivative(fr.e[1], fj);
  const Jet e2f = derivative(fr.e[2], fj);
  // X_f = 1/2 (-(E2.f) E1 + (E1.f) E2)
  VecJ xf = add(scale(-0.5 * e2f, fr.e[1]), scale(0.5 * e1f, fr.e[2]));
  return add(scale(fj, fr.e[0]), xf);
}

FormJ Type1Deformation::eta(Point p) const {
  const FormJ base = contact_form(chart_, p);
  const Jet inv = 1.0 / f_.jet(p);
  return {base[0] * inv, base[1] * inv, base[2] * inv};
}

double Type1Deformation::metric_q(const FrameVec& x, const FrameVec& y, Point p) const {
  return (x[1] * y[1] + x[2] * y[2]) / f_(p);
}

double Type1Deformation::eta_of_reeb_defect(Point p) const {
  return std::abs(pair(eta(p), reeb(p)).value() - 1.0);
}

double Type1Deformation::lie_defect(Point p) const {
  const FormJ e = eta(p);
  const VecJ r = reeb(p);
  const Jet contraction = pair(e, r);
  const Jet d[3] = {contraction.diff(Axis::x), contraction.diff(Axis::y),
                    contraction.diff(Axis::t)};
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double value = d[c].value() + exterior_derivative(e, r, coordinate_field(c, p)).value();
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

double Type1Deformation::cr_reeb_defect(Point p) const {
  return cr3kit::cr_reeb_defect(chart_, f_, p);
}

SasakianStructure Type1Deformation::structure() const {
  const SasakiChart c = chart_;
  const Field f = f_;
  Field fx, fy;
  if (const ScalarField* e = f.expression()) {
    fx = e->derivative(Axis::x);
    fy = e->derivative(Axis::y);
  } else {
    fx = Field("f_x", true, [f](const JetVars& v) { return f(v).diff(Axis::x); });
    fy = Field("f_y", true, [f](const JetVars& v) { return f(v).diff(Axis::y); });
  }
  auto frame = [c, f, fx, fy](Point p) {
    const AdaptedFrame fr = adapted_frame(c, p);
    const JetVars v = seed(p);
    const Jet fj = f(v);
    // Basic f: E_a.f = e^{-u} f_a.
    const Jet damp = exp(-c.base.u(v));
    const Jet e1f = damp * fx(v), e2f = damp * fy(v);
    const VecJ xf = add(scale(-0.5 * e2f, fr.e[1]), scale(0.5 * e1f, fr.e[2]));
    const Jet root = sqrt(fj);
    AdaptedFrame out;
    out.p = p;
    out.e[0] = add(scale(fj, fr.e[0]), xf);
    out.e[1] = scale(root, fr.e[1]);
    out.e[2] = scale(root, fr.e[2]);
    out.theta = dual_coframe(out.e);
    return out;
  };
  return {chart_.name + "+type1", chart_.base, frame, chart_.fiber_len};
}

Type1Deformation reeb_deform_type1(const SasakiChart& c, const Field& f) {
  if (!f.basic()) throw Error("type-1 deformation requires a basic function");
  for (const Point& p : grid_points(c.base.sample_region, 32)) {
    const double v = f(p);
    if (!(v > 0.0)) throw NonPositive("deformation function is not positive", p, v);
  }
  return Type1Deformation(c, f);
}

Type1Deformation deform_type0(const SasakiChart& c, double scale) {
  if (!(scale > 0.0)) throw NonPositive("type-0 scale must be positive", Point{}, scale);
  return reeb_deform_type1(c, constant_field(scale));
}

SasakiChart type0_closed_form(const SasakiChart& c, double scale) {
  if (!(scale > 0.0)) throw NonPositive("type-0 scale must be positive", Point{}, scale);
  const Field u = c.base.u, ax = c.conn.ax, ay = c.conn.ay;
  const double shift = 0.5 * std::log(scale), inv = 1.0 / scale;
  SasakiChart out = c;
  out.name = c.name + "+type0";
  out.base.name = out.name;
  out.base.u = Field("u - 1/2 log c", true, [u, shift](const JetVars& v) { return u(v) - shift; });
  out.conn = {Field("Ax / c", true, [ax, inv](const JetVars& v) { return ax(v) * inv; }),
              Field("Ay / c", true, [ay, inv](const JetVars& v) { return ay(v) * inv; })};
  out.fiber_len = c.fiber_len / scale;
  return out;
}

Type2Deformation::Type2Deformation(SasakiChart chart, Field sigma)
    : chart_(std::move(chart)), sigma_(std::move(sigma)) {}

FormJ Type2Deformation::eta(Point p) const {
  const AdaptedFrame fr = adapted_frame(chart_, p);
  const Jet s = sigma_.jet(p);
  FormJ out;
  for (int c = 0; c < 3; ++c) out[c] = fr.theta[0][c] + derivative(j0_of_coordinate(fr, c), s);
  return out;
}

double Type2Deformation::contact_volume(Point p) const { return volume_of(eta(p), p); }

AdaptedFrame Type2Deformation::frame(Point p) const {
  const AdaptedFrame fr = adapted_frame(chart_, p);
  const FormJ e = eta(p);
  auto project = [&](const VecJ& z) { return add(z, scale(-pair(e, z), fr.e[0])); };
  const VecJ q1 = project(fr.e[1]);
  const VecJ q2 = project(fr.e[2]);
  // h'(q1, q1) = -1/2 d eta'(J' q1, q1) = 1/2 d eta'(q1, q2); q2 = J' q1 is
  // already h'-orthogonal to q1 with the same length.
  const Jet norm2 = 0.5 * exterior_derivative(e, q1, q2);
  if (!(norm2.value() > 0.0)) {
    throw ContactDegenerate("deformed Levi form is not positive", p, norm2.value());
  }
  const Jet inv = 1.0 / sqrt(norm2);
  AdaptedFrame out;
  out.p = p;
  out.e[0] = fr.e[0];
  out.e[1] = scale(inv, q1);
  out.e[2] = scale(inv, q2);
  out.theta = dual_coframe(out.e);
  return out;
}

ReebDefect Type2Deformation::reeb_defect(Point p) const {
  const AdaptedFrame fr = frame(p);
  // Check against the independently assembled eta' rather than the coframe.
  AdaptedFrame probe = fr;
  probe.theta[0] = eta(p);
  return reeb_check(probe, fr.e[0]);
}

double Type2Deformation::metric(const Vec3& v, const Vec3& w, Point p) const {
  const AdaptedFrame fr = frame(p);
  const FormJ e = eta(p);
  auto lift = [&](const Vec3& a) {
    VecJ out;
    for (int c = 0; c < 3; ++c) out[c] = Jet::constant(a[c], p);
    return out;
  };
  const VecJ vv = lift(v), ww = lift(w);
  auto q_part = [&](const VecJ& z) { return add(z, scale(-pair(e, z), fr.e[0])); };
  const auto cv = fr.components(q_part(vv));
  const auto cw = fr.components(q_part(ww));
  const double d12 = exterior_derivative(e, fr.e[1], fr.e[2]).value();
  // d eta' is tensorial: expand in E1', E2' with J'V = -v2 E1' + v1 E2'.
  const double v1 = cv[1].value(), v2 = cv[2].value(), w1 = cw[1].value(), w2 = cw[2].value();
  const double jv1 = -v2, jv2 = v1;
  const double deta_jv_w = (jv1 * w2 - jv2 * w1) * d12;
  return pair(e, vv).value() * pair(e, ww).value() - 0.5 * deta_jv_w;
}

SasakiChart Type2Deformation::closed_form() const {
  const Field u = chart_.base.u;
  Field sx, sy, lap;
  if (const ScalarField* e = sigma_.expression()) {
    // Symbolic derivatives keep the full jet order for the curvature pipeline.
    const ScalarField dx = e->derivative(Axis::x), dy = e->derivative(Axis::y);
    sx = dx;
    sy = dy;
    lap = dx.derivative(Axis::x) + dy.derivative(Axis::y);
  } else {
    const Field s = sigma_;
    sx = Field("sigma_x", true, [s](const JetVars& v) { return s(v).diff(Axis::x); });
    sy = Field("sigma_y", true, [s](const JetVars& v) { return s(v).diff(Axis::y); });
    lap = Field("lap sigma", true, [s](const JetVars& v) {
      const Jet j = s(v);
      return j.diff(Axis::x).diff(Axis::x) + j.diff(Axis::y).diff(Axis::y);
    });
  }
  Field u_prime("1/2 log(e^{2u} - 1/2 lap sigma)", true, [u, lap](const JetVars& v) {
    return 0.5 * log(exp(2.0 * u(v)) - 0.5 * lap(v));
  });
  const Field ax = chart_.conn.ax, ay = chart_.conn.ay;
  Field ax_prime("Ax + sigma_y", true, [ax, sy](const JetVars& v) { return ax(v) + sy(v); });
  Field ay_prime("Ay - sigma_x", true, [ay, sx](const JetVars& v) { return ay(v) - sx(v); });
  SasakiChart out;
  out.name = chart_.name + "+type2";
  out.base = chart_.base;
  out.base.name = out.name;
  out.base.u = u_prime;
  out.conn = {ax_prime, ay_prime};
  out.fiber_len = chart_.fiber_len;
  return out;
}

SasakianStructure Type2Deformation::generic_structure() const {
  const Type2Deformation self = *this;
  return {chart_.name + "+type2", closed_form().base, [self](Point p) { return self.frame(p); },
          chart_.fiber_len};
}

SasakianStructure Type2Deformation::structure() const { return structure_of(closed_form()); }

Type2Deformation deform_type2(const SasakiChart& c, const Field& sigma, int grid) {
  if (!sigma.basic()) throw Error("type-2 deformation requires a basic function");
  Type2Deformation d(c, sigma);
  const std::vector<Point> points = grid_points(c.base.sample_region, grid);
  const std::vector<double> volumes =
      sweep_parallel<double>(points, [&d](Point p) { return d.contact_volume(p); });
  std::vector<double> negated(volumes.size());
  std::transform(volumes.begin(), volumes.end(), negated.begin(), [](double v) { return -v; });
  const MaxAt worst = max_at(negated);
  if (!points.empty() && !(volumes[worst.index] > 0.0)) {
    throw ContactDegenerate("eta' ^ d eta' vanishes: the deformed form is not contact",
                            points[worst.index], volumes[worst.index]);
  }
  return d;
}

double fiber_integral(const SasakiChart& c, const Field& f, Vec2 x, int nodes) {
  if (f.basic()) return c.fiber_len * f(Point{x.x, x.y, 0.0});
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, c.fiber_len);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(Point{x.x, x.y, rule.nodes[k]});
  }
  return sum;
}

HolderResult holder_volume_check(const SasakiChart& c, const Field& f, int nodes, bool parallel) {
  if (!c.base.has_compact_cell) {
    throw NonCompactCell("Hoelder volume check needs a compact cell; '" + c.name + "' has none");
  }
  const Rect& cell = c.base.cell;
  const QuadratureRule qx = gauss_legendre(nodes, cell.x0, cell.x1);
  const QuadratureRule qy = gauss_legendre(nodes, cell.y0, cell.y1);
  const QuadratureRule qt =
      f.basic() ? QuadratureRule{{0.0}, {c.fiber_len}} : gauss_legendre(nodes, 0.0, c.fiber_len);

  std::vector<Point> points;
  std::vector<double> weights;
  points.reserve(qx.nodes.size() * qy.nodes.size() * qt.nodes.size());
  for (std::size_t i = 0; i < qx.nodes.size(); ++i) {
    for (std::size_t j = 0; j < qy.nodes.size(); ++j) {
      for (std::size_t k = 0; k < qt.nodes.size(); ++k) {
        points.push_back({qx.nodes[i], qy.nodes[j], qt.nodes[k]});
        weights.push_back(qx.weights[i] * qy.weights[j] * qt.weights[k]);
      }
    }
  }
  struct Sample {
    double f = 0.0;
    double density = 0.0;  // lambda = 1/2 (eta ^ d eta)(d_x, d_y, d_t) = F / 2
  };
  auto kernel = [&](Point p) {
    return Sample{f(p), 0.5 * connection_curvature(c, p).value()};
  };
  const std::vector<Sample> samples =
      parallel ? sweep_parallel<Sample>(points, kernel) : sweep_serial<Sample>(points, kernel);

  double fmin = samples.empty() ? 0.0 : samples[0].f, fmax = fmin;
  double v = 0.0, int_f = 0.0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (!(samples[n].f > 0.0)) {
      throw NonPositive("Hoelder check needs f > 0", points[n], samples[n].f);
    }
    fmin = std::min(fmin, samples[n].f);
    fmax = std::max(fmax, samples[n].f);
    v += weights[n] * samples[n].density;
    int_f += weights[n] * samples[n].f * samples[n].density;
  }
  HolderResult r;
  r.v = v;
  r.normalization = v / int_f;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const double fn = r.normalization * samples[n].f;
    r.v_prime += weights[n] * samples[n].density / (fn * fn);
  }
  r.margin = r.v_prime - r.v;
  // (int f^-2)(int f)^2 - v^3 with int f = v after normalization.
  r.holds = r.v_prime * v * v - v * v * v >= -kQuadratureTolerance;
  const bool constant = fmax - fmin <= 1e-12 * std::max(1.0, std::abs(fmax));
  r.equality = constant && std::abs(r.margin) < kQuadratureTolerance;
  return r;
}

std::optional<long> rational_denominator(double x, long bound, double tol) {
  x -= std::floor(x);
  if (x < tol || 1.0 - x < tol) return 1;
  long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(r);
    if (a_real > static_cast<double>(bound)) break;
    const long a = static_cast<long>(a_real);
    const long h = a * h1 + h2;
    const long k = a * k1 + k2;
    if (k > bound) break;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < tol) return k;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const double frac = r - a_real;
    if (frac <= 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

HopfVerdict hopf_reeb(std::complex<double> alpha, std::complex<double> beta) {
  // Swapping the coordinates of C^2 exchanges alpha and beta.
  if (std::abs(alpha) > std::abs(beta)) std::swap(alpha, beta);
  const double a = std::abs(alpha), b = std::abs(beta);
  if (!(a > 0.0 && b < 1.0)) throw Error("hopf_reeb needs 0 < |alpha|, |beta| < 1");
  // alpha = |alpha| eps1, beta = |beta| eps2; closed orbits iff both phases
  // are n-th roots of unity for a common n.
  const double two_pi = 2.0 * std::numbers::pi;
  const auto q1 = rational_denominator(std::arg(alpha) / two_pi, kRootOfUnityBound);
  const auto q2 = rational_denominator(std::arg(beta) / two_pi, kRootOfUnityBound);
  HopfVerdict v;
  if (!q1 || !q2) {
    v.bound_caveat = true;
    return v;
  }
  v.closed = true;
  v.order = std::lcm(*q1, *q2);
  return v;
}

}  // namespace cr3kit
