#include "cr3kit/surface.hpp"

#include <cmath>
#include <numbers>

#include "cr3kit/errors.hpp"

namespace cr3kit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SurfaceChart disk_chart(std::string name, const char* u, double radius) {
  SurfaceChart c;
  c.name = std::move(name);
  c.u = parse_field(u);
  if (radius > 0.0) c.domain = {Domain::Shape::disk, radius};
  c.sample_region = {-0.55, 0.55, -0.55, 0.55};
  return c;
}

SurfaceChart torus_chart(std::string name, Field u) {
  SurfaceChart c;
  c.name = std::move(name);
  c.u = std::move(u);
  c.sample_region = {0.0, 1.0, 0.0, 1.0};
  c.has_compact_cell = true;
  c.cell = {0.0, 1.0, 0.0, 1.0};
  return c;
}

}  // namespace

SurfaceChart make_surface(const std::string& tag) {
  if (tag == "flat") return torus_chart("flat", parse_field("0"));
  if (tag == "round") return disk_chart("round", "log(2/(1+x^2+y^2))", 0.0);
  if (tag == "hyperbolic") return disk_chart("hyperbolic", "log(2/(1-x^2-y^2))", 0.9);
  if (tag == "perturbed") {
    return torus_chart("perturbed",
                       parse_field("0.05*sin(2*3.141592653589793*x)*sin(2*3.141592653589793*y)"));
  }
  if (tag.rfind("custom:", 0) == 0) return custom_surface(tag, parse_field(tag.substr(7)));
  throw Error("unknown surface model '" + tag + "'");
}

SurfaceChart custom_surface(const std::string& name, Field u) {
  if (!u.basic()) throw Error("conformal factor must not depend on t");
  SurfaceChart c = torus_chart(name, std::move(u));
  // A custom factor is not assumed periodic.
  c.has_compact_cell = false;
  return c;
}

void check_in_domain(const SurfaceChart& c, Point p) {
  if (!c.domain.contains(p.x, p.y)) {
    throw DomainError("point outside the " + c.name + " chart", std::hypot(p.x, p.y));
  }
}

SurfaceJets surface_jets(const SurfaceChart& c, Point p) {
  check_in_domain(c, p);
  SurfaceJets s;
  s.u = c.u.jet(p);
  s.conformal = exp(2.0 * s.u);
  // g_ij = e^{2u} delta_ij; Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
  const Jet inverse = 1.0 / s.conformal;
  const std::array<Jet, 2> dg = {s.conformal.diff(Axis::x), s.conformal.diff(Axis::y)};
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Jet sum;
        sum += dg[i] * delta(j, k);
        sum += dg[j] * delta(i, k);
        sum -= dg[k] * delta(i, j);
        s.christoffel[k][i][j] = 0.5 * inverse * sum;
      }
    }
  }
  return s;
}

Jet gauss_curvature_jet(const SurfaceChart& c, Point p) {
  check_in_domain(c, p);
  const Jet u = c.u.jet(p);
  const Jet laplacian = u.diff(Axis::x).diff(Axis::x) + u.diff(Axis::y).diff(Axis::y);
  return -exp(-2.0 * u) * laplacian;
}

double gauss_curvature(const SurfaceChart& c, Point p) { return gauss_curvature_jet(c, p).value(); }

Vec2 surf_grad_sharp(const SurfaceChart& c, const Field& f, Point p) {
  check_in_domain(c, p);
  const Jet fj = f.jet(p);
  const double scale = std::exp(-2.0 * c.u(p));
  return {scale * fj.partial({1, 0, 0}), scale * fj.partial({0, 1, 0})};
}

double box_sigma(const SurfaceChart& c, const SurfaceJets& s, const Jet& f, Vec2 x) {
  (void)c;
  const Vec2 jx = rotate_j(x);
  const double xv[2] = {x.x, x.y};
  const double jv[2] = {jx.x, jx.y};
  const std::array<Jet, 2> df = {f.diff(Axis::x), f.diff(Axis::y)};
  // Hess(V, W) = V^i W^j (d_i d_j f - Gamma^k_ij d_k f).
  auto hess = [&](const double* v, const double* w) {
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double h = df[j].diff(i == 0 ? Axis::x : Axis::y).value();
        for (int k = 0; k < 2; ++k) h -= s.christoffel[k][i][j].value() * df[k].value();
        total += v[i] * w[j] * h;
      }
    }
    return total;
  };
  return hess(xv, jv) + hess(jv, xv);
}

double box_sigma(const SurfaceChart& c, const Field& f, Vec2 x, Point p) {
  const SurfaceJets s = surface_jets(c, p);
  return box_sigma(c, s, f.jet(p), x);
}

double killing_symmetrization(const SurfaceChart& c, const Field& f, Vec2 x, Point p) {
  const SurfaceJets s = surface_jets(c, p);
  const Jet fj = f.jet(p);
  const Jet inverse = 1.0 / s.conformal;
  // V = J (df)^sharp = e^{-2u} (-f_y, f_x).
  const std::array<Jet, 2> v = {-inverse * fj.diff(Axis::y), inverse * fj.diff(Axis::x)};
  const double xv[2] = {x.x, x.y};
  double result = 0.0;
  for (int k = 0; k < 2; ++k) {
    // (nabla_X V)^k = X^i (d_i V^k + Gamma^k_ij V^j)
    double cov = 0.0;
    for (int i = 0; i < 2; ++i) {
      double term = v[k].diff(i == 0 ? Axis::x : Axis::y).value();
      for (int j = 0; j < 2; ++j) term += s.christoffel[k][i][j].value() * v[j].value();
      cov += xv[i] * term;
    }
    result += s.conformal.value() * cov * xv[k];
  }
  return result;
}

KillingDefect killing_defect(const SurfaceChart& c, const Field& f, Point p) {
  KillingDefect out;
  const double scale = std::exp(-c.u(p));
  for (int n = 0; n < 16; ++n) {
    const double angle = kTwoPi * n / 16.0;
    const Vec2 x{scale * std::cos(angle), scale * std::sin(angle)};
    const double s = killing_symmetrization(c, f, x, p);
    const double box = box_sigma(c, f, x, p);
    if (std::abs(s) > out.max_abs) {
      out.max_abs = std::abs(s);
      out.argmax = x;
    }
    out.max_mismatch = std::max(out.max_mismatch, std::abs(std::abs(s) - 0.5 * std::abs(box)));
    out.max_signed_mismatch =
        std::max(out.max_signed_mismatch, std::abs(s - kKillingSign * 0.5 * box));
  }
  return out;
}

SurfaceChart conformal_rescale(const SurfaceChart& c, const Field& sigma) {
  if (!sigma.basic()) throw Error("conformal rescale requires a basic function");
  SurfaceChart out = c;
  out.u = c.u + sigma;
  out.name = c.name + "+rescaled";
  return out;
}

}  // namespace cr3kit
