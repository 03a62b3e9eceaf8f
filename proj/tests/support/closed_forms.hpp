#pragma once
// Hand-derived formulas used as test oracles. Derivatives come from the
// finite-difference oracle or from closed forms, never from the jet library.

#include <cmath>
#include <functional>
#include <numbers>

#include "cr3kit/point.hpp"

namespace cr3kit::oracle {

using Real2 = std::function<double(double, double)>;

struct Partials {
  double fx, fy, fxx, fxy, fyy;
};

inline Partials central(const Real2& f, double x, double y, double h = 1e-4) {
  Partials d;
  d.fx = (f(x + h, y) - f(x - h, y)) / (2 * h);
  d.fy = (f(x, y + h) - f(x, y - h)) / (2 * h);
  d.fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
  d.fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
  d.fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
  return d;
}

// Gauss curvature of e^{2u}(dx^2 + dy^2): K = -e^{-2u} (u_xx + u_yy).
inline double gauss_k(const Real2& u, double x, double y) {
  const Partials d = central(u, x, y);
  return -std::exp(-2 * u(x, y)) * (d.fxx + d.fyy);
}

// Surface box operator for constant chart components X = (a, b):
// box_X f = 2 Hess f(X, JX), JX = (-b, a), with the conformal Christoffels
//   G^x_xx = u_x, G^y_xx = -u_y, G^x_xy = u_y, G^y_xy = u_x, G^x_yy = -u_x, G^y_yy = u_y.
inline double conformal_box(const Real2& u, const Real2& f, double a, double b, double x, double y) {
  const Partials du = central(u, x, y), df = central(f, x, y);
  const double hxx = df.fxx - du.fx * df.fx + du.fy * df.fy;
  const double hxy = df.fxy - du.fy * df.fx - du.fx * df.fy;
  const double hyy = df.fyy + du.fx * df.fx - du.fy * df.fy;
  const double c = -b, d = a;
  return 2 * (a * c * hxx + (a * d + b * c) * hxy + b * d * hyy);
}

// Perturbed flat torus factor.
inline double perturbed_u(double x, double y) {
  return 0.05 * std::sin(2 * std::numbers::pi * x) * std::sin(2 * std::numbers::pi * y);
}

// Its Gauss curvature, Delta u = -8 pi^2 u.
inline double perturbed_k_gauss(double x, double y) {
  return 8 * std::numbers::pi * std::numbers::pi * perturbed_u(x, y) *
         std::exp(-2 * perturbed_u(x, y));
}

// Composite Simpson rule for int_a^b g.
inline double simpson(const std::function<double(double)>& g, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3;
}

}  // namespace cr3kit::oracle
