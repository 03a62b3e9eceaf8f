#pragma once

// Conformal surface charts (x, y) with metric e^{2u} (dx^2 + dy^2).

#include <array>
#include <string>

#include "cr3kit/field.hpp"
#include "cr3kit/jet.hpp"
#include "cr3kit/point.hpp"

namespace cr3kit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Rotation by +90 degrees; the complex structure of a conformal chart.
inline Vec2 rotate_j(Vec2 v) { return {-v.y, v.x}; }

struct Domain {
  enum class Shape { plane, disk };
  Shape shape = Shape::plane;
  double radius = 0.0;

  bool contains(double x, double y) const {
    return shape == Shape::plane || x * x + y * y < radius * radius;
  }
};

// Axis-aligned rectangle in (x, y).
struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

struct SurfaceChart {
  std::string name;
  Field u;  // conformal factor, basic
  Domain domain;
  // Where random and grid samples are drawn from.
  Rect sample_region;
  // Compact fundamental cell of a torus quotient, when the model has one.
  bool has_compact_cell = false;
  Rect cell;
};

// Catalog: "flat", "round", "hyperbolic", "perturbed" and "custom:<expr>".
SurfaceChart make_surface(const std::string& tag);
SurfaceChart custom_surface(const std::string& name, Field u);

// Throws DomainError when (x, y) lies outside the chart.
void check_in_domain(const SurfaceChart& c, Point p);

// Jets of the surface metric data at a point.
struct SurfaceJets {
  Jet u;
  Jet conformal;  // e^{2u}
  // christoffel[k][i][j] = Gamma^k_ij in the coordinate basis (d_x, d_y).
  std::array<std::array<std::array<Jet, 2>, 2>, 2> christoffel;
};

SurfaceJets surface_jets(const SurfaceChart& c, Point p);

double gauss_curvature(const SurfaceChart& c, Point p);
// Gauss curvature as a jet; exact to order 2 when u is a polynomial-exact field.
Jet gauss_curvature_jet(const SurfaceChart& c, Point p);

// (df)^sharp in chart components.
Vec2 surf_grad_sharp(const SurfaceChart& c, const Field& f, Point p);

// The surface box operator X.JX.f + JX.X.f - (nabla_X JX).f - (nabla_JX X).f
// with X extended by constant chart components.
double box_sigma(const SurfaceChart& c, const Field& f, Vec2 x, Point p);
double box_sigma(const SurfaceChart& c, const SurfaceJets& s, const Jet& f, Vec2 x);

// s(X) = g(nabla_X J(df)^sharp, X).
double killing_symmetrization(const SurfaceChart& c, const Field& f, Vec2 x, Point p);

// Empirical relation s(X) = kKillingSign * box_sigma(X) / 2.
inline constexpr double kKillingSign = -1.0;

struct KillingDefect {
  double max_abs = 0.0;      // max over the sweep of |s(X)|
  Vec2 argmax;               // unit direction reaching it
  double max_mismatch = 0.0;  // max over the sweep of | |s(X)| - |box(X)|/2 |
  double max_signed_mismatch = 0.0;  // max of |s(X) - kKillingSign * box(X) / 2|
};

// Sweeps 16 unit directions.
KillingDefect killing_defect(const SurfaceChart& c, const Field& f, Point p);

SurfaceChart conformal_rescale(const SurfaceChart& c, const Field& sigma);

}  // namespace cr3kit
