#pragma once

// Kaluza-Klein charts of circle bundles over conformal surface charts.
//
// Total space coordinates (x, y, t), fibers along d_t. With a connection
// potential A = Ax dx + Ay dy the contact form is eta = dt + A, the Reeb field
// is T = d_t and the adapted frame is
//
//   E1 = e^{-u} (d_x - Ax d_t),  E2 = e^{-u} (d_y - Ay d_t),  J E1 = E2.
//
// The structure is Sasakian when dA = 2 e^{2u} dx^dy, i.e. d eta(E1, E2) = 2.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "cr3kit/field.hpp"
#include "cr3kit/frame.hpp"
#include "cr3kit/surface.hpp"

namespace cr3kit {

struct ConnectionForm {
  Field ax;
  Field ay;
};

struct SasakiChart {
  std::string name;
  SurfaceChart base;
  ConnectionForm conn;
  double fiber_len = 1.0;
};

// Catalog models: "flat" (Heisenberg chart), "round", "hyperbolic",
// "perturbed" (flat torus with u = 0.05 sin(2 pi x) sin(2 pi y)). A
// "custom:<u>" tag needs an explicit connection, otherwise NotIntegrated.
SasakiChart build_model(const std::string& tag,
                        const std::optional<ConnectionForm>& conn = std::nullopt,
                        double fiber_len = 1.0);

// Ax = 0, Ay(x, y) = int_0^x 2 e^{2u(s, y)} ds, by Gauss-Legendre quadrature
// carried through the jets.
ConnectionForm potential_by_quadrature(const Field& u, int nodes = 32);

Jet connection_curvature(const SasakiChart& c, Point p);  // d_x Ay - d_y Ax
double kk_consistency(const SasakiChart& c, Point p);

FormJ contact_form(const SasakiChart& c, Point p);
AdaptedFrame adapted_frame(const SasakiChart& c, Point p);

// Coordinate components (d_x, d_y, d_t).
using Vec3 = std::array<double, 3>;

using MetricMatrix = std::array<std::array<double, 3>, 3>;

// g(V, W) = eta(V) eta(W) + e^{2u} (Vx Wx + Vy Wy).
double metric_eval(const SasakiChart& c, const Vec3& v, const Vec3& w, Point p);
MetricMatrix metric_matrix(const SasakiChart& c, Point p);
double metric_eval(const MetricMatrix& g, const Vec3& v, const Vec3& w);
// The same metric assembled as eta^2 - 1/2 d eta(J., .) on the Q-parts.
double metric_assembled(const SasakiChart& c, const Vec3& v, const Vec3& w, Point p);
double metric_assembled(const AdaptedFrame& f, const Vec3& v, const Vec3& w);

double d_eta(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y);

struct LeviForm {
  double levi = 0.0;       // eta([X, Y])
  double hermitian = 0.0;  // h(X, Y) = -1/2 d eta(JX, Y)
};
// X and Y are Q-vectors with constant frame components.
LeviForm levi_form(const SasakiChart& c, const FrameVec& x, const FrameVec& y, Point p);
LeviForm levi_form(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y);

// 4N(X, Y) = [JX, JY] - J[JX, Y]^Q - J[X, JY]^Q - [X, Y], frame components.
FrameVec nijenhuis(const SasakiChart& c, const FrameVec& x, const FrameVec& y, Point p);
FrameVec nijenhuis(const AdaptedFrame& f, const FrameVec& x, const FrameVec& y);

struct VectorFieldSpec {
  enum class Basis { coordinate, frame };
  Basis basis = Basis::frame;
  std::array<Field, 3> comps;
};

struct ReebDefect {
  double eta = 0.0;   // |eta(V) - 1|
  double deta = 0.0;  // max_a |d eta(V, e_a)|
};
ReebDefect reeb_check(const SasakiChart& c, const VectorFieldSpec& v, Point p);
ReebDefect reeb_check(const AdaptedFrame& f, const VecJ& v);

// |1/2 d eta(E1, E2) - 1|, the pullback of the base area form.
double area_form_defect(const SasakiChart& c, Point p);

// Largest coefficient of the t-derivative jets of the coordinate metric
// components. Zero means L_T g = 0 through order 3.
double lie_t_metric_defect(const SasakiChart& c, Point p);

// What the connection and curvature pipeline consumes: a base surface (for
// the Gauss curvature) and an adapted orthonormal frame at any point.
struct SasakianStructure {
  std::string name;
  SurfaceChart base;
  std::function<AdaptedFrame(Point)> frame;
  double fiber_len = 1.0;
};

SasakianStructure structure_of(const SasakiChart& c);

}  // namespace cr3kit
