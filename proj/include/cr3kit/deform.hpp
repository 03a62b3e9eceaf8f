#pragma once

// Deformations of a Kaluza-Klein Sasakian chart:
//   type 0: T' = c T for a constant c > 0, CR structure fixed;
//   type 1: T' = f T + X_f, eta' = eta / f, same CR structure;
//   type 2: eta' = eta + d sigma o J0, same Reeb field T.
// Plus fiber integrals, the Hoelder volume inequality on the flat torus and
// the closed-orbit test for Hopf Reeb fields.

#include <complex>
#include <optional>
#include <string>

#include "cr3kit/curvature.hpp"
#include "cr3kit/sasaki.hpp"

namespace cr3kit {

// X_f = 1/2 J (df|_Q)^sharp, sharp taken with h. Frame components.
FrameVec xf_field(const SasakiChart& c, const Field& f, Point p);
// max over Q-directions of |d eta(X_f, E_a) + df(E_a)|.
double xf_sign_defect(const SasakiChart& c, const Field& f, Point p);

// Hess^Q f(X, Y) = X.Y.f - (nabla_X Y).f, Tanaka-Webster connection.
double hessian_q(const FrameConnection& tw, const Jet& f, const FrameVec& x, const FrameVec& y);

// max(|Hess(E1,E1) - Hess(E2,E2)|, |Hess(E1,E2) + Hess(E2,E1)|); zero iff
// Hess^Q f is a multiple of h.
double cr_reeb_defect(const FrameConnection& tw, const Jet& f);
double cr_reeb_defect(const SasakiChart& c, const Field& f, Point p);

struct HessianFit {
  double lambda = 0.0;    // Hess^Q f ~ lambda h
  double residual = 0.0;  // max |Hess^Q f - lambda h| on frame pairs
};
HessianFit hessian_scalar_fit(const SasakiChart& c, const Field& f, Point p);

class Type1Deformation {
 public:
  Type1Deformation(SasakiChart chart, Field f);

  const SasakiChart& chart() const { return chart_; }
  const Field& f() const { return f_; }

  VecJ reeb(Point p) const;   // T' = f T + X_f
  FormJ eta(Point p) const;   // eta' = eta / f
  // g'|_Q = f^{-1} g|_Q on frame Q-vectors.
  double metric_q(const FrameVec& x, const FrameVec& y, Point p) const;

  double eta_of_reeb_defect(Point p) const;  // |eta'(T') - 1|
  // Largest coordinate component of L_{T'} eta' = d(eta'(T')) + i_{T'} d eta'.
  double lie_defect(Point p) const;
  double cr_reeb_defect(Point p) const;

  // Frame (T', sqrt(f) E1, sqrt(f) E2). The base surface is the original
  // one and only describes the quotient when f is constant.
  SasakianStructure structure() const;

 private:
  SasakiChart chart_;
  Field f_;
};

// Checks f > 0 on a 32 x 32 grid of the sample region; NonPositive otherwise.
Type1Deformation reeb_deform_type1(const SasakiChart& c, const Field& f);
Type1Deformation deform_type0(const SasakiChart& c, double scale);
// eta' = eta / c written in the chart t' = t / c: u' = u - 1/2 log c,
// A' = A / c, fiber length l / c.
SasakiChart type0_closed_form(const SasakiChart& c, double scale);

class Type2Deformation {
 public:
  Type2Deformation(SasakiChart chart, Field sigma);

  const SasakiChart& original() const { return chart_; }
  const Field& sigma() const { return sigma_; }

  FormJ eta(Point p) const;
  // (eta' ^ d eta')(d_x, d_y, d_t)
  double contact_volume(Point p) const;
  // T with E1', E2' spanning ker eta': Gram-Schmidt of the projections
  // Z - eta'(Z) T of E1, E2, normalized by h'.
  AdaptedFrame frame(Point p) const;
  ReebDefect reeb_defect(Point p) const;
  // g' = eta'^2 - 1/2 d eta'(J'., .), coordinate components.
  double metric(const Vec3& v, const Vec3& w, Point p) const;

  // The same structure written as a Kaluza-Klein chart:
  // u' = 1/2 log(e^{2u} - 1/2 lap sigma), A' = A + sigma_y dx - sigma_x dy.
  // Parsed sigma is differentiated symbolically, so the chart keeps full
  // jet order; otherwise two orders are lost.
  SasakiChart closed_form() const;
  SasakianStructure structure() const;  // from closed_form()
  // Built on frame(); its connection is exact through order 1 and its
  // curvature at order 0, which covers k and the connection axioms but not Phi.
  SasakianStructure generic_structure() const;

 private:
  SasakiChart chart_;
  Field sigma_;
};

// Sweeps a grid x grid lattice of the sample region for eta' ^ d eta' > 0;
// ContactDegenerate at the worst point otherwise.
Type2Deformation deform_type2(const SasakiChart& c, const Field& sigma, int grid = 64);

// int_0^fiber_len f(x, y, t) dt.
double fiber_integral(const SasakiChart& c, const Field& f, Vec2 x, int nodes = 64);

struct HolderResult {
  double v = 0.0;              // int lambda
  double v_prime = 0.0;        // int f^-2 lambda, f mean-normalized
  double normalization = 1.0;  // factor applied to f so that int f lambda = v
  double margin = 0.0;         // v' - v
  bool holds = false;          // (int f^-2)(int f)^2 >= v^3 within tolerance
  bool equality = false;       // |v' - v| < tol and f constant
};

inline constexpr double kQuadratureTolerance = 1e-9;

// lambda = 1/2 eta ^ d eta, tensor Gauss-Legendre on the compact cell.
HolderResult holder_volume_check(const SasakiChart& c, const Field& f, int nodes = 64,
                                 bool parallel = true);

struct HopfVerdict {
  bool closed = false;
  std::optional<long> order;
  // Set when a phase was not recognized as rational with denominator <= 1e6;
  // a larger denominator cannot be ruled out.
  bool bound_caveat = false;
};

inline constexpr long kRootOfUnityBound = 1000000;

HopfVerdict hopf_reeb(std::complex<double> alpha, std::complex<double> beta);

// Denominator of a rational approximation of x in [0, 1) within tol, with
// denominator at most `bound`; nullopt if none.
std::optional<long> rational_denominator(double x, long bound, double tol = 1e-12);

}  // namespace cr3kit
