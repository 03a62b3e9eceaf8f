#pragma once

#include <array>
#include <string>

#include "cr3kit/connection.hpp"
#include "cr3kit/sasaki.hpp"

namespace cr3kit {

// R(E_i, E_j) E_l = nabla_i nabla_j E_l - nabla_j nabla_i E_l - nabla_[E_i,E_j] E_l,
// stored as component(i, j, l, m) = g(R(E_i, E_j) E_l, E_m).
class CurvatureTensor {
 public:
  explicit CurvatureTensor(const FrameConnection& conn);

  const Jet& component_jet(int i, int j, int l, int m) const { return r_[i][j][l][m]; }
  double component(int i, int j, int l, int m) const { return r_[i][j][l][m].value(); }
  // R(X, Y) Z for constant frame components.
  FrameVec apply(const FrameVec& x, const FrameVec& y, const FrameVec& z) const;

 private:
  std::array<std::array<std::array<std::array<Jet, 3>, 3>, 3>, 3> r_;
};

FrameVec curvature_tensor(const FrameConnection& conn, const FrameVec& x, const FrameVec& y,
                          const FrameVec& z);

// Both connections and their curvature at one point.
struct LocalGeometry {
  FrameConnection lc;
  FrameConnection tw;
  CurvatureTensor r_lc;
  CurvatureTensor r_tw;

  static LocalGeometry at(const AdaptedFrame& frame);
  const AdaptedFrame& frame() const { return lc.frame(); }
};

// k = h(R(X, JX) X, JX) for X = E1, with the Tanaka-Webster curvature.
Jet tanaka_k_jet(const LocalGeometry& g);
double tanaka_k(const SasakiChart& c, Point p);

// g(R0(E1, E2) E2, E1) for the Levi-Civita connection.
double sectional_q(const LocalGeometry& g);
double sectional_q(const SasakiChart& c, Point p);

// X.JX.f + JX.X.f - (nabla_X JX).f - (nabla_JX X).f, X a Q-vector with
// constant frame components and f given by its jet.
double box_m(const FrameConnection& conn, const Jet& f, const FrameVec& x);
double box_m(const SasakiChart& c, ConnectionKind kind, const Field& f, const FrameVec& x,
             Point p);

// Above this tau~ the CR-Reeb form of the Tanaka curvature is refused.
inline constexpr double kReductionTolerance = 1e-8;

// Phi(X, X)(T) = -1/2 box_X k with the Tanaka-Webster connection.
double tanaka_phi(const LocalGeometry& g, const FrameVec& x);
double tanaka_phi(const SasakiChart& c, const FrameVec& x, Point p);

// Unit Q-directions cos(a) E1 + sin(a) E2, a = pi n / count.
FrameVec q_direction(int n, int count);

struct CurvatureReport {
  double K_base = 0.0;
  double k_tanaka = 0.0;
  double sec_Q = 0.0;
  double phi_T_component = 0.0;  // Phi(E1, E1)(T)
  double box_k_max = 0.0;        // max over 8 directions of |box_X k|
  Point point;
};

CurvatureReport curvature_report(const SasakianStructure& s, Point p);

struct FlatnessVerdict {
  bool flat = true;
  double max_phi = 0.0;
  Point where;
  FrameVec direction{};
  double max_trace_defect = 0.0;  // max |Phi(X,X) + Phi(JX,JX)|
  int points = 0;
};

inline constexpr double kFlatnessThreshold = 1e-7;

// Sweeps an n x n grid of the sample region and 8 directions at each point.
FlatnessVerdict flatness_test(const SasakianStructure& s, int grid, bool parallel = true);

}  // namespace cr3kit
