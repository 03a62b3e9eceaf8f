#pragma once

// Connections in the orthonormal adapted frame (E0 = T, E1, E2).
//
// Coefficients are kept as jets at the frame's base point:
//   structure(i, j, k) = theta^k([E_i, E_j])
//   gamma(i, j, k)     = g(nabla_{E_i} E_j, E_k)
// so covariant derivatives of the coefficients stay available to the
// curvature code.

#include <array>

#include "cr3kit/frame.hpp"
#include "cr3kit/sasaki.hpp"

namespace cr3kit {

enum class ConnectionKind { levi_civita, tanaka_webster };

using FrameCoeffs = std::array<std::array<std::array<Jet, 3>, 3>, 3>;

FrameCoeffs structure_functions(const AdaptedFrame& f);
// [E_i, E_j] at p in frame components.
FrameVec structure_functions(const SasakiChart& c, int i, int j, Point p);

class FrameConnection {
 public:
  FrameConnection(ConnectionKind kind, AdaptedFrame frame, FrameCoeffs structure,
                  FrameCoeffs gamma);

  ConnectionKind kind() const { return kind_; }
  const AdaptedFrame& frame() const { return frame_; }
  const Jet& structure_jet(int i, int j, int k) const { return structure_[i][j][k]; }
  const Jet& gamma_jet(int i, int j, int k) const { return gamma_[i][j][k]; }
  double gamma(int i, int j, int k) const { return gamma_[i][j][k].value(); }
  const FrameCoeffs& gammas() const { return gamma_; }

  // nabla_X Y for fields with constant frame components.
  FrameVec covariant(const FrameVec& x, const FrameVec& y) const;
  // [X, Y] for fields with constant frame components.
  FrameVec lie_bracket(const FrameVec& x, const FrameVec& y) const;
  // nabla_X Y - nabla_Y X - [X, Y]
  FrameVec torsion(const FrameVec& x, const FrameVec& y) const;

 private:
  ConnectionKind kind_;
  AdaptedFrame frame_;
  FrameCoeffs structure_;
  FrameCoeffs gamma_;
};

// Koszul formula in an orthonormal frame:
// 2 Gamma^k_ij = c^k_ij - c^i_jk + c^j_ki.
FrameConnection levi_civita(const AdaptedFrame& f);
FrameConnection levi_civita(const SasakiChart& c, Point p);

// nabla = nabla0 + correction:
//   nabla_T T = nabla0_T T,        nabla_X T = nabla0_X T - JX,
//   nabla_T X = nabla0_T X - JX,   nabla_X Y = nabla0_X Y + g(JX, Y) T.
FrameConnection tanaka_webster(const FrameConnection& lc);
FrameConnection tanaka_webster(const SasakiChart& c, Point p);

// tau~(X) = tau(T, X).
FrameVec tau_tilde(const FrameConnection& tw, const FrameVec& x);

struct TwAxiomReport {
  double t_parallel = 0.0;      // max |nabla T|
  double j_parallel = 0.0;      // max |(nabla J) on Q|
  double q_preserved = 0.0;     // max |T-component of nabla_. Y|, Y in Q
  double torsion_q = 0.0;       // max |tau(E1, E2) - d eta(E1, E2) T|
  double tau_tilde = 0.0;       // max |tau~(E1)|, |tau~(E2)|
  double tau_tilde_anti = 0.0;  // max |tau~(JX) + J tau~(X)|

  double worst() const;
};

TwAxiomReport tw_axiom_suite(const FrameConnection& tw);
TwAxiomReport tw_axiom_suite(const SasakiChart& c, Point p);

}  // namespace cr3kit
