#include "cr3kit/connection.hpp"

#include <algorithm>
#include <cmath>

namespace cr3kit {
namespace {

double max_abs(const FrameVec& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

const FrameVec kBasis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

}  // namespace

FrameCoeffs structure_functions(const AdaptedFrame& f) {
  FrameCoeffs c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j < i) {
        for (int k = 0; k < 3; ++k) c[i][j][k] = -c[j][i][k];
        continue;
      }
      if (i == j) {
        for (int k = 0; k < 3; ++k) c[i][j][k] = Jet::constant(0.0, f.p);
        continue;
      }
      const auto comps = f.components(bracket(f.e[i], f.e[j]));
      for (int k = 0; k < 3; ++k) c[i][j][k] = comps[k];
    }
  }
  return c;
}

FrameVec structure_functions(const SasakiChart& c, int i, int j, Point p) {
  const AdaptedFrame f = adapted_frame(c, p);
  const auto comps = f.components(bracket(f.e[i], f.e[j]));
  return {comps[0].value(), comps[1].value(), comps[2].value()};
}

FrameConnection::FrameConnection(ConnectionKind kind, AdaptedFrame frame, FrameCoeffs structure,
                                 FrameCoeffs gamma)
    : kind_(kind),
      frame_(std::move(frame)),
      structure_(std::move(structure)),
      gamma_(std::move(gamma)) {}

FrameVec FrameConnection::covariant(const FrameVec& x, const FrameVec& y) const {
  FrameVec out{};
  for (int i = 0; i < 3; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < 3; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < 3; ++k) out[k] += x[i] * y[j] * gamma_[i][j][k].value();
    }
  }
  return out;
}

FrameVec FrameConnection::lie_bracket(const FrameVec& x, const FrameVec& y) const {
  FrameVec out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out[k] += x[i] * y[j] * structure_[i][j][k].value();
    }
  }
  return out;
}

FrameVec FrameConnection::torsion(const FrameVec& x, const FrameVec& y) const {
  const FrameVec a = covariant(x, y);
  const FrameVec b = covariant(y, x);
  const FrameVec c = lie_bracket(x, y);
  return {a[0] - b[0] - c[0], a[1] - b[1] - c[1], a[2] - b[2] - c[2]};
}

FrameConnection levi_civita(const AdaptedFrame& f) {
  FrameCoeffs c = structure_functions(f);
  FrameCoeffs gamma;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        gamma[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
      }
    }
  }
  return FrameConnection(ConnectionKind::levi_civita, f, std::move(c), std::move(gamma));
}

FrameConnection levi_civita(const SasakiChart& c, Point p) {
  return levi_civita(adapted_frame(c, p));
}

FrameConnection tanaka_webster(const FrameConnection& lc) {
  FrameCoeffs gamma = lc.gammas();
  for (int q = 1; q <= 2; ++q) {
    const FrameVec jq = apply_j(kBasis[q]);
    for (int k = 0; k < 3; ++k) {
      gamma[q][0][k] -= jq[k];  // nabla_X T
      gamma[0][q][k] -= jq[k];  // nabla_T X
    }
    for (int r = 1; r <= 2; ++r) {
      // g(JE_q, E_r)
      gamma[q][r][0] += jq[r];
    }
  }
  FrameCoeffs structure;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) structure[i][j][k] = lc.structure_jet(i, j, k);
    }
  }
  return FrameConnection(ConnectionKind::tanaka_webster, lc.frame(), std::move(structure),
                         std::move(gamma));
}

FrameConnection tanaka_webster(const SasakiChart& c, Point p) {
  return tanaka_webster(levi_civita(c, p));
}

FrameVec tau_tilde(const FrameConnection& tw, const FrameVec& x) {
  return tw.torsion(kBasis[0], x);
}

double TwAxiomReport::worst() const {
  return std::max({t_parallel, j_parallel, q_preserved, torsion_q, tau_tilde, tau_tilde_anti});
}

TwAxiomReport tw_axiom_suite(const FrameConnection& tw) {
  TwAxiomReport r;
  for (int i = 0; i < 3; ++i) {
    r.t_parallel = std::max(r.t_parallel, max_abs(tw.covariant(kBasis[i], kBasis[0])));
    for (int q = 1; q <= 2; ++q) {
      r.q_preserved = std::max(r.q_preserved, std::abs(tw.covariant(kBasis[i], kBasis[q])[0]));
      // (nabla_i J) E_q = nabla_i (J E_q) - J nabla_i E_q
      const FrameVec a = tw.covariant(kBasis[i], apply_j(kBasis[q]));
      const FrameVec b = apply_j(tw.covariant(kBasis[i], kBasis[q]));
      r.j_parallel = std::max(r.j_parallel, max_abs({a[0] - b[0], a[1] - b[1], a[2] - b[2]}));
    }
  }
  const FrameVec tau12 = tw.torsion(kBasis[1], kBasis[2]);
  const double deta12 = d_eta(tw.frame(), kBasis[1], kBasis[2]);
  r.torsion_q = max_abs({tau12[0] - deta12, tau12[1], tau12[2]});
  const FrameVec t1 = tau_tilde(tw, kBasis[1]);
  const FrameVec t2 = tau_tilde(tw, kBasis[2]);
  r.tau_tilde = std::max(max_abs(t1), max_abs(t2));
  // tau~(J E1) + J tau~(E1), with J E1 = E2.
  const FrameVec jt1 = apply_j(t1);
  r.tau_tilde_anti = max_abs({t2[0] + jt1[0], t2[1] + jt1[1], t2[2] + jt1[2]});
  return r;
}

TwAxiomReport tw_axiom_suite(const SasakiChart& c, Point p) {
  return tw_axiom_suite(tanaka_webster(c, p));
}

}  // namespace cr3kit
