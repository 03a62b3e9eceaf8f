#pragma once

// Vector fields, 1-forms and adapted frames represented by their coordinate
// components as jets at a single point.

#include <array>

#include "cr3kit/jet.hpp"
#include "cr3kit/point.hpp"

namespace cr3kit {

// Coordinate components along (d_x, d_y, d_t) of a vector field, or of a
// 1-form on the same basis.
using VecJ = std::array<Jet, 3>;
using FormJ = std::array<Jet, 3>;

// Constant components in the adapted frame (T, E1, E2).
using FrameVec = std::array<double, 3>;

// V.f
Jet derivative(const VecJ& v, const Jet& f);
// [V, W]
VecJ bracket(const VecJ& v, const VecJ& w);
// alpha(V)
Jet pair(const FormJ& alpha, const VecJ& v);
// d alpha(V, W) = V.alpha(W) - W.alpha(V) - alpha([V, W]), no 1/2 factor.
Jet exterior_derivative(const FormJ& alpha, const VecJ& v, const VecJ& w);

VecJ coordinate_field(int axis, Point p);
VecJ add(const VecJ& a, const VecJ& b);
VecJ scale(const Jet& s, const VecJ& v);
VecJ scale(double s, const VecJ& v);

// An orthonormal adapted frame e[0] = T, e[1] = E1, e[2] = E2 with its dual
// coframe theta[0] = eta, theta[1], theta[2]. J acts by J E1 = E2,
// J E2 = -E1, J T = 0.
struct AdaptedFrame {
  Point p;
  std::array<VecJ, 3> e;
  std::array<FormJ, 3> theta;

  const FormJ& eta() const { return theta[0]; }
  VecJ field(const FrameVec& comps) const;
  std::array<Jet, 3> components(const VecJ& v) const;
};

// Inverse of the 3x3 frame matrix; the dual coframe of any frame.
std::array<FormJ, 3> dual_coframe(const std::array<VecJ, 3>& e);

inline FrameVec apply_j(const FrameVec& v) { return {0.0, -v[2], v[1]}; }

}  // namespace cr3kit
