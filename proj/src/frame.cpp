#include "cr3kit/frame.hpp"

namespace cr3kit {
Jet derivative(const VecJ& v, const Jet& f) {
  Jet out = v[0] * f.diff(Axis::x);
  out += v[1] * f.diff(Axis::y);
  out += v[2] * f.diff(Axis::t);
  return out;
}

VecJ bracket(const VecJ& v, const VecJ& w) {
  VecJ out;
  for (int c = 0; c < 3; ++c) out[c] = derivative(v, w[c]) - derivative(w, v[c]);
  return out;
}

Jet pair(const FormJ& alpha, const VecJ& v) {
  Jet out = alpha[0] * v[0];
  out += alpha[1] * v[1];
  out += alpha[2] * v[2];
  return out;
}

Jet exterior_derivative(const FormJ& alpha, const VecJ& v, const VecJ& w) {
  return derivative(v, pair(alpha, w)) - derivative(w, pair(alpha, v)) -
         pair(alpha, bracket(v, w));
}

VecJ coordinate_field(int axis, Point p) {
  VecJ v = {Jet::constant(0.0, p), Jet::constant(0.0, p), Jet::constant(0.0, p)};
  v[axis] += 1.0;
  return v;
}

VecJ add(const VecJ& a, const VecJ& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

VecJ scale(const Jet& s, const VecJ& v) { return {s * v[0], s * v[1], s * v[2]}; }

VecJ scale(double s, const VecJ& v) { return {v[0] * s, v[1] * s, v[2] * s}; }

VecJ AdaptedFrame::field(const FrameVec& comps) const {
  VecJ out = scale(comps[0], e[0]);
  out = add(out, scale(comps[1], e[1]));
  return add(out, scale(comps[2], e[2]));
}

std::array<Jet, 3> AdaptedFrame::components(const VecJ& v) const {
  return {pair(theta[0], v), pair(theta[1], v), pair(theta[2], v)};
}

std::array<FormJ, 3> dual_coframe(const std::array<VecJ, 3>& e) {
  // Matrix M with columns e[a]; the coframe rows are the rows of M^{-1}.
  auto m = [&](int row, int col) -> const Jet& { return e[col][row]; };
  std::array<std::array<Jet, 3>, 3> cof;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
      const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
      cof[r][c] = m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
    }
  }
  const Jet det = m(0, 0) * cof[0][0] + m(0, 1) * cof[0][1] + m(0, 2) * cof[0][2];
  const Jet inv_det = 1.0 / det;
  std::array<FormJ, 3> theta;
  // (M^{-1})_{a c} = cof[c][a] / det
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 3; ++c) theta[a][c] = cof[c][a] * inv_det;
  }
  return theta;
}

}  // namespace cr3kit
