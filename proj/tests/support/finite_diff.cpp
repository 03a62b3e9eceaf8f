#include "finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cr3kit::oracle {
namespace {

Point shifted(Point p, int axis, double d) {
  if (axis == 0) p.x += d;
  if (axis == 1) p.y += d;
  if (axis == 2) p.t += d;
  return p;
}

}  // namespace

double finite_diff(const Field& f, Point p, MultiIndex m, double h) {
  const int n = m.degree();
  if (n > 2 || m.x < 0 || m.y < 0 || m.t < 0) {
    throw std::invalid_argument("finite_diff supports orders up to 2");
  }
  int axes[2] = {0, 0};
  int k = 0;
  for (int i = 0; i < m.x; ++i) axes[k++] = 0;
  for (int i = 0; i < m.y; ++i) axes[k++] = 1;
  for (int i = 0; i < m.t; ++i) axes[k++] = 2;
  if (n == 0) return f(p);
  if (n == 1) return (f(shifted(p, axes[0], h)) - f(shifted(p, axes[0], -h))) / (2 * h);
  if (axes[0] == axes[1]) {
    const int a = axes[0];
    return (f(shifted(p, a, h)) - 2 * f(p) + f(shifted(p, a, -h))) / (h * h);
  }
  const int a = axes[0], b = axes[1];
  const double pp = f(shifted(shifted(p, a, h), b, h));
  const double pm = f(shifted(shifted(p, a, h), b, -h));
  const double mp = f(shifted(shifted(p, a, -h), b, h));
  const double mm = f(shifted(shifted(p, a, -h), b, -h));
  return (pp - pm - mp + mm) / (4 * h * h);
}

double relative_gap(double jet, double fd) {
  return std::abs(jet - fd) / std::max(1.0, std::abs(fd));
}

}  // namespace cr3kit::oracle
