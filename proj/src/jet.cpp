#include "cr3kit/jet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cr3kit/errors.hpp"

namespace cr3kit {
namespace {

struct Tables {
  std::array<MultiIndex, kJetSize> index_to_mi{};
  // Flattened (i, j) -> i + j for |i| + |j| <= kJetOrder.
  std::array<int, kJetSize * kJetSize> product{};
  std::array<int, kJetSize> degree{};

  Tables() {
    int n = 0;
    for (int d = 0; d <= kJetOrder; ++d) {
      for (int i = d; i >= 0; --i) {
        for (int j = d - i; j >= 0; --j) {
          index_to_mi[n] = {i, j, d - i - j};
          degree[n] = d;
          ++n;
        }
      }
    }
    product.fill(-1);
    for (int a = 0; a < kJetSize; ++a) {
      for (int b = 0; b < kJetSize; ++b) {
        const MultiIndex ma = index_to_mi[a];
        const MultiIndex mb = index_to_mi[b];
        const MultiIndex sum{ma.x + mb.x, ma.y + mb.y, ma.t + mb.t};
        if (sum.degree() <= kJetOrder) product[a * kJetSize + b] = lookup(sum);
      }
    }
  }

  int lookup(MultiIndex m) const {
    for (int k = 0; k < kJetSize; ++k) {
      if (index_to_mi[k] == m) return k;
    }
    return -1;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

// Offset of the first coefficient of each degree.
constexpr std::array<int, kJetOrder + 2> kDegreeStart = {0, 1, 4, 10, 20, 35};

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

int jet_index(MultiIndex m) {
  if (m.x < 0 || m.y < 0 || m.t < 0 || m.degree() > kJetOrder) {
    throw std::out_of_range("multi-index outside the order-4 jet");
  }
  // Within degree d the order is by decreasing x, then decreasing y.
  const int d = m.degree();
  const int r = d - m.x;  // y + t
  return kDegreeStart[d] + r * (r + 1) / 2 + m.t;
}

MultiIndex jet_multi_index(int index) { return tables().index_to_mi.at(index); }

Jet Jet::constant(double value, Point base) {
  Jet j;
  j.c_[0] = value;
  j.base_ = base;
  j.anchored_ = true;
  return j;
}

Jet Jet::variable(Axis axis, Point base) {
  Jet j;
  j.base_ = base;
  j.anchored_ = true;
  switch (axis) {
    case Axis::x:
      j.c_[0] = base.x;
      break;
    case Axis::y:
      j.c_[0] = base.y;
      break;
    case Axis::t:
      j.c_[0] = base.t;
      break;
  }
  j.c_[1 + static_cast<int>(axis)] = 1.0;
  return j;
}

double Jet::value() const {
  if (order_ < 0) throw std::logic_error("jet has no exact coefficients left");
  return c_[0];
}

double Jet::coeff(MultiIndex m) const {
  if (m.degree() > order_) {
    throw std::logic_error("jet coefficient requested beyond its exact order");
  }
  return c_[jet_index(m)];
}

double Jet::partial(MultiIndex m) const {
  return coeff(m) * factorial(m.x) * factorial(m.y) * factorial(m.t);
}

void Jet::set_coeff(MultiIndex m, double v) { c_[jet_index(m)] = v; }

Jet Jet::diff(Axis axis) const {
  Jet r;
  r.base_ = base_;
  r.anchored_ = anchored_;
  r.order_ = order_ - 1;
  const int ax = static_cast<int>(axis);
  for (int k = 0; k < kDegreeStart[kJetOrder]; ++k) {
    MultiIndex m = tables().index_to_mi[k];
    int* slot = ax == 0 ? &m.x : ax == 1 ? &m.y : &m.t;
    const int power = *slot + 1;
    *slot = power;
    r.c_[k] = power * c_[jet_index(m)];
  }
  r.clear_above_order();
  return r;
}

void Jet::adopt_base(const Jet& b) {
  if (!b.anchored_) return;
  if (!anchored_) {
    base_ = b.base_;
    anchored_ = true;
  } else if (!(base_ == b.base_)) {
    throw std::invalid_argument("jets at different base points cannot be combined");
  }
}

void Jet::clear_above_order() {
  const int keep = std::clamp(order_ + 1, 0, kJetOrder + 1);
  std::fill(c_.begin() + kDegreeStart[keep], c_.end(), 0.0);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& b) {
  adopt_base(b);
  for (int k = 0; k < kJetSize; ++k) c_[k] += b.c_[k];
  order_ = std::min(order_, b.order_);
  clear_above_order();
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  adopt_base(b);
  for (int k = 0; k < kJetSize; ++k) c_[k] -= b.c_[k];
  order_ = std::min(order_, b.order_);
  clear_above_order();
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.base_ = a.base_;
  r.anchored_ = a.anchored_;
  r.adopt_base(b);
  r.order_ = std::min(a.order_, b.order_);
  if (r.order_ < 0) return r;
  const Tables& tab = tables();
  const int n = kDegreeStart[r.order_ + 1];
  for (int i = 0; i < n; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    const int limit = kDegreeStart[r.order_ - tab.degree[i] + 1];
    const int* row = &tab.product[i * kJetSize];
    for (int j = 0; j < limit; ++j) r.c_[row[j]] += ai * b.c_[j];
  }
  return r;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }

Jet operator/(const Jet& a, const Jet& b) {
  if (b.c_[0] == 0.0) throw DegenerateJet("division by a jet with zero constant term");
  const double b0 = b.c_[0];
  std::array<double, kJetOrder + 1> d{};
  // d^n/dx^n (1/x) = (-1)^n n! / x^(n+1)
  double p = 1.0 / b0;
  for (int n = 0; n <= kJetOrder; ++n) {
    d[n] = ((n % 2) ? -1.0 : 1.0) * factorial(n) * p;
    p /= b0;
  }
  return a * compose(b, d);
}

Jet operator/(double a, const Jet& b) {
  Jet numerator;
  numerator += a;
  return numerator / b;
}

Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet& Jet::operator+=(double b) {
  c_[0] += b;
  return *this;
}

Jet& Jet::operator-=(double b) {
  c_[0] -= b;
  return *this;
}

Jet& Jet::operator*=(double b) {
  for (double& v : c_) v *= b;
  return *this;
}

Jet& Jet::operator/=(double b) {
  for (double& v : c_) v /= b;
  return *this;
}

Jet compose(const Jet& a, const std::array<double, kJetOrder + 1>& derivs) {
  Jet delta = a;
  delta.set_coeff({}, 0.0);
  Jet result = a;
  result *= 0.0;
  result += derivs[0];
  Jet power = delta;
  for (int n = 1; n <= std::max(a.order(), 0); ++n) {
    result += power * (derivs[n] / factorial(n));
    if (n < a.order()) power = power * delta;
  }
  return result;
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e, e, e});
}

Jet log(const Jet& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw DomainError("log of a non-positive value", v);
  return compose(a, {std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v),
                     -6.0 / (v * v * v * v)});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {s, c, -s, -c, s});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {c, -s, -c, s, c});
}

Jet sqrt(const Jet& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw DomainError("sqrt of a non-positive value", v);
  return pow(a, 0.5);
}

Jet abs(const Jet& a) {
  const double v = a.value();
  if (v == 0.0) throw DomainError("abs is not differentiable at", v);
  return v > 0.0 ? a : -a;
}

Jet pow(const Jet& a, double exponent) {
  if (exponent == std::floor(exponent) && std::abs(exponent) < 1024.0) {
    return pow(a, static_cast<int>(exponent));
  }
  const double v = a.value();
  if (!(v > 0.0)) throw DomainError("non-integer power of a non-positive value", v);
  return exp(log(a) * exponent);
}

Jet pow(const Jet& a, int exponent) {
  if (exponent < 0) return 1.0 / pow(a, -exponent);
  Jet result = a;
  result *= 0.0;
  result += 1.0;
  Jet base = a;
  // Square-and-multiply.
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

JetVars seed(Point p) {
  return {Jet::variable(Axis::x, p), Jet::variable(Axis::y, p), Jet::variable(Axis::t, p)};
}

std::ostream& operator<<(std::ostream& os, const Jet& j) {
  os << "Jet{order=" << j.order() << ", value=" << j.coeffs()[0] << "}";
  return os;
}

}  // namespace cr3kit
