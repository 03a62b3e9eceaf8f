#pragma once

// Truncated multivariate Taylor arithmetic in (x, y, t) up to total order 4.
//
// A Jet stores the Taylor coefficients d^(i+j+k) f / (dx^i dy^j dt^k) / (i! j! k!)
// of a scalar at a base point, for every multi-index with i + j + k <= 4.
// Differentiating a jet shifts its coefficients and lowers the order up to
// which they are exact; order() tracks that, so a pipeline that runs out of
// derivatives fails loudly instead of returning truncated garbage.

#include <array>
#include <cstddef>
#include <iosfwd>

#include "cr3kit/point.hpp"

namespace cr3kit {

inline constexpr int kJetOrder = 4;
inline constexpr int kJetSize = 35;  // C(7, 3)

struct MultiIndex {
  int x = 0;
  int y = 0;
  int t = 0;

  constexpr int degree() const { return x + y + t; }
  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Graded position of a multi-index in the coefficient array.
int jet_index(MultiIndex m);
MultiIndex jet_multi_index(int index);

enum class Axis : int { x = 0, y = 1, t = 2 };

class Jet {
 public:
  Jet() = default;

  static Jet constant(double value, Point base);
  // The coordinate function of `axis`, seeded at `base`.
  static Jet variable(Axis axis, Point base);

  double value() const;
  double coeff(MultiIndex m) const;
  // The partial derivative itself, i.e. coeff(m) * m.x! * m.y! * m.t!.
  double partial(MultiIndex m) const;
  void set_coeff(MultiIndex m, double v);

  // Order up to which the coefficients are exact. Negative once every
  // derivative has been consumed.
  int order() const { return order_; }
  const Point& base() const { return base_; }
  bool anchored() const { return anchored_; }
  const std::array<double, kJetSize>& coeffs() const { return c_; }

  Jet diff(Axis axis) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);
  Jet& operator+=(double b);
  Jet& operator-=(double b);
  Jet& operator*=(double b);
  Jet& operator/=(double b);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

 private:
  void adopt_base(const Jet& b);
  void clear_above_order();

  std::array<double, kJetSize> c_{};
  Point base_{};
  int order_ = kJetOrder;
  // Constants built without a base point (the default jet) combine with any
  // jet; anchored jets must share their base point.
  bool anchored_ = false;
};

// Composition with a univariate function given its derivatives at a.value():
// derivs[n] = f^(n)(a0), n = 0..kJetOrder.
Jet compose(const Jet& a, const std::array<double, kJetOrder + 1>& derivs);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
Jet abs(const Jet& a);
Jet pow(const Jet& a, double exponent);
Jet pow(const Jet& a, int exponent);

// Jets of x, y and t seeded at p.
using JetVars = std::array<Jet, 3>;
JetVars seed(Point p);

std::ostream& operator<<(std::ostream& os, const Jet& j);

}  // namespace cr3kit
