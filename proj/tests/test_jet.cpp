#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cr3kit/errors.hpp"
#include "cr3kit/jet.hpp"
#include "finite_diff.hpp"

using namespace cr3kit;

namespace {

Jet random_jet(std::mt19937_64& rng, Point base) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Jet j = Jet::constant(0.0, base);
  for (int k = 0; k < kJetSize; ++k) j.set_coeff(jet_multi_index(k), d(rng));
  return j;
}

void require_close(const Jet& a, const Jet& b, double tol) {
  for (int k = 0; k < kJetSize; ++k) CHECK(a.coeffs()[k] == doctest::Approx(b.coeffs()[k]).epsilon(tol));
}

}  // namespace

TEST_CASE("multi-index layout has 35 graded entries") {
  CHECK(kJetSize == 35);
  for (int k = 0; k < kJetSize; ++k) CHECK(jet_index(jet_multi_index(k)) == k);
  CHECK(jet_index({0, 0, 0}) == 0);
  CHECK(jet_multi_index(kJetSize - 1).degree() == 4);
}

TEST_CASE("x seed squared at x = 3") {
  const Point p{3, 0, 0};
  const Jet x = Jet::variable(Axis::x, p);
  const Jet sq = x * x;
  CHECK(sq.value() == 9.0);
  CHECK(sq.partial({1, 0, 0}) == 6.0);
  CHECK(sq.coeff({2, 0, 0}) == 1.0);
  CHECK(sq.coeff({3, 0, 0}) == 0.0);
}

TEST_CASE("one over one is the identity jet") {
  const Point p{0.2, 0.1, 0};
  const Jet one = Jet::constant(1.0, p);
  const Jet q = one / one;
  CHECK(q.value() == 1.0);
  for (int k = 1; k < kJetSize; ++k) CHECK(q.coeffs()[k] == 0.0);
}

TEST_CASE("(1 + x)^-1 at 0 is the geometric series") {
  const Point p{0, 0, 0};
  const Jet inv = 1.0 / (1.0 + Jet::variable(Axis::x, p));
  for (int n = 0; n <= 4; ++n) CHECK(inv.coeff({n, 0, 0}) == doctest::Approx(n % 2 ? -1.0 : 1.0));
}

TEST_CASE("division by a zero constant term throws") {
  const Point p{0, 0, 0};
  CHECK_THROWS_AS(Jet::constant(1.0, p) / Jet::variable(Axis::x, p), DegenerateJet);
}

TEST_CASE("elementary functions") {
  SUBCASE("exp of zero") {
    const Jet e = exp(Jet::constant(0.0, Point{}));
    CHECK(e.value() == 1.0);
    for (int k = 1; k < kJetSize; ++k) CHECK(e.coeffs()[k] == 0.0);
  }
  SUBCASE("log exp is the identity") {
    const Point p{0.7, 0, 0};
    const Jet x = Jet::variable(Axis::x, p);
    require_close(log(exp(x)), x, 1e-14);
  }
  SUBCASE("sin at pi/6") {
    const Point p{std::numbers::pi / 6, 0, 0};
    const Jet s = sin(Jet::variable(Axis::x, p));
    CHECK(s.value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.partial({1, 0, 0}) == doctest::Approx(std::cos(std::numbers::pi / 6)).epsilon(1e-15));
    CHECK(s.partial({3, 0, 0}) == doctest::Approx(-std::cos(std::numbers::pi / 6)).epsilon(1e-14));
  }
  SUBCASE("domain errors carry the value") {
    const Jet neg = Jet::constant(-2.0, Point{});
    CHECK_THROWS_AS(log(neg), DomainError);
    CHECK_THROWS_AS(sqrt(neg), DomainError);
    try {
      (void)log(neg);
    } catch (const DomainError& e) {
      CHECK(e.value() == -2.0);
    }
  }
  SUBCASE("integer and real powers agree") {
    const Point p{1.3, 0.4, 0};
    const Jet base = Jet::variable(Axis::x, p) + Jet::variable(Axis::y, p);
    require_close(pow(base, 3), base * base * base, 1e-13);
    require_close(pow(base, 3.0), base * base * base, 1e-12);
    require_close(pow(base, 0.5), sqrt(base), 1e-13);
  }
}

TEST_CASE("multiplication is commutative and associative") {
  std::mt19937_64 rng(11);
  const Point p{0.1, 0.2, 0.3};
  for (int trial = 0; trial < 50; ++trial) {
    const Jet a = random_jet(rng, p), b = random_jet(rng, p), c = random_jet(rng, p);
    const Jet ab = a * b, ba = b * a;
    for (int k = 0; k < kJetSize; ++k) CHECK(ab.coeffs()[k] == doctest::Approx(ba.coeffs()[k]).epsilon(1e-14));
    const Jet l = (a * b) * c, r = a * (b * c);
    for (int k = 0; k < kJetSize; ++k) CHECK(l.coeffs()[k] == doctest::Approx(r.coeffs()[k]).epsilon(1e-13));
  }
}

TEST_CASE("chain rule: composition matches arithmetic on polynomials") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const Point p{0.3, -0.2, 0.5};
  const JetVars v = seed(p);
  for (int trial = 0; trial < 30; ++trial) {
    // g: quadratic polynomial in x, y, t; f: quartic in one variable.
    const double g0 = d(rng), gx = d(rng), gy = d(rng), gt = d(rng), gxy = d(rng), gtt = d(rng);
    const Jet g = g0 + gx * v[0] + gy * v[1] + gt * v[2] + gxy * v[0] * v[1] + gtt * v[2] * v[2];
    double c[5];
    for (double& ci : c) ci = d(rng);
    const Jet direct = c[0] + c[1] * g + c[2] * g * g + c[3] * g * g * g + c[4] * g * g * g * g;
    const double s = g.value();
    std::array<double, 5> derivs = {
        c[0] + c[1] * s + c[2] * s * s + c[3] * s * s * s + c[4] * s * s * s * s,
        c[1] + 2 * c[2] * s + 3 * c[3] * s * s + 4 * c[4] * s * s * s,
        2 * c[2] + 6 * c[3] * s + 12 * c[4] * s * s, 6 * c[3] + 24 * c[4] * s, 24 * c[4]};
    require_close(compose(g, derivs), direct, 1e-12);
  }
}

TEST_CASE("differentiation lowers the exact order and guards reads") {
  const Point p{0.5, 0.5, 0};
  Jet f = sin(Jet::variable(Axis::x, p));
  CHECK(f.order() == 4);
  for (int n = 1; n <= 4; ++n) {
    f = f.diff(Axis::x);
    CHECK(f.order() == 4 - n);
  }
  CHECK(f.value() == doctest::Approx(std::sin(0.5)));
  CHECK_THROWS_AS((void)f.diff(Axis::x).value(), std::logic_error);
}

TEST_CASE("jets at different base points do not mix") {
  const Jet a = Jet::variable(Axis::x, Point{0, 0, 0});
  const Jet b = Jet::variable(Axis::x, Point{1, 0, 0});
  CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
}

TEST_CASE("finite difference oracle examples") {
  const Field sq = parse_field("x^2");
  CHECK(oracle::finite_diff(sq, {1, 0, 0}, {2, 0, 0}, 1e-3) == doctest::Approx(2.0).epsilon(1e-6));
  const Field sc = parse_field("sin(x)*cos(y)");
  CHECK(std::abs(oracle::finite_diff(sc, {0, 0, 0}, {1, 1, 0}, 1e-4)) < 1e-7);
  const Field e2u = parse_field("exp(2*log(2/(1+x^2+y^2)))");
  const Point q{0.5, 0, 0};
  CHECK(oracle::finite_diff(e2u, q, {1, 0, 0}, 1e-4) ==
        doctest::Approx(e2u.jet(q).partial({1, 0, 0})).epsilon(1e-5));
  CHECK_THROWS_AS(oracle::finite_diff(sq, q, {3, 0, 0}), std::invalid_argument);
}
