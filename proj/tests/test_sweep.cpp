#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "cr3kit/quadrature.hpp"
#include "cr3kit/sasaki.hpp"
#include "cr3kit/curvature.hpp"
#include "cr3kit/sweep.hpp"

using namespace cr3kit;

TEST_CASE("grid points are cell centred with fiber samples") {
  const std::vector<Point> g = grid_points({0, 1, 0, 1}, 4, 2, 1.0);
  CHECK(g.size() == 32);
  CHECK(g.front().x == 0.125);
  CHECK(g.front().y == 0.125);
  double tmax = 0;
  for (const Point& p : g) {
    CHECK(p.x > 0);
    CHECK(p.x < 1);
    CHECK(p.t >= 0);
    CHECK(p.t < 1);
    tmax = std::max(tmax, p.t);
  }
  CHECK(tmax > 0);
}

TEST_CASE("random points are reproducible per seed") {
  const Rect r{-0.5, 0.5, -0.5, 0.5};
  const std::vector<Point> a = random_points(r, 50, 7), b = random_points(r, 50, 7), c = random_points(r, 50, 8);
  CHECK(a == b);
  CHECK(a != c);
  for (const Point& p : a) {
    CHECK(std::abs(p.x) <= 0.5);
    CHECK(std::abs(p.y) <= 0.5);
  }
}

TEST_CASE("max_at takes the first index on ties") {
  const MaxAt m = max_at({1.0, 3.0, 2.0, 3.0});
  CHECK(m.value == 3.0);
  CHECK(m.index == 1);
  CHECK(max_at({}).value == 0.0);
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
  const SasakiChart c = build_model("perturbed");
  const std::vector<Point> pts = grid_points(c.base.sample_region, 12, 2);
  auto fn = [&](Point p) { return tanaka_phi(c, {0, 1, 0}, p); };
  const std::vector<double> s = sweep_serial<double>(pts, fn);
  const std::vector<double> q = sweep_parallel<double>(pts, fn);
  REQUIRE(s.size() == q.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == q[i]);
  CHECK(max_at(s).index == max_at(q).index);

  ::setenv("CR3KIT_THREADS", "1", 1);
  CHECK(sweep_thread_limit() == 1);
  const std::vector<double> one = sweep_parallel<double>(pts, fn);
  ::unsetenv("CR3KIT_THREADS");
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == one[i]);
}

TEST_CASE("parallel sweep rethrows the lowest-index failure") {
  const std::vector<Point> pts = grid_points({0, 1, 0, 1}, 4);
  auto fn = [](Point p) -> double {
    if (p.x > 0.5) throw std::runtime_error(std::to_string(p.x) + "," + std::to_string(p.y));
    return p.x;
  };
  std::string serial, parallel;
  try {
    sweep_serial<double>(pts, fn);
  } catch (const std::runtime_error& e) {
    serial = e.what();
  }
  try {
    sweep_parallel<double>(pts, fn);
  } catch (const std::runtime_error& e) {
    parallel = e.what();
  }
  CHECK_FALSE(serial.empty());
  CHECK(serial == parallel);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 32, 64}) {
    const QuadratureRule r = gauss_legendre(n, 0.0, 2.0);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    const int deg = 2 * n - 1;
    double sum = 0, wsum = 0;
    for (int k = 0; k < n; ++k) {
      sum += r.weights[k] * std::pow(r.nodes[k] / 2.0, deg);
      wsum += r.weights[k];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sum == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
  }
}
