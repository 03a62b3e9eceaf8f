#include <doctest.h>

#include <cmath>
#include <random>

#include "closed_forms.hpp"
#include "cr3kit/connection.hpp"
#include "cr3kit/errors.hpp"
#include "cr3kit/sasaki.hpp"
#include "cr3kit/sweep.hpp"

using namespace cr3kit;

namespace {

const char* const kCatalog[] = {"flat", "round", "hyperbolic", "perturbed"};

Vec3 values(const VecJ& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

std::vector<Point> samples(const SasakiChart& c, int n, std::uint64_t seed) {
  return random_points(c.base.sample_region, n, seed, c.fiber_len);
}

}  // namespace

TEST_CASE("catalog potentials and the Heisenberg frame") {
  const SasakiChart flat = build_model("flat");
  const Point p{0.3, -0.4, 0.7};
  CHECK(flat.conn.ax(p) == 0.4);
  CHECK(flat.conn.ay(p) == 0.3);
  const AdaptedFrame f = adapted_frame(flat, p);
  // E1 = d_x + y d_t, E2 = d_y - x d_t.
  const Vec3 e1 = values(f.e[1]), e2 = values(f.e[2]), t = values(f.e[0]);
  CHECK(e1 == Vec3{1, 0, -0.4});
  CHECK(e2 == Vec3{0, 1, -0.3});
  CHECK(t == Vec3{0, 0, 1});

  const SasakiChart round = build_model("round");
  const Point q{0.2, 0.1, 0};
  const double r2 = 0.05, emu = (1 + r2) / 2;
  const Vec3 r1 = values(adapted_frame(round, q).e[1]);
  CHECK(r1[0] == doctest::Approx(emu));
  CHECK(r1[1] == 0.0);
  CHECK(r1[2] == doctest::Approx(emu * 4 * 0.1 / (1 + r2)));
}

TEST_CASE("perturbed potential matches an independent Simpson integral") {
  const SasakiChart c = build_model("perturbed");
  for (const Point& p : samples(c, 10, 13)) {
    const double ay = oracle::simpson(
        [&](double s) { return 2 * std::exp(2 * oracle::perturbed_u(s, p.y)); }, 0.0, p.x);
    CHECK(c.conn.ay(p) == doctest::Approx(ay).epsilon(1e-12));
    CHECK(c.conn.ax(p) == 0.0);
  }
}

TEST_CASE("Kaluza-Klein consistency") {
  for (const char* tag : kCatalog) {
    const SasakiChart c = build_model(tag);
    for (const Point& p : samples(c, 100, 1)) CHECK(kk_consistency(c, p) < 1e-10);
  }
  const SasakiChart bad = build_model("flat", ConnectionForm{parse_field("0"), parse_field("x")});
  for (const Point& p : samples(bad, 20, 2)) CHECK(kk_consistency(bad, p) == doctest::Approx(1.0));

  SasakiChart stale = build_model("flat");
  stale.base = make_surface("perturbed");
  double worst = 0;
  for (const Point& p : samples(stale, 50, 3)) worst = std::max(worst, kk_consistency(stale, p));
  CHECK(worst > 0.1);
}

TEST_CASE("custom charts need a connection") {
  CHECK_THROWS_AS(build_model("custom:0.1*x"), NotIntegrated);
  CHECK_NOTHROW(build_model("custom:0.5*log(3)", ConnectionForm{parse_field("-3*y"), parse_field("3*x")}));
  CHECK_THROWS_AS(build_model("flat", std::nullopt, 0.0), Error);
}

TEST_CASE("adapted frame is orthonormal under both metric assemblies") {
  for (const char* tag : kCatalog) {
    const SasakiChart c = build_model(tag);
    for (const Point& p : samples(c, 100, 4)) {
      const AdaptedFrame f = adapted_frame(c, p);
      const MetricMatrix g = metric_matrix(c, p);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const double expect = a == b ? 1.0 : 0.0;
          const Vec3 va = values(f.e[a]), vb = values(f.e[b]);
          CHECK(std::abs(metric_eval(g, va, vb) - expect) < 1e-12);
          CHECK(std::abs(metric_assembled(f, va, vb) - expect) < 1e-12);
        }
      }
      CHECK(std::abs(pair(f.eta(), f.e[0]).value() - 1) < 1e-15);
      CHECK(std::abs(pair(f.eta(), f.e[1]).value()) < 1e-15);
      CHECK(std::abs(pair(f.eta(), f.e[2]).value()) < 1e-15);
    }
  }
}

TEST_CASE("d eta calibration, area form, Levi form and Nijenhuis") {
  const SasakiChart flat = build_model("flat");
  const AdaptedFrame hf = adapted_frame(flat, {0.4, 0.9, 0.1});
  CHECK(d_eta(hf, {0, 1, 0}, {0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));
  const FrameVec br = structure_functions(flat, 1, 2, {0.4, 0.9, 0.1});
  CHECK(br[0] == doctest::Approx(-2.0));
  CHECK(br[1] == 0.0);
  CHECK(br[2] == 0.0);

  const FrameVec ro = structure_functions(build_model("round"), 1, 2, {0, 0, 0});
  CHECK(std::abs(ro[1]) < 1e-15);
  CHECK(std::abs(ro[2]) < 1e-15);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1, 1);
  for (const char* tag : kCatalog) {
    const SasakiChart c = build_model(tag);
    for (const Point& p : samples(c, 100, 5)) {
      const AdaptedFrame f = adapted_frame(c, p);
      CHECK(area_form_defect(c, p) < 1e-10);
      CHECK(lie_t_metric_defect(c, p) == 0.0);
      for (int a = 0; a < 3; ++a) {
        const FrameVec tb = structure_functions(c, 0, a == 0 ? 1 : a, p);
        CHECK(std::abs(tb[0]) + std::abs(tb[1]) + std::abs(tb[2]) == 0.0);
      }
      const FrameVec x{0, d(rng), d(rng)}, y{0, d(rng), d(rng)};
      CHECK(std::abs(d_eta(f, apply_j(x), apply_j(y)) - d_eta(f, x, y)) < 1e-10);
      const LeviForm lf = levi_form(f, x, y), lj = levi_form(f, apply_j(x), apply_j(y));
      CHECK(std::abs(lf.hermitian - lj.hermitian) < 1e-10);
      const FrameVec n = nijenhuis(f, {0, 1, 0}, {0, 0, 1});
      CHECK(std::abs(n[0]) + std::abs(n[1]) + std::abs(n[2]) < 1e-9);
    }
  }
}

TEST_CASE("reeb check examples") {
  const SasakiChart c = build_model("round");
  const Point p{0.1, 0.3, 0.2};
  auto frame_spec = [](const char* a, const char* b, const char* cc) {
    VectorFieldSpec v;
    v.comps = {parse_field(a), parse_field(b), parse_field(cc)};
    return v;
  };
  ReebDefect r = reeb_check(c, frame_spec("1", "0", "0"), p);
  CHECK(r.eta < 1e-15);
  CHECK(r.deta < 1e-12);
  r = reeb_check(c, frame_spec("1", "0.1", "0"), p);
  CHECK(r.deta == doctest::Approx(0.2).epsilon(1e-12));
  r = reeb_check(c, frame_spec("2", "0", "0"), p);
  CHECK(r.eta == doctest::Approx(1.0));
  VectorFieldSpec coord;
  coord.basis = VectorFieldSpec::Basis::coordinate;
  coord.comps = {parse_field("0"), parse_field("0"), parse_field("1")};
  r = reeb_check(c, coord, p);
  CHECK(r.eta < 1e-15);
  CHECK(r.deta < 1e-12);
}
