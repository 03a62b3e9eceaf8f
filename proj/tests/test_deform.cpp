#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "closed_forms.hpp"
#include "cr3kit/connection.hpp"
#include "cr3kit/corpus.hpp"
#include "cr3kit/curvature.hpp"
#include "cr3kit/deform.hpp"
#include "cr3kit/errors.hpp"
#include "cr3kit/sweep.hpp"

using namespace cr3kit;

namespace {

constexpr double kPi = std::numbers::pi;
const char* const kSinSin = "sin(2*3.141592653589793*x)*sin(2*3.141592653589793*y)";
const char* const kSphereFamily = "2 + (1-x^2-y^2)/(1+x^2+y^2)";

std::vector<Point> samples(const SasakiChart& c, int n, std::uint64_t seed) {
  return random_points(c.base.sample_region, n, seed, c.fiber_len);
}

double sigma_value(double amp, Point p) { return amp * std::sin(2 * kPi * p.x) * std::sin(2 * kPi * p.y); }

}  // namespace

TEST_CASE("X_f on the Heisenberg chart") {
  const SasakiChart flat = build_model("flat");
  const FrameVec zero = xf_field(flat, parse_field("5"), {0.3, 0.3, 0});
  CHECK(zero == FrameVec{0, 0, 0});
  // h = g on Q here, so X_f = 1/2 J (E1 f, E2 f) = (0, -E2 f / 2, E1 f / 2).
  for (const Point& p : samples(flat, 20, 1)) {
    const FrameVec x = xf_field(flat, parse_field("sin(2*3.141592653589793*x)"), p);
    CHECK(x[0] == 0.0);
    CHECK(std::abs(x[1]) < 1e-15);
    CHECK(x[2] == doctest::Approx(kPi * std::cos(2 * kPi * p.x)).epsilon(1e-12));
  }
  for (const char* tag : {"flat", "round", "hyperbolic", "perturbed"}) {
    const SasakiChart c = build_model(tag);
    for (const Point& p : samples(c, 30, 2)) CHECK(xf_sign_defect(c, parse_field("x*y^2 + sin(x)"), p) < 1e-9);
  }
}

TEST_CASE("CR Reeb defect") {
  const SasakiChart flat = build_model("flat");
  CHECK(cr_reeb_defect(flat, parse_field("3"), {0.2, 0.2, 0}) == 0.0);

  // Flat Hessian in the frame: max(|f_xx - f_yy|, 2 |f_xy|).
  const Field f = parse_field("1 + 0.5*sin(2*3.141592653589793*x)");
  double worst = 0;
  for (const Point& p : grid_points(flat.base.sample_region, 16)) {
    const double d = cr_reeb_defect(flat, f, p);
    CHECK(d == doctest::Approx(0.5 * 4 * kPi * kPi * std::abs(std::sin(2 * kPi * p.x))).epsilon(1e-10));
    worst = std::max(worst, d);
  }
  CHECK(worst > 1e-3);

  const SasakiChart round = build_model("round");
  for (const Point& p : samples(round, 100, 3)) {
    CHECK(cr_reeb_defect(round, parse_field(kSphereFamily), p) < 1e-8);
    CHECK(cr_reeb_defect(round, parse_field("5 - 2*(1-x^2-y^2)/(1+x^2+y^2)"), p) < 1e-8);
    const HessianFit fit = hessian_scalar_fit(round, parse_field(kSphereFamily), p);
    CHECK(fit.residual < 1e-7);
  }
}

TEST_CASE("no basic f on the flat torus is CR Reeb") {
  const SasakiChart flat = build_model("flat");
  const std::vector<Point> grid = grid_points(flat.base.sample_region, 16);
  for (const ScalarField& f : random_basic_corpus(2024, 50, true)) {
    double worst = 0;
    for (const Point& p : grid) worst = std::max(worst, cr_reeb_defect(flat, f, p));
    CHECK_MESSAGE(worst > 1e-6, f.source());
  }
}

TEST_CASE("type-1 deformation along the sphere family") {
  const SasakiChart round = build_model("round");
  const Type1Deformation d = reeb_deform_type1(round, parse_field(kSphereFamily));
  for (const Point& p : samples(round, 50, 4)) {
    CHECK(d.eta_of_reeb_defect(p) < 1e-12);
    CHECK(d.lie_defect(p) < 1e-8);
    CHECK(d.cr_reeb_defect(p) < 1e-8);
    const double fp = d.f()(p);
    CHECK(d.metric_q({0, 1, 0}, {0, 1, 0}, p) == doctest::Approx(1 / fp));
    const AdaptedFrame fr = d.structure().frame(p);
    const ReebDefect rd = reeb_check(fr, fr.e[0]);
    CHECK(rd.eta < 1e-12);
    CHECK(rd.deta < 1e-8);
    CHECK(tw_axiom_suite(tanaka_webster(levi_civita(fr))).worst() < 1e-8);
  }
  CHECK_THROWS_AS(reeb_deform_type1(build_model("flat"), parse_field("sin(2*3.141592653589793*x)")),
                  NonPositive);
}

TEST_CASE("type-1 with non CR Reeb f refuses the Tanaka curvature") {
  const Type1Deformation d = reeb_deform_type1(build_model("flat"), parse_field("1 + 0.5*sin(2*3.141592653589793*x)"));
  const Point p{0.25, 0.4, 0};
  CHECK(d.cr_reeb_defect(p) > 1e-3);
  // T' is still the Reeb field of eta'.
  CHECK(d.lie_defect(p) < 1e-12);
  const LocalGeometry g = LocalGeometry::at(d.structure().frame(p));
  CHECK(tw_axiom_suite(g.tw).worst() > 1e-3);
  CHECK_THROWS_AS(tanaka_phi(g, {0, 1, 0}), ReductionInvalid);
}

TEST_CASE("type-0 deformation") {
  const SasakiChart flat = build_model("flat");
  const Type1Deformation d = deform_type0(flat, 2.0);
  const Point p{0.3, 0.6, 0.2};
  const VecJ t = d.reeb(p);
  CHECK(t[2].value() == doctest::Approx(2.0));
  CHECK(std::abs(t[0].value()) + std::abs(t[1].value()) == 0.0);
  const FormJ eta = d.eta(p), eta0 = contact_form(flat, p);
  for (int a = 0; a < 3; ++a) CHECK(eta[a].value() == doctest::Approx(0.5 * eta0[a].value()));

  const SasakiChart cf = type0_closed_form(flat, 2.0);
  CHECK(cf.fiber_len == 0.5);
  CHECK(cf.base.u(p) == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK(kk_consistency(cf, p) < 1e-12);
  CHECK(std::abs(tanaka_k(cf, p)) < 1e-12);
  CHECK(std::abs(curvature_report(d.structure(), p).k_tanaka) < 1e-12);

  // Scaling the base metric by 1/c multiplies K by c.
  const SasakiChart round = build_model("round");
  const Type1Deformation r = deform_type0(round, 2.0);
  const SasakiChart rcf = type0_closed_form(round, 2.0);
  for (const Point& q : samples(round, 20, 5)) {
    CHECK(gauss_curvature(rcf.base, q) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(curvature_report(r.structure(), q).k_tanaka == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(tanaka_k(rcf, q) == doctest::Approx(-2.0).epsilon(1e-9));
  }
}

TEST_CASE("type-2 deformation on the Heisenberg chart") {
  const SasakiChart flat = build_model("flat");
  SUBCASE("sigma = 0 is the identity") {
    const Type2Deformation d = deform_type2(flat, parse_field("0"));
    const SasakiChart cf = d.closed_form();
    for (const Point& p : samples(flat, 10, 6)) {
      CHECK(cf.base.u(p) == 0.0);
      CHECK(cf.conn.ax(p) == flat.conn.ax(p));
      CHECK(cf.conn.ay(p) == flat.conn.ay(p));
      CHECK(d.contact_volume(p) == doctest::Approx(2.0));
    }
  }
  SUBCASE("small sigma: closed form, contact volume and Sasaki re-verification") {
    const std::string s = std::string("0.01*") + kSinSin;
    const Type2Deformation d = deform_type2(flat, parse_field(s));
    const SasakiChart cf = d.closed_form();
    const SasakianStructure gen = d.generic_structure();
    for (const Point& p : samples(flat, 30, 7)) {
      const double sig = sigma_value(0.01, p);
      CHECK(d.contact_volume(p) == doctest::Approx(2 + 8 * kPi * kPi * sig).epsilon(1e-12));
      CHECK(cf.base.u(p) == doctest::Approx(0.5 * std::log(1 + 4 * kPi * kPi * sig)).epsilon(1e-12));
      CHECK(kk_consistency(cf, p) < 1e-10);
      const ReebDefect rd = d.reeb_defect(p);
      CHECK(rd.eta < 1e-12);
      CHECK(rd.deta < 1e-12);

      const AdaptedFrame fr = gen.frame(p);
      const FrameConnection lc = levi_civita(fr);
      for (int n = 0; n < 4; ++n) {
        const FrameVec x = q_direction(n, 4), jx = apply_j(x);
        const FrameVec nt = lc.covariant(x, {1, 0, 0});
        CHECK(std::abs(nt[0] - jx[0]) + std::abs(nt[1] - jx[1]) + std::abs(nt[2] - jx[2]) < 1e-7);
      }
      const Vec3 v{0.3, -0.2, 0.5}, w{0.1, 0.4, -0.7};
      CHECK(d.metric(v, w, p) == doctest::Approx(metric_eval(cf, v, w, p)).epsilon(1e-12));

      const CurvatureReport closed = curvature_report(d.structure(), p);
      CHECK(std::abs(closed.k_tanaka + closed.K_base) < 1e-8);
      const LocalGeometry gg = LocalGeometry::at(gen.frame(p));
      CHECK(tanaka_k_jet(gg).value() == doctest::Approx(closed.k_tanaka).epsilon(1e-9));
      CHECK(sectional_q(gg) == doctest::Approx(closed.sec_Q).epsilon(1e-9));
    }
  }
  SUBCASE("large sigma is not contact") {
    CHECK_THROWS_AS(deform_type2(flat, parse_field(std::string("10*") + kSinSin)), ContactDegenerate);
    try {
      deform_type2(flat, parse_field(std::string("0.05*") + kSinSin));
      FAIL("expected ContactDegenerate");
    } catch (const ContactDegenerate& e) {
      CHECK(e.volume() < 0);
      CHECK(e.volume() == doctest::Approx(2 - 8 * kPi * kPi * 0.05 * 0.99518).epsilon(1e-2));
    }
  }
  CHECK_THROWS_AS(deform_type2(flat, parse_field("t")), Error);
}

TEST_CASE("fiber integral") {
  const SasakiChart flat = build_model("flat");
  CHECK(fiber_integral(flat, parse_field("1"), {0.2, 0.2}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(fiber_integral(flat, parse_field("sin(2*3.141592653589793*t)"), {0.2, 0.2})) < 1e-12);
  CHECK(fiber_integral(flat, parse_field("1+x^2"), {0.5, 0}) == doctest::Approx(1.25).epsilon(1e-14));
  const Field g = parse_field("x*cos(2*3.141592653589793*t)^2 + y*t");
  const Field gt = parse_field("-4*3.141592653589793*x*cos(2*3.141592653589793*t)*sin(2*3.141592653589793*t) + y");
  // d_t of a fiber-periodic function integrates to zero.
  CHECK(std::abs(fiber_integral(flat, parse_field("-2*3.141592653589793*x*sin(4*3.141592653589793*t)"), {0.7, 0.3})) < 1e-12);
  CHECK(fiber_integral(flat, gt, {0.7, 0.3}) == doctest::Approx(0.3).epsilon(1e-12));
  (void)g;
}

TEST_CASE("Hoelder volume inequality") {
  const SasakiChart flat = build_model("flat");
  const HolderResult one = holder_volume_check(flat, parse_field("1"));
  CHECK(one.holds);
  CHECK(one.equality);
  CHECK(std::abs(one.margin) < 1e-12);

  // int (1 + a sin)^-2 over a period = (1 - a^2)^{-3/2}.
  const HolderResult h = holder_volume_check(flat, parse_field("1 + 0.5*sin(2*3.141592653589793*x)"));
  CHECK(h.holds);
  CHECK_FALSE(h.equality);
  CHECK(h.v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.v_prime == doctest::Approx(std::pow(0.75, -1.5)).epsilon(1e-10));
  CHECK(h.margin > 1e-3);

  CHECK(holder_volume_check(flat, parse_field(std::string("1 + 0.9*") + kSinSin)).holds);

  for (const ScalarField& f : random_basic_corpus(99, 20, true)) {
    const HolderResult par = holder_volume_check(flat, f, 64, true);
    const HolderResult ser = holder_volume_check(flat, f, 64, false);
    CHECK(par.holds);
    CHECK_FALSE(par.equality);
    CHECK(par.margin == ser.margin);
    CHECK(par.v_prime == ser.v_prime);
  }
  CHECK_THROWS_AS(holder_volume_check(build_model("round"), parse_field("1")), NonCompactCell);
}

TEST_CASE("Hopf Reeb orbits") {
  using C = std::complex<double>;
  const C w = std::polar(1.0, 2 * kPi / 3);
  HopfVerdict v = hopf_reeb(C(0.5, 0), C(0.5, 0));
  CHECK(v.closed);
  CHECK(v.order == 1);
  v = hopf_reeb(0.5 * w, 0.25 * w);
  CHECK(v.closed);
  CHECK(v.order == 3);
  CHECK(hopf_reeb(0.25 * w, 0.5 * w).order == 3);
  v = hopf_reeb(std::polar(0.5, 1.0), C(0.5, 0));
  CHECK_FALSE(v.closed);
  CHECK(v.bound_caveat);
  CHECK(rational_denominator(0.375, kRootOfUnityBound) == 8);
  CHECK_FALSE(rational_denominator(1 / (2 * kPi), kRootOfUnityBound).has_value());
}
