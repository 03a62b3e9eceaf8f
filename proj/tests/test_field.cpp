#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "cr3kit/corpus.hpp"
#include "cr3kit/errors.hpp"
#include "cr3kit/field.hpp"
#include "finite_diff.hpp"

using namespace cr3kit;

namespace {

std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
  switch (k) {
    case 0: return "x";
    case 1: return "y";
    case 2: return std::to_string(1 + pick(rng)) + ".5";
    case 3: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 4: return "(" + random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1) + ")";
    case 5: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) + " / (2 + " + random_expr(rng, depth - 1) + "^2)";
    case 7: return "sin(" + random_expr(rng, depth - 1) + ")";
    case 8: return "-" + random_expr(rng, depth - 1);
    default: return "exp(cos(" + random_expr(rng, depth - 1) + "))";
  }
}

}  // namespace

TEST_CASE("parse examples") {
  const ScalarField f = parse_field("2 + x*y");
  CHECK(f.root().kind == ExprNode::Kind::add);
  CHECK(f.root().lhs->kind == ExprNode::Kind::constant);
  CHECK(f.root().rhs->kind == ExprNode::Kind::mul);
  CHECK(f({3, 4, 0}) == 14.0);

  const ScalarField round = parse_field("log(2/(1+x^2+y^2))");
  CHECK(round.basic());
  CHECK(round({0, 0, 7}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(parse_field("x^2+t")({2, 0, 3}) == 7.0);
  CHECK(parse_field("1 + 0.5*sin(2*3.141592653589793*x)").basic());
  CHECK_FALSE(parse_field("x + t").basic());
}

TEST_CASE("precedence: power above unary minus above products") {
  CHECK(parse_field("-2^2")({0, 0, 0}) == -4.0);
  CHECK(parse_field("2^3^2")({0, 0, 0}) == 512.0);
  CHECK(parse_field("8/2/2")({0, 0, 0}) == 2.0);
  CHECK(parse_field("1 - 2 - 3")({0, 0, 0}) == -4.0);
  CHECK(parse_field("1.5e2 + 2E-1")({0, 0, 0}) == doctest::Approx(150.2));
}

TEST_CASE("parse errors carry offset and expected tokens") {
  try {
    parse_field("sin(q)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(std::string(e.what()).find("q") != std::string::npos);
    CHECK_FALSE(e.expected().empty());
  }
  for (const char* bad : {"", "1 +", "(x", "x)", "sin x", "2 ** 3", "x^y", "foo(1)", "1..2", "#"}) {
    CHECK_THROWS_AS(parse_field(bad), ParseError);
  }
}

TEST_CASE("round trip through print") {
  std::vector<std::string> corpus = {"0", "log(2/(1+x^2+y^2))", "log(2/(1-x^2-y^2))",
                                     "-4*y/(1+x^2+y^2)", "0.05*sin(6.283185307179586*x)*sin(6.283185307179586*y)",
                                     "2 + (1-x^2-y^2)/(1+x^2+y^2)", "-x^2", "abs(x - y)^1.5"};
  for (const ScalarField& f : random_basic_corpus(3, 20, true)) corpus.push_back(f.source());
  for (const std::string& s : corpus) {
    const ScalarField a = parse_field(s);
    const ScalarField b = parse_field(a.print());
    CHECK_MESSAGE(a == b, s);
  }
}

TEST_CASE("jet value equals real evaluation") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 200; ++n) {
    const ScalarField f = parse_field(random_expr(rng, 4));
    const Point p{0.31, -0.27, 0.2};
    const double real = f(p);
    if (std::isfinite(real)) CHECK(f.jet(p).value() == doctest::Approx(real).epsilon(1e-14));
  }
}

TEST_CASE("fuzz: well-formed expressions evaluate, garbage is a ParseError") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 300; ++n) {
    const std::string s = random_expr(rng, 6);
    CHECK_NOTHROW((void)parse_field(s)({0.1, 0.2, 0.3}));
  }
  const std::string alphabet = "xyt0123456789+-*/^().,e sincoxplgqrtab";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 12);
  for (int n = 0; n < 2000; ++n) {
    std::string s;
    const std::size_t l = len(rng);
    for (std::size_t k = 0; k < l; ++k) s += alphabet[pick(rng)];
    try {
      (void)parse_field(s);
    } catch (const ParseError&) {
    } catch (const std::exception& e) {
      FAIL_CHECK("non-parse exception for '" << s << "': " << e.what());
    }
  }
}

TEST_CASE("symbolic derivative agrees with jets") {
  std::mt19937_64 rng(29);
  const Point p{0.21, 0.37, 0.1};
  for (int n = 0; n < 100; ++n) {
    const ScalarField f = parse_field(random_expr(rng, 4));
    const Jet j = f.jet(p);
    if (!std::isfinite(j.value())) continue;
    CHECK(f.derivative(Axis::x)(p) == doctest::Approx(j.partial({1, 0, 0})).epsilon(1e-10));
    CHECK(f.derivative(Axis::y).derivative(Axis::y)(p) ==
          doctest::Approx(j.partial({0, 2, 0})).epsilon(1e-9));
  }
  CHECK(parse_field("abs(x)").derivative(Axis::x)({-2, 0, 0}) == -1.0);
  CHECK(parse_field("sqrt(x)").derivative(Axis::x)({4, 0, 0}) == doctest::Approx(0.25));
}

TEST_CASE("one-forms split into dx and dy coefficients") {
  const OneFormExpr a = parse_one_form("-y*dx + x*dy");
  CHECK(a.dx({1, 2, 0}) == -2.0);
  CHECK(a.dy({1, 2, 0}) == 1.0);
  const OneFormExpr b = parse_one_form("x*dy");
  CHECK(b.dx({1, 2, 0}) == 0.0);
  CHECK_THROWS_AS(parse_one_form("dx*dy"), ParseError);
  CHECK_THROWS_AS(parse_one_form("1 + dx"), ParseError);
}

TEST_CASE("catalog fields: jet partials agree with finite differences") {
  const std::vector<std::string> fields = {"log(2/(1+x^2+y^2))", "log(2/(1-x^2-y^2))",
                                           "4*x/(1+x^2+y^2)", "-4*y/(1-x^2-y^2)",
                                           "0.05*sin(6.283185307179586*x)*sin(6.283185307179586*y)"};
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  const std::vector<MultiIndex> ms = {{1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {1, 1, 0}, {0, 2, 0}};
  for (const std::string& s : fields) {
    const Field f = parse_field(s);
    for (int n = 0; n < 100; ++n) {
      const Point p{d(rng), d(rng), 0};
      const Jet j = f.jet(p);
      for (const MultiIndex& m : ms) {
        const double fd = oracle::finite_diff(f, p, m);
        const bool ok = std::abs(j.partial(m) - fd) < 1e-5 || oracle::relative_gap(j.partial(m), fd) < 1e-4;
        CHECK_MESSAGE(ok, s);
      }
    }
  }
}
