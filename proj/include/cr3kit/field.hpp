#pragma once

// Scalar fields over chart coordinates (x, y, t).
//
// Grammar (standard precedence, ^ binds tighter than unary minus):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          exponent must be constant
//   primary := number | x | y | t | fn '(' expr ')' | '(' expr ')'
//   fn      := exp | log | sin | cos | sqrt | abs
//
// Numbers are decimal literals with an optional exponent. There is no pi
// keyword.

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "cr3kit/jet.hpp"
#include "cr3kit/point.hpp"

namespace cr3kit {

enum class Func { exp, log, sin, cos, sqrt, abs };

struct ExprNode {
  enum class Kind { constant, variable, negate, add, sub, mul, div, pow, call };

  Kind kind = Kind::constant;
  double value = 0.0;  // constant value, or the folded exponent of a pow node
  int variable = 0;    // 0 = x, 1 = y, 2 = t
  Func func = Func::exp;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

bool structurally_equal(const ExprNode& a, const ExprNode& b);

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::shared_ptr<const ExprNode> root, std::string source);

  const ExprNode& root() const { return *root_; }
  std::shared_ptr<const ExprNode> root_ptr() const { return root_; }
  const std::string& source() const { return source_; }

  // True when the expression does not mention t.
  bool basic() const;

  double operator()(Point p) const;
  Jet operator()(const JetVars& vars) const;
  Jet jet(Point p) const { return (*this)(seed(p)); }

  // Symbolic partial derivative, lightly simplified.
  ScalarField derivative(Axis axis) const;

  // Fully parenthesized text that parses back to the same tree.
  std::string print() const;

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return structurally_equal(*a.root_, *b.root_);
  }

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string source_;
};

ScalarField parse_field(std::string_view src);
ScalarField constant_field(double value);
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double a, const ScalarField& b);

// A parsed 1-form "P*dx + Q*dy" split into its coefficient fields.
struct OneFormExpr {
  ScalarField dx;
  ScalarField dy;
};
// Parses an expression that is linear in the symbols dx and dy.
OneFormExpr parse_one_form(std::string_view src);

// A scalar field that is either parsed or computed by code (for example a
// potential obtained by quadrature). Cheap to copy.
class Field {
 public:
  using JetFn = std::function<Jet(const JetVars&)>;

  Field();
  Field(ScalarField f);  // NOLINT(google-explicit-constructor)
  Field(std::string label, bool basic, JetFn fn);

  double operator()(Point p) const;
  Jet operator()(const JetVars& vars) const;
  Jet jet(Point p) const { return (*this)(seed(p)); }

  bool basic() const { return basic_; }
  const std::string& label() const { return label_; }
  const ScalarField* expression() const { return expr_ ? expr_.get() : nullptr; }

 private:
  std::shared_ptr<const ScalarField> expr_;
  JetFn fn_;
  std::string label_;
  bool basic_ = true;
};

Field operator+(const Field& a, const Field& b);

}  // namespace cr3kit
