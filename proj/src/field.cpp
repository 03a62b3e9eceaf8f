#include "cr3kit/field.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "cr3kit/errors.hpp"

namespace cr3kit {

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error([&] {
        std::string s = "parse error at offset " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
          s += " (expected one of:";
          for (const auto& e : expected) s += " " + e;
          s += ")";
        }
        return s;
      }()),
      message_(message),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Kind = ExprNode::Kind;

// Variables 3 and 4 are the 1-form symbols dx and dy, only accepted by
// parse_one_form.
constexpr int kDx = 3;
constexpr int kDy = 4;

NodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::constant;
  n->value = v;
  return n;
}

NodePtr make_var(int v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::variable;
  n->variable = v;
  return n;
}

NodePtr make_unary(Kind k, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::call;
  n->func = f;
  n->lhs = std::move(a);
  return n;
}

bool mentions_variable(const ExprNode& n, int var) {
  if (n.kind == Kind::variable) return var < 0 || n.variable == var;
  if (n.lhs && mentions_variable(*n.lhs, var)) return true;
  if (n.rhs && mentions_variable(*n.rhs, var)) return true;
  return false;
}

template <typename T>
T apply_func(Func f, const T& a) {
  using std::abs, std::cos, std::exp, std::log, std::sin, std::sqrt;
  switch (f) {
    case Func::exp:
      return exp(a);
    case Func::log:
      return log(a);
    case Func::sin:
      return sin(a);
    case Func::cos:
      return cos(a);
    case Func::sqrt:
      return sqrt(a);
    case Func::abs:
      return abs(a);
  }
  return a;
}

double checked_real(Func f, double a) {
  if (f == Func::log && !(a > 0.0)) throw DomainError("log of a non-positive value", a);
  if (f == Func::sqrt && a < 0.0) throw DomainError("sqrt of a negative value", a);
  return apply_func(f, a);
}

double real_pow(double a, double e) {
  if (e != std::floor(e) && !(a > 0.0)) {
    throw DomainError("non-integer power of a non-positive value", a);
  }
  return std::pow(a, e);
}

double eval_real(const ExprNode& n, const double* v) {
  switch (n.kind) {
    case Kind::constant:
      return n.value;
    case Kind::variable:
      return v[n.variable];
    case Kind::negate:
      return -eval_real(*n.lhs, v);
    case Kind::add:
      return eval_real(*n.lhs, v) + eval_real(*n.rhs, v);
    case Kind::sub:
      return eval_real(*n.lhs, v) - eval_real(*n.rhs, v);
    case Kind::mul:
      return eval_real(*n.lhs, v) * eval_real(*n.rhs, v);
    case Kind::div:
      return eval_real(*n.lhs, v) / eval_real(*n.rhs, v);
    case Kind::pow:
      return real_pow(eval_real(*n.lhs, v), n.value);
    case Kind::call:
      return checked_real(n.func, eval_real(*n.lhs, v));
  }
  return 0.0;
}

Jet eval_jet(const ExprNode& n, const JetVars& v) {
  switch (n.kind) {
    case Kind::constant: {
      Jet c;
      c += n.value;
      return c;
    }
    case Kind::variable:
      return v.at(n.variable);
    case Kind::negate:
      return -eval_jet(*n.lhs, v);
    case Kind::add:
      return eval_jet(*n.lhs, v) + eval_jet(*n.rhs, v);
    case Kind::sub:
      return eval_jet(*n.lhs, v) - eval_jet(*n.rhs, v);
    case Kind::mul:
      return eval_jet(*n.lhs, v) * eval_jet(*n.rhs, v);
    case Kind::div:
      return eval_jet(*n.lhs, v) / eval_jet(*n.rhs, v);
    case Kind::pow:
      return pow(eval_jet(*n.lhs, v), n.value);
    case Kind::call:
      return apply_func(n.func, eval_jet(*n.lhs, v));
  }
  return {};
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::exp:
      return "exp";
    case Func::log:
      return "log";
    case Func::sin:
      return "sin";
    case Func::cos:
      return "cos";
    case Func::sqrt:
      return "sqrt";
    case Func::abs:
      return "abs";
  }
  return "?";
}

void print_node(const ExprNode& n, std::string& out) {
  static const char* const kVarNames[] = {"x", "y", "t", "dx", "dy"};
  switch (n.kind) {
    case Kind::constant:
      out += format_number(n.value);
      return;
    case Kind::variable:
      out += kVarNames[n.variable];
      return;
    case Kind::negate:
      out += "(-";
      print_node(*n.lhs, out);
      out += ")";
      return;
    case Kind::call:
      out += func_name(n.func);
      out += "(";
      print_node(*n.lhs, out);
      out += ")";
      return;
    default:
      break;
  }
  const char* op = n.kind == Kind::add   ? " + "
                   : n.kind == Kind::sub ? " - "
                   : n.kind == Kind::mul ? " * "
                   : n.kind == Kind::div ? " / "
                                         : "^";
  out += "(";
  print_node(*n.lhs, out);
  out += op;
  print_node(*n.rhs, out);
  out += ")";
}

class Parser {
 public:
  Parser(std::string_view src, bool forms) : src_(src), forms_(forms) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ == src_.size()) fail("empty expression", {"number", "identifier", "(", "-"});
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input", {"+", "-", "*", "/", "^", "end"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Kind::negate, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    NodePtr exponent = unary();
    if (mentions_variable(*exponent, -1)) {
      pos_ = at;
      fail("exponent must be a constant expression", {"number"});
    }
    const double e = eval_real(*exponent, nullptr);
    if (!std::isfinite(e)) {
      pos_ = at;
      fail("exponent is not finite", {"number"});
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::pow;
    n->lhs = std::move(base);
    n->rhs = std::move(exponent);
    n->value = e;
    return n;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input", {"number", "identifier", "("});
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("unbalanced parenthesis", {")"});
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'", {"number", "identifier", "(", "-"});
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text == ".") {
      pos_ = start;
      fail("malformed number '" + text + "'", {"number"});
    }
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return make_var(0);
    if (name == "y") return make_var(1);
    if (name == "t") return make_var(2);
    if (forms_ && name == "dx") return make_var(kDx);
    if (forms_ && name == "dy") return make_var(kDy);
    static const std::pair<std::string_view, Func> kFuncs[] = {
        {"exp", Func::exp}, {"log", Func::log},   {"sin", Func::sin},
        {"cos", Func::cos}, {"sqrt", Func::sqrt}, {"abs", Func::abs}};
    for (const auto& [fname, f] : kFuncs) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after function name", {"("});
        NodePtr arg = expr();
        if (!accept(')')) fail("unbalanced parenthesis", {")"});
        return make_call(f, arg);
      }
    }
    pos_ = start;
    std::vector<std::string> expected = {"x", "y", "t", "exp", "log", "sin", "cos", "sqrt", "abs"};
    if (forms_) {
      expected.push_back("dx");
      expected.push_back("dy");
    }
    fail("unknown identifier " + std::string(name), std::move(expected));
  }

  std::string_view src_;
  bool forms_;
  std::size_t pos_ = 0;
};

// Replaces dx and dy by constants.
NodePtr substitute_forms(const NodePtr& n, double dx, double dy) {
  if (n->kind == Kind::variable) {
    if (n->variable == kDx) return make_const(dx);
    if (n->variable == kDy) return make_const(dy);
    return n;
  }
  if (!n->lhs) return n;
  auto copy = std::make_shared<ExprNode>(*n);
  copy->lhs = substitute_forms(n->lhs, dx, dy);
  if (n->rhs) copy->rhs = substitute_forms(n->rhs, dx, dy);
  return copy;
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::constant && n->value == v; }

NodePtr add_s(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_binary(Kind::add, std::move(a), std::move(b));
}

NodePtr sub_s(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return make_unary(Kind::negate, std::move(b));
  return make_binary(Kind::sub, std::move(a), std::move(b));
}

NodePtr mul_s(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make_binary(Kind::mul, std::move(a), std::move(b));
}

NodePtr div_s(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return a;
  return make_binary(Kind::div, std::move(a), std::move(b));
}

NodePtr pow_s(NodePtr a, double r) {
  if (r == 1.0) return a;
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::pow;
  n->value = r;
  n->lhs = std::move(a);
  return n;
}

NodePtr differentiate(const NodePtr& n, int var) {
  switch (n->kind) {
    case Kind::constant:
      return make_const(0.0);
    case Kind::variable:
      return make_const(n->variable == var ? 1.0 : 0.0);
    case Kind::negate: {
      NodePtr d = differentiate(n->lhs, var);
      return is_const(d, 0.0) ? d : make_unary(Kind::negate, d);
    }
    case Kind::add:
      return add_s(differentiate(n->lhs, var), differentiate(n->rhs, var));
    case Kind::sub:
      return sub_s(differentiate(n->lhs, var), differentiate(n->rhs, var));
    case Kind::mul:
      return add_s(mul_s(differentiate(n->lhs, var), n->rhs),
                   mul_s(n->lhs, differentiate(n->rhs, var)));
    case Kind::div:
      return div_s(sub_s(mul_s(differentiate(n->lhs, var), n->rhs),
                         mul_s(n->lhs, differentiate(n->rhs, var))),
                   pow_s(n->rhs, 2.0));
    case Kind::pow:
      return mul_s(mul_s(make_const(n->value), pow_s(n->lhs, n->value - 1.0)),
                   differentiate(n->lhs, var));
    case Kind::call: {
      NodePtr d = differentiate(n->lhs, var);
      if (is_const(d, 0.0)) return d;
      const NodePtr& a = n->lhs;
      switch (n->func) {
        case Func::exp:
          return mul_s(n, d);
        case Func::log:
          return div_s(d, a);
        case Func::sin:
          return mul_s(make_call(Func::cos, a), d);
        case Func::cos:
          return mul_s(make_unary(Kind::negate, make_call(Func::sin, a)), d);
        case Func::sqrt:
          return div_s(d, mul_s(make_const(2.0), n));
        case Func::abs:
          return mul_s(div_s(a, n), d);
      }
    }
  }
  return make_const(0.0);
}

}  // namespace

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::constant:
      return a.value == b.value;
    case Kind::variable:
      return a.variable == b.variable;
    case Kind::call:
      if (a.func != b.func) return false;
      break;
    case Kind::pow:
      if (a.value != b.value) return false;
      break;
    default:
      break;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

ScalarField::ScalarField(std::shared_ptr<const ExprNode> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

bool ScalarField::basic() const { return !mentions_variable(*root_, 2); }

double ScalarField::operator()(Point p) const {
  const double v[3] = {p.x, p.y, p.t};
  return eval_real(*root_, v);
}

Jet ScalarField::operator()(const JetVars& vars) const { return eval_jet(*root_, vars); }

ScalarField ScalarField::derivative(Axis axis) const {
  static const char* names[] = {"x", "y", "t"};
  const int var = static_cast<int>(axis);
  return ScalarField(differentiate(root_, var), "d/d" + std::string(names[var]) + " (" + source_ + ")");
}

std::string ScalarField::print() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

ScalarField parse_field(std::string_view src) {
  Parser parser(src, false);
  return ScalarField(parser.parse(), std::string(src));
}

ScalarField constant_field(double value) {
  return ScalarField(make_const(value), format_number(value));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_binary(Kind::add, a.root_ptr(), b.root_ptr()),
                     "(" + a.source() + ") + (" + b.source() + ")");
}

ScalarField operator*(double a, const ScalarField& b) {
  return ScalarField(make_binary(Kind::mul, make_const(a), b.root_ptr()),
                     format_number(a) + " * (" + b.source() + ")");
}

OneFormExpr parse_one_form(std::string_view src) {
  Parser parser(src, true);
  const NodePtr root = parser.parse();
  OneFormExpr form{ScalarField(substitute_forms(root, 1.0, 0.0), std::string(src) + " [dx]"),
                   ScalarField(substitute_forms(root, 0.0, 1.0), std::string(src) + " [dy]")};
  // Linearity in (dx, dy): f(0,0) = 0 and f(a,b) = a f(1,0) + b f(0,1) at
  // a few probe points.
  const ScalarField zero(substitute_forms(root, 0.0, 0.0), "");
  const ScalarField mixed(substitute_forms(root, 2.0, -3.0), "");
  const Point probes[] = {{0.3, -0.2, 0.1}, {-0.45, 0.35, 0.0}, {0.12, 0.61, 0.7}};
  for (const Point& q : probes) {
    double z = 0.0, m = 0.0, a = 0.0, b = 0.0;
    try {
      z = zero(q);
      m = mixed(q);
      a = form.dx(q);
      b = form.dy(q);
    } catch (const DomainError&) {
      continue;
    }
    const double scale = 1.0 + std::abs(a) + std::abs(b);
    if (std::abs(z) > 1e-12 * scale || std::abs(m - (2.0 * a - 3.0 * b)) > 1e-9 * scale) {
      throw ParseError("1-form is not linear in dx, dy", 0, {"P*dx + Q*dy"});
    }
  }
  return form;
}

Field::Field() : Field(constant_field(0.0)) {}

Field::Field(ScalarField f)
    : expr_(std::make_shared<const ScalarField>(std::move(f))),
      label_(expr_->source()),
      basic_(expr_->basic()) {
  auto e = expr_;
  fn_ = [e](const JetVars& v) { return (*e)(v); };
}

Field::Field(std::string label, bool basic, JetFn fn)
    : fn_(std::move(fn)), label_(std::move(label)), basic_(basic) {}

double Field::operator()(Point p) const {
  if (expr_) return (*expr_)(p);
  return fn_(seed(p)).value();
}

Jet Field::operator()(const JetVars& vars) const { return fn_(vars); }

Field operator+(const Field& a, const Field& b) {
  if (a.expression() && b.expression()) return Field(*a.expression() + *b.expression());
  return Field("(" + a.label() + ") + (" + b.label() + ")", a.basic() && b.basic(),
               [a, b](const JetVars& v) { return a(v) + b(v); });
}

}  // namespace cr3kit
