#include "tdnls/expr.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "tdnls/errors.hpp"

namespace tdnls {

struct Expr::Node {
  ExprKind kind = ExprKind::Constant;
  std::optional<GaussianRational> value;
  long exponent = 0;
  Expr a;
  Expr b;
};

// A null node_ stands for the constant zero so that default construction (and
// the empty operands stored inside every Node) never allocates.
Expr::Expr() = default;

Expr::Expr(long value) : Expr(GaussianRational(value)) {}

Expr::Expr(GaussianRational value) {
  if (!value.is_zero()) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Constant;
    n->value = std::move(value);
    node_ = std::move(n);
  }
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::make(ExprKind kind, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::variable() {
  static const Expr var = make(ExprKind::Variable, Expr());
  return var;
}

Expr Expr::pi() {
  static const Expr p = make(ExprKind::Pi, Expr());
  return p;
}

Expr Expr::euler() {
  static const Expr e = make(ExprKind::Euler, Expr());
  return e;
}

Expr Expr::exp(const Expr& a) { return make(ExprKind::Exp, a); }
Expr Expr::sin(const Expr& a) { return make(ExprKind::Sin, a); }
Expr Expr::cos(const Expr& a) { return make(ExprKind::Cos, a); }

Expr Expr::pow(const Expr& base, long exponent) {
  if (exponent == 0)
    return Expr(1);
  if (exponent == 1)
    return base;
  if (base.is_constant() && (exponent > 0 || !base.value().is_zero()))
    return Expr(base.value().pow(exponent));
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Pow;
  n->exponent = exponent;
  n->a = base;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

ExprKind Expr::kind() const { return node_ ? node_->kind : ExprKind::Constant; }

const GaussianRational& Expr::value() const {
  static const GaussianRational zero(0);
  if (!node_)
    return zero;
  if (node_->kind != ExprKind::Constant)
    throw std::logic_error("Expr::value on a non-constant node");
  return *node_->value;
}

long Expr::exponent() const {
  if (kind() != ExprKind::Pow)
    throw std::logic_error("Expr::exponent on a non-power node");
  return node_->exponent;
}

const Expr& Expr::lhs() const {
  if (!node_)
    throw std::logic_error("Expr::lhs on a constant");
  return node_->a;
}

const Expr& Expr::rhs() const {
  if (!node_)
    throw std::logic_error("Expr::rhs on a constant");
  return node_->b;
}

bool Expr::is_zero_constant() const { return is_constant() && value().is_zero(); }
bool Expr::is_one_constant() const { return is_constant() && value().is_one(); }

bool Expr::is_rational_form() const {
  switch (kind()) {
  case ExprKind::Constant:
  case ExprKind::Variable:
    return true;
  case ExprKind::Pi:
  case ExprKind::Euler:
  case ExprKind::Exp:
  case ExprKind::Sin:
  case ExprKind::Cos:
    return false;
  case ExprKind::Neg:
  case ExprKind::Pow:
    return lhs().is_rational_form();
  default:
    return lhs().is_rational_form() && rhs().is_rational_form();
  }
}

std::size_t Expr::size() const {
  std::unordered_set<const Node*> seen;
  std::size_t leaves = 0;
  auto visit = [&](auto&& self, const Expr& e) -> void {
    if (!e.node_) {
      ++leaves;
      return;
    }
    if (!seen.insert(e.node_.get()).second)
      return;
    switch (e.kind()) {
    case ExprKind::Neg:
    case ExprKind::Pow:
    case ExprKind::Exp:
    case ExprKind::Sin:
    case ExprKind::Cos:
      self(self, e.lhs());
      break;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      self(self, e.lhs());
      self(self, e.rhs());
      break;
    default:
      break;
    }
  };
  visit(visit, *this);
  return seen.size() + (leaves > 0 ? 1 : 0);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr(a.value() + b.value());
  if (a.is_zero_constant())
    return b;
  if (b.is_zero_constant())
    return a;
  return Expr::make(ExprKind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr(a.value() - b.value());
  if (b.is_zero_constant())
    return a;
  if (a.is_zero_constant())
    return -b;
  return Expr::make(ExprKind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr(a.value() * b.value());
  if (a.is_zero_constant() || b.is_zero_constant())
    return Expr();
  if (a.is_one_constant())
    return b;
  if (b.is_one_constant())
    return a;
  if (a.is_constant() && a.value() == GaussianRational(-1))
    return -b;
  if (b.is_constant() && b.value() == GaussianRational(-1))
    return -a;
  return Expr::make(ExprKind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant() && !b.value().is_zero()) {
    if (a.is_constant())
      return Expr(a.value() / b.value());
    if (b.is_one_constant())
      return a;
  }
  return Expr::make(ExprKind::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant())
    return Expr(-a.value());
  if (a.kind() == ExprKind::Neg)
    return a.lhs();
  return Expr::make(ExprKind::Neg, a);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case ExprKind::Constant:
    return a.value() == b.value();
  case ExprKind::Variable:
  case ExprKind::Pi:
  case ExprKind::Euler:
    return true;
  case ExprKind::Pow:
    return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
  case ExprKind::Neg:
  case ExprKind::Exp:
  case ExprKind::Sin:
  case ExprKind::Cos:
    return structurally_equal(a.lhs(), b.lhs());
  default:
    return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
  }
}

Expr differentiate(const Expr& e) {
  switch (e.kind()) {
  case ExprKind::Constant:
  case ExprKind::Pi:
  case ExprKind::Euler:
    return Expr();
  case ExprKind::Variable:
    return Expr(1);
  case ExprKind::Neg:
    return -differentiate(e.lhs());
  case ExprKind::Add:
    return differentiate(e.lhs()) + differentiate(e.rhs());
  case ExprKind::Sub:
    return differentiate(e.lhs()) - differentiate(e.rhs());
  case ExprKind::Mul:
    return differentiate(e.lhs()) * e.rhs() + e.lhs() * differentiate(e.rhs());
  case ExprKind::Div: {
    const Expr& num = e.lhs();
    const Expr& den = e.rhs();
    const Expr dden = differentiate(den);
    if (num.is_constant())
      return -(num * dden) / Expr::pow(den, 2);
    return (differentiate(num) * den - num * dden) / Expr::pow(den, 2);
  }
  case ExprKind::Pow: {
    const long n = e.exponent();
    return Expr(n) * Expr::pow(e.lhs(), n - 1) * differentiate(e.lhs());
  }
  case ExprKind::Exp:
    return e * differentiate(e.lhs());
  case ExprKind::Sin:
    return Expr::cos(e.lhs()) * differentiate(e.lhs());
  case ExprKind::Cos:
    return -(Expr::sin(e.lhs()) * differentiate(e.lhs()));
  }
  throw std::logic_error("unhandled expression kind");
}

Expr differentiate(const Expr& e, int order) {
  Expr d = e;
  for (int k = 0; k < order; ++k)
    d = differentiate(d);
  return d;
}

namespace {

using cd = std::complex<double>;

cd checked(cd v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvaluationError(EvaluationError::Kind::Overflow, std::string("non-finite value in ") + what);
  return v;
}

} // namespace

std::complex<double> evaluate(const Expr& root, std::complex<double> t) {
  std::unordered_map<const void*, cd> memo;
  auto eval = [&](auto&& self, const Expr& e) -> cd {
    switch (e.kind()) {
    case ExprKind::Constant:
      return e.value().to_complex();
    case ExprKind::Variable:
      return t;
    case ExprKind::Pi:
      return M_PI;
    case ExprKind::Euler:
      return M_E;
    default:
      break;
    }
    const void* key = e.id();
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    cd v;
    switch (e.kind()) {
    case ExprKind::Neg:
      v = -self(self, e.lhs());
      break;
    case ExprKind::Add:
      v = checked(self(self, e.lhs()) + self(self, e.rhs()), "sum");
      break;
    case ExprKind::Sub:
      v = checked(self(self, e.lhs()) - self(self, e.rhs()), "difference");
      break;
    case ExprKind::Mul:
      v = checked(self(self, e.lhs()) * self(self, e.rhs()), "product");
      break;
    case ExprKind::Div: {
      const cd num = self(self, e.lhs());
      const cd den = self(self, e.rhs());
      if (den == cd(0.0, 0.0))
        throw EvaluationError(EvaluationError::Kind::Pole, "division by zero in " + to_string(e));
      v = checked(num / den, "quotient");
      break;
    }
    case ExprKind::Pow: {
      const cd base = self(self, e.lhs());
      const long n = e.exponent();
      if (n < 0 && base == cd(0.0, 0.0))
        throw EvaluationError(EvaluationError::Kind::Pole, "negative power of zero in " + to_string(e));
      cd acc = 1.0, b = n < 0 ? 1.0 / base : base;
      for (long m = n < 0 ? -n : n; m > 0; m >>= 1) {
        if (m & 1)
          acc *= b;
        b *= b;
      }
      v = checked(acc, "power");
      break;
    }
    case ExprKind::Exp:
      v = checked(std::exp(self(self, e.lhs())), "exp");
      break;
    case ExprKind::Sin:
      v = checked(std::sin(self(self, e.lhs())), "sin");
      break;
    case ExprKind::Cos:
      v = checked(std::cos(self(self, e.lhs())), "cos");
      break;
    default:
      throw std::logic_error("unhandled expression kind");
    }
    memo.emplace(key, v);
    return v;
  };
  return eval(eval, root);
}

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int constant_precedence(const GaussianRational& c) {
  if (!c.is_real())
    return kAtom; // printed inside parentheses
  if (sgn(c.re()) < 0)
    return kUnary;
  if (c.re().get_den() != 1)
    return kProduct;
  return kAtom;
}

std::string print(const Expr& e, int required);

std::string wrap(const std::string& s, int prec, int required) {
  return prec < required ? "(" + s + ")" : s;
}

std::string print(const Expr& e, int required) {
  switch (e.kind()) {
  case ExprKind::Constant: {
    const auto& c = e.value();
    if (!c.is_real())
      return "(" + c.to_string() + ")";
    return wrap(c.to_string(), constant_precedence(c), required);
  }
  case ExprKind::Variable:
    return "t";
  case ExprKind::Pi:
    return "pi";
  case ExprKind::Euler:
    return "e";
  case ExprKind::Neg:
    return wrap("-" + print(e.lhs(), kUnary), kUnary, required);
  case ExprKind::Add:
    return wrap(print(e.lhs(), kSum) + "+" + print(e.rhs(), kSum + 1), kSum, required);
  case ExprKind::Sub:
    return wrap(print(e.lhs(), kSum) + "-" + print(e.rhs(), kSum + 1), kSum, required);
  case ExprKind::Mul:
    return wrap(print(e.lhs(), kProduct) + "*" + print(e.rhs(), kProduct + 1), kProduct, required);
  case ExprKind::Div:
    return wrap(print(e.lhs(), kProduct) + "/" + print(e.rhs(), kProduct + 1), kProduct, required);
  case ExprKind::Pow:
    return wrap(print(e.lhs(), kAtom) + "^" + std::to_string(e.exponent()), kPower, required);
  case ExprKind::Exp:
    return "exp(" + print(e.lhs(), 0) + ")";
  case ExprKind::Sin:
    return "sin(" + print(e.lhs(), 0) + ")";
  case ExprKind::Cos:
    return "cos(" + print(e.lhs(), 0) + ")";
  }
  throw std::logic_error("unhandled expression kind");
}

} // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

} // namespace tdnls
