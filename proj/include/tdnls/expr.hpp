#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "tdnls/poly.hpp"
#include "tdnls/rational.hpp"

namespace tdnls {

enum class ExprKind {
  Constant, // exact element of Q(i)
  Variable, // t
  Pi,
  Euler, // e
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow, // integer exponent
  Exp,
  Sin,
  Cos,
};

/// Immutable symbolic expression in the single real variable t.
///
/// Nodes are shared and never modified after construction, so copies are
/// cheap and an Expr can be read from several threads at once. The arithmetic
/// operators fold constants and drop neutral elements (x+0, x*1, x*0, x^1, x^0);
/// nothing beyond that is simplified.
class Expr {
public:
  /// The constant zero.
  Expr();
  Expr(long value);
  Expr(GaussianRational value);

  static Expr constant(GaussianRational value) { return Expr(std::move(value)); }
  static Expr variable();
  static Expr pi();
  static Expr euler();
  static Expr imaginary_unit() { return Expr(GaussianRational::i()); }
  static Expr exp(const Expr& a);
  static Expr sin(const Expr& a);
  static Expr cos(const Expr& a);
  static Expr pow(const Expr& base, long exponent);

  ExprKind kind() const;
  /// Valid for Constant only.
  const GaussianRational& value() const;
  /// Valid for Pow only.
  long exponent() const;
  /// First operand of unary and binary nodes.
  const Expr& lhs() const;
  /// Second operand of binary nodes.
  const Expr& rhs() const;

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_zero_constant() const;
  bool is_one_constant() const;
  /// True when no exp/sin/cos/pi/e node occurs anywhere in the tree.
  bool is_rational_form() const;
  /// Number of distinct nodes.
  std::size_t size() const;
  /// Identity of the underlying node, stable for the lifetime of the tree.
  const void* id() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  /// Structural identity of the trees.
  friend bool structurally_equal(const Expr& a, const Expr& b);

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(ExprKind kind, Expr a, Expr b = Expr());
  std::shared_ptr<const Node> node_;
};

/// Parses infix formula text over t. Operators + - * / ^, parentheses,
/// numeric literals (decimal literals are read as exact rationals), the names
/// t, pi, e, i and the functions exp, sin, cos. `^` is right-associative,
/// binds tighter than unary minus, and needs an integer-valued constant
/// exponent. Throws ParseError.
Expr parse(std::string_view source);

/// Text that parse() turns back into an equivalent tree.
std::string to_string(const Expr& e);

/// d e / dt by structural rules.
Expr differentiate(const Expr& e);
Expr differentiate(const Expr& e, int order);

/// Numeric value at t. Throws EvaluationError(Pole) on division by zero and
/// EvaluationError(Overflow) whenever an intermediate value is not finite.
std::complex<double> evaluate(const Expr& e, std::complex<double> t);
inline std::complex<double> evaluate(const Expr& e, double t) { return evaluate(e, std::complex<double>(t, 0.0)); }

/// Canonical num/den form when e is rational in t, std::nullopt ("not
/// rational") when e contains exp/sin/cos/pi/e. Throws DomainError when e
/// divides by an identically zero subexpression.
std::optional<RationalFunction> rational_normal_form(const Expr& e);

/// Builds an Expr from a polynomial or rational function.
Expr to_expr(const Poly& p);
Expr to_expr(const RationalFunction& r);

} // namespace tdnls
