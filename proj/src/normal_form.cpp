#include <unordered_map>

#include "tdnls/errors.hpp"
#include "tdnls/expr.hpp"

namespace tdnls {

std::optional<RationalFunction> rational_normal_form(const Expr& root) {
  if (!root.is_rational_form())
    return std::nullopt;
  std::unordered_map<const void*, RationalFunction> memo;
  auto nf = [&](auto&& self, const Expr& e) -> RationalFunction {
    switch (e.kind()) {
    case ExprKind::Constant:
      return RationalFunction(Poly(e.value()));
    case ExprKind::Variable:
      return RationalFunction(Poly::t());
    default:
      break;
    }
    if (auto it = memo.find(e.id()); it != memo.end())
      return it->second;
    RationalFunction r;
    switch (e.kind()) {
    case ExprKind::Neg:
      r = -self(self, e.lhs());
      break;
    case ExprKind::Add:
      r = self(self, e.lhs()) + self(self, e.rhs());
      break;
    case ExprKind::Sub:
      r = self(self, e.lhs()) - self(self, e.rhs());
      break;
    case ExprKind::Mul:
      r = self(self, e.lhs()) * self(self, e.rhs());
      break;
    case ExprKind::Div:
      r = self(self, e.lhs()) / self(self, e.rhs());
      break;
    case ExprKind::Pow:
      r = self(self, e.lhs()).pow(e.exponent());
      break;
    default:
      throw std::logic_error("transcendental node in rational form");
    }
    memo.emplace(e.id(), r);
    return r;
  };
  return nf(nf, root);
}

Expr to_expr(const Poly& p) {
  // Horner form keeps the tree linear in the degree.
  Expr acc;
  const Expr t = Expr::variable();
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * t + Expr(p.coeff(k));
  return acc;
}

Expr to_expr(const RationalFunction& r) {
  if (r.is_polynomial())
    return to_expr(r.numerator());
  return to_expr(r.numerator()) / to_expr(r.denominator());
}

} // namespace tdnls
