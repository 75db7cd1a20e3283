#pragma once

#include <string>
#include <vector>

#include "tdnls/expr.hpp"
#include "tdnls/identity.hpp"

// Singularity analysis of the pair
//   i u_t + u_xx + F u^2 v = 0,   -i v_t + v_xx + F v^2 u = 0
// with u = sum u_n xi^(n-1), v = sum v_n xi^(n-1) about xi = x + psi(t).
namespace tdnls::painleve {

/// Dominant balance u ~ u0 xi^-p, v ~ v0 xi^-q.
struct LeadingOrder {
  int p = 1;
  int q = 1;
  /// The function u0*v0 is forced to equal: -2/F.
  Expr product_constraint;
};

/// Throws DomainError when F is identically zero.
LeadingOrder leading_order(const Expr& F);

/// Determinant of the linear system fixing (u_n, v_n): n(n-4)(n-3)(n+1).
long long resonance_determinant(long long n);

struct Resonance {
  int index;
  /// n = -1 reflects the freedom in choosing the singular manifold itself.
  bool universal;
};

/// All integer roots of the resonance determinant, ascending.
std::vector<Resonance> resonances();

struct LaurentCoefficients {
  Expr v0, u1, v1, u2, v2;
};

/// Closed forms for the first expansion coefficients given a free u0.
LaurentCoefficients laurent_coefficients(const Expr& F, const Expr& psi, const Expr& u0);

/// Compatibility data at the resonances n = 3 and n = 4.
struct Compatibility {
  Expr A, B;
  /// n = 3: A3 v0 - B3 u0.  n = 4: v0 A4 + u0 B4.
  Expr residual;
};

Compatibility compatibility_n3_terms(const Expr& F, const Expr& psi, const Expr& u0);
Compatibility compatibility_n4_terms(const Expr& F, const Expr& psi, const Expr& u0);

/// A3 v0 - B3 u0; vanishes identically for every admissible input.
Expr compatibility_n3(const Expr& F, const Expr& psi, const Expr& u0);
/// v0 A4 + u0 B4; vanishes identically exactly when 2 F_t^2 - F F_tt does.
Expr compatibility_n4(const Expr& F, const Expr& psi, const Expr& u0);

/// 2 F_t^2 - F F_tt.
Expr constraint_residual(const Expr& F);
/// d^2/dt^2 (1/F), the equivalent form of the constraint.
Expr inverse_curvature(const Expr& F);

enum class Verdict { Pass, Fail };

struct PainleveReport {
  LeadingOrder leading;
  std::vector<Resonance> resonances;
  double n3_residual_norm = 0.0;
  ZeroTest n3_test;
  ZeroTest n4_test;
  bool n4_identically_zero = false;
  Expr constraint_residual;
  /// Canonical text of the residual (its normal form when F is rational).
  std::string constraint_residual_text;
  ZeroTest constraint_test;
  ZeroTest inverse_curvature_test;
  Verdict verdict = Verdict::Fail;
  std::string notes;
};

struct CheckOptions {
  /// Singular-manifold shift psi(t), xi = x + psi(t).
  Expr psi = parse("t^2");
  /// Free leading coefficient.
  Expr u0 = Expr(1);
  SamplingOptions sampling;
};

/// Full integrability check for the coefficient F(t). Pass iff
/// 2 F_t^2 - F F_tt vanishes identically (exactly when F is rational).
PainleveReport theorem1_check(const Expr& F, const CheckOptions& opts = {});

} // namespace tdnls::painleve
