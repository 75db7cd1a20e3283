#include <doctest.h>

#include <random>

#include "tdnls/errors.hpp"
#include "tdnls/painleve.hpp"

using namespace tdnls;
using namespace tdnls::painleve;

namespace {

bool exactly_zero(const Expr& e) {
  const auto nf = rational_normal_form(e);
  REQUIRE(nf);
  return nf->is_zero();
}

bool same(const Expr& a, const Expr& b) { return exactly_zero(a - b); }

// Direct substitution of the truncated Laurent series into
//   i u_t + u_xx + F u^2 v = 0,  -i v_t + v_xx + F v^2 u = 0
// order by order, independent of the closed forms in the library. The linear
// system at order n is
//   [(n-1)(n-2) - 4] u_n + F u0^2 v_n = -Ru
//   F v0^2 u_n + [(n-1)(n-2) - 4] v_n = -Rv.
struct Recursion {
  Expr F, psi_t;
  std::vector<Expr> u, v;

  Recursion(const Expr& F_, const Expr& psi, const Expr& u0) : F(F_), psi_t(differentiate(psi)) {
    u.push_back(u0);
    v.push_back(Expr(-2) / (F * u0));
  }

  Expr at(const std::vector<Expr>& w, int k) const { return k >= 0 && k < static_cast<int>(w.size()) ? w[k] : Expr(); }

  // Lower-order parts of the two equations at order n (u_n, v_n excluded).
  std::pair<Expr, Expr> lower(int n) const {
    const Expr I = Expr::imaginary_unit();
    Expr ru = I * (differentiate(at(u, n - 2)) + Expr(n - 2) * at(u, n - 1) * psi_t);
    Expr rv = -I * (differentiate(at(v, n - 2)) + Expr(n - 2) * at(v, n - 1) * psi_t);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int k = n - i - j;
        if (k < 0 || k >= n)
          continue;
        ru = ru + F * at(u, i) * at(u, j) * at(v, k);
        rv = rv + F * at(v, i) * at(v, j) * at(u, k);
      }
    return {ru, rv};
  }

  void solve(int n) {
    const auto [ru, rv] = lower(n);
    const Expr c((n - 1) * (n - 2) - 4);
    const Expr a12 = F * u[0] * u[0], a21 = F * v[0] * v[0];
    const Expr det = c * c - a12 * a21;
    u.push_back((-ru * c + a12 * rv) / det);
    v.push_back((-rv * c + a21 * ru) / det);
  }

  // Resonant order: returns the compatibility residual and fixes u_n = free.
  Expr resonant(int n, const Expr& free) {
    const auto [ru, rv] = lower(n);
    const int c = (n - 1) * (n - 2) - 4;
    // row2 = (F v0^2 / c) row1 when the system is singular
    const Expr lambda = F * v[0] * v[0] / Expr(c);
    const Expr residual = -rv + lambda * ru;
    u.push_back(free);
    v.push_back((-ru - Expr(c) * free) / (F * u[0] * u[0]));
    return residual;
  }
};

Expr random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), deg(0, 2);
  auto poly = [&] {
    Expr p;
    for (int k = deg(rng); k >= 0; --k)
      p = p + Expr(c(rng)) * Expr::pow(Expr::variable(), k);
    return p;
  };
  Expr num = poly(), den = poly();
  if (rational_normal_form(num)->is_zero())
    num = Expr(1);
  if (rational_normal_form(den)->is_zero())
    den = Expr(3);
  return num / den;
}

} // namespace

TEST_CASE("leading order balance") {
  CHECK(leading_order(parse("1")).p == 1);
  CHECK(leading_order(parse("1")).q == 1);
  CHECK(same(leading_order(parse("1")).product_constraint, Expr(-2)));
  CHECK(same(leading_order(parse("2")).product_constraint, Expr(-1)));
  CHECK(same(leading_order(parse("1/t")).product_constraint, parse("-2*t")));
  const Expr F = parse("1/(t^2+3)");
  CHECK(same(leading_order(F).product_constraint * F, Expr(-2)));
  CHECK_THROWS_AS(leading_order(parse("t-t")), DomainError);
}

TEST_CASE("resonance determinant") {
  CHECK(resonance_determinant(0) == 0);
  CHECK(resonance_determinant(3) == 0);
  CHECK(resonance_determinant(4) == 0);
  CHECK(resonance_determinant(2) == 12);
  std::vector<int> roots;
  for (int n = -100; n <= 100; ++n)
    if (resonance_determinant(n) == 0)
      roots.push_back(n);
  CHECK(roots == std::vector<int>{-1, 0, 3, 4});
  const auto r = resonances();
  REQUIRE(r.size() == 4);
  CHECK(r[0].index == -1);
  CHECK(r[0].universal);
  for (const auto& s : r)
    CHECK(resonance_determinant(s.index) == 0);
}

TEST_CASE("determinant matches the order-n linear system") {
  // det [[c, F u0^2], [F v0^2, c]] with F u0 v0 = -2 is c^2 - 4
  for (long long n = -10; n <= 10; ++n) {
    const long long c = (n - 1) * (n - 2) - 4;
    CHECK(c * c - 4 == resonance_determinant(n));
  }
}

TEST_CASE("Laurent coefficients agree with direct substitution") {
  const Expr F = parse("1/(2*t+3)"), psi = parse("t^3-t"), u0 = parse("t^2+1");
  Recursion rec(F, psi, u0);
  rec.solve(1);
  rec.solve(2);
  const auto c = laurent_coefficients(F, psi, u0);
  CHECK(same(c.v0, rec.v[0]));
  CHECK(same(c.u1, rec.u[1]));
  CHECK(same(c.v1, rec.v[1]));
  CHECK(same(c.u2, rec.u[2]));
  CHECK(same(c.v2, rec.v[2]));
}

TEST_CASE("Laurent coefficient examples") {
  const auto flat = laurent_coefficients(parse("1"), parse("5"), parse("1"));
  CHECK((flat.u1.is_zero_constant() || exactly_zero(flat.u1)));
  CHECK(exactly_zero(flat.v1));
  const auto lin = laurent_coefficients(parse("3"), parse("2*t"), parse("7"));
  CHECK(same(lin.u2, Expr(-7 * 4) / Expr(12)));
  const Expr F = parse("t/(t+4)"), psi = parse("t^2"), u0 = parse("1/(t-2)");
  const auto c = laurent_coefficients(F, psi, u0);
  const Expr xt = differentiate(psi);
  CHECK(same(c.u1 * c.v1, u0 * c.v0 * xt * xt / Expr(4)));
}

TEST_CASE("n=3 compatibility holds identically") {
  CHECK(exactly_zero(compatibility_n3(parse("1"), parse("t^2"), parse("1"))));
  CHECK(exactly_zero(compatibility_n3(parse("1/t"), parse("t"), parse("t"))));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr F = random_rational(rng), psi = random_rational(rng), u0 = random_rational(rng);
    CHECK_MESSAGE(exactly_zero(compatibility_n3(F, psi, u0)), to_string(F), " ", to_string(psi), " ", to_string(u0));
  }
}

TEST_CASE("n=3 compatibility from the raw recursion") {
  const Expr F = parse("1/(t^2+2)"), psi = parse("t^3"), u0 = parse("(t+1)/(t-3)");
  Recursion rec(F, psi, u0);
  rec.solve(1);
  rec.solve(2);
  CHECK(exactly_zero(rec.resonant(3, parse("t"))));
}

TEST_CASE("n=4 compatibility matches the raw recursion") {
  const Expr psi = parse("t^2+t"), u0 = parse("t+2");
  for (const char* f : {"1/(2*t+3)", "1", "1/t", "t", "t^2", "1/(t^2+1)"}) {
    const Expr F = parse(f);
    const bool lib_zero = exactly_zero(compatibility_n4(F, psi, u0));
    const bool constraint_zero = exactly_zero(constraint_residual(F));
    for (const char* free : {"0", "t^2-1"}) {
      Recursion rec(F, psi, u0);
      rec.solve(1);
      rec.solve(2);
      REQUIRE(exactly_zero(rec.resonant(3, parse(free))));
      const Expr r4 = rec.resonant(4, Expr());
      CHECK_MESSAGE(exactly_zero(r4) == constraint_zero, f);
    }
    CHECK_MESSAGE(lib_zero == constraint_zero, f);
  }
}

TEST_CASE("n=4 residual is the constraint up to -1/F^3") {
  for (const char* f : {"t", "t^2", "1/(t^2+1)", "(t+1)/(t-2)"}) {
    const Expr F = parse(f);
    const Expr r = compatibility_n4(F, parse("t^3"), parse("t-5"));
    CHECK(same(r, -constraint_residual(F) / Expr::pow(F, 3)));
  }
  const auto Ft = compatibility_n4(parse("t"), parse("0"), parse("1"));
  CHECK(std::abs(evaluate(Ft, 1.0)) > 0.5);
  CHECK(exactly_zero(compatibility_n4(parse("7/3"), parse("t^2"), parse("t"))));
}

TEST_CASE("theorem 1 verdicts") {
  for (const char* f : {"1/t", "1/(2*t+3)", "1/(-t+5)", "1/1", "1"}) {
    const auto r = theorem1_check(parse(f));
    CHECK_MESSAGE(r.verdict == Verdict::Pass, f);
    CHECK(r.n4_identically_zero);
    CHECK(r.constraint_test.method == ZeroTestMethod::Exact);
    CHECK(r.constraint_residual_text == "0");
  }
  const auto t2 = theorem1_check(parse("t^2"));
  CHECK(t2.verdict == Verdict::Fail);
  CHECK(t2.constraint_residual_text == "6*t^2");
  CHECK_FALSE(t2.n4_identically_zero);
  CHECK(theorem1_check(parse("t")).constraint_residual_text == "2");
  const auto lor = theorem1_check(parse("1/(t^2+1)"));
  CHECK(lor.verdict == Verdict::Fail);
  CHECK(same(lor.constraint_residual, parse("2/(t^2+1)^3")));
}

TEST_CASE("verdict is invariant under scaling F") {
  for (const char* f : {"1/(2*t+3)", "t^2", "1/(t^2+1)", "t"}) {
    const Expr F = parse(f);
    for (int c : {-3, 2, 11}) {
      const auto a = theorem1_check(F), b = theorem1_check(Expr(c) * F);
      CHECK(a.verdict == b.verdict);
      CHECK(same(constraint_residual(Expr(c) * F), Expr(c * c) * constraint_residual(F)));
    }
  }
}

TEST_CASE("inverse curvature cross-check") {
  for (const char* f : {"1/(2*t+3)", "t^2", "1/(t^2+1)", "t", "1", "(t+1)/(t-1)", "1/(3-t)"}) {
    const Expr F = parse(f);
    CHECK(exactly_zero(inverse_curvature(F)) == exactly_zero(constraint_residual(F)));
    const auto r = theorem1_check(F);
    CHECK(r.inverse_curvature_test.zero == r.constraint_test.zero);
  }
}

TEST_CASE("transcendental coefficients fall back to sampling") {
  const auto r = theorem1_check(parse("exp(t)"));
  CHECK(r.constraint_test.method == ZeroTestMethod::Sampled);
  CHECK(r.verdict == Verdict::Fail);
  // 1/(a t + b) written with transcendental constants still passes
  const auto p = theorem1_check(parse("1/(pi*t+e)"));
  CHECK(p.constraint_test.method == ZeroTestMethod::Sampled);
  CHECK(p.verdict == Verdict::Pass);
  CHECK(theorem1_check(parse("1/(sin(t)+2)")).verdict == Verdict::Fail);
}
