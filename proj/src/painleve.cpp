#include "tdnls/painleve.hpp"

#include "tdnls/errors.hpp"

namespace tdnls::painleve {

namespace {

const Expr& I() {
  static const Expr i = Expr::imaginary_unit();
  return i;
}

Expr sq(const Expr& e) { return Expr::pow(e, 2); }

void require_nonzero(const Expr& e, const char* name) {
  bool zero = false;
  if (auto nf = rational_normal_form(e)) {
    zero = nf->is_zero();
  } else {
    try {
      zero = test_zero(e, {}).zero;
    } catch (const DomainError&) {
      // nowhere finite on the sampling window; certainly not the zero function
    }
  }
  if (zero)
    throw DomainError(std::string(name) + " is identically zero");
}

// Shared derivative bundle for the n = 3, 4 closed forms.
struct Jets {
  Expr F, Ft, Ftt, u0, u0t, u0tt, xit, xitt, v0;
};

Jets jets(const Expr& F, const Expr& psi, const Expr& u0) {
  require_nonzero(F, "F");
  require_nonzero(u0, "u0");
  Jets j;
  j.F = F;
  j.Ft = differentiate(F);
  j.Ftt = differentiate(j.Ft);
  j.u0 = u0;
  j.u0t = differentiate(u0);
  j.u0tt = differentiate(j.u0t);
  j.xit = differentiate(psi);
  j.xitt = differentiate(j.xit);
  j.v0 = Expr(-2) / (F * u0);
  return j;
}

} // namespace

LeadingOrder leading_order(const Expr& F) {
  require_nonzero(F, "F");
  return LeadingOrder{1, 1, Expr(-2) / F};
}

long long resonance_determinant(long long n) { return n * (n - 4) * (n - 3) * (n + 1); }

std::vector<Resonance> resonances() { return {{-1, true}, {0, false}, {3, false}, {4, false}}; }

LaurentCoefficients laurent_coefficients(const Expr& F, const Expr& psi, const Expr& u0) {
  require_nonzero(F, "F");
  require_nonzero(u0, "u0");
  const Expr xit = differentiate(psi);
  const Expr v0 = Expr(-2) / (F * u0);
  const Expr v0t = differentiate(v0);
  const Expr u0t = differentiate(u0);
  const Expr half(GaussianRational(mpq_class(1, 2)));

  LaurentCoefficients c;
  c.v0 = v0;
  c.u1 = -(I() * half) * u0 * xit;
  c.v1 = (I() * half) * v0 * xit;
  // 6 v0 u2 = i v0_t u0 + 2i u0_t v0 - (1/2) u0 v0 xi_t^2
  c.u2 = (I() * v0t * u0 + Expr(2) * I() * u0t * v0 - half * u0 * v0 * sq(xit)) / (Expr(6) * v0);
  // 6 u0 v2 = -i u0_t v0 - 2i v0_t u0 - (1/2) u0 v0 xi_t^2
  c.v2 = (-(I() * u0t * v0) - Expr(2) * I() * v0t * u0 - half * u0 * v0 * sq(xit)) / (Expr(6) * u0);
  return c;
}

Compatibility compatibility_n3_terms(const Expr& F, const Expr& psi, const Expr& u0) {
  const Jets j = jets(F, psi, u0);
  // 2 F A3 = u0 (F_t xi_t - F xi_tt),   u0 F^2 B3 = F xi_tt - F_t xi_t
  Compatibility c;
  c.A = j.u0 * (j.Ft * j.xit - j.F * j.xitt) / (Expr(2) * j.F);
  c.B = (j.F * j.xitt - j.Ft * j.xit) / (j.u0 * sq(j.F));
  c.residual = c.A * j.v0 - c.B * j.u0;
  return c;
}

Compatibility compatibility_n4_terms(const Expr& F, const Expr& psi, const Expr& u0) {
  const Jets j = jets(F, psi, u0);
  // Terms shared by 6 u0 F^2 A4 and 3 u0^3 F^3 B4 (u3 free, v3 eliminated via the n = 3 relation).
  const Expr common = -(sq(j.F) * sq(j.u0t)) - Expr(2) * I() * sq(j.u0) * sq(j.F) * j.xit * j.xitt +
                      j.u0 * sq(j.F) * j.u0tt + I() * sq(j.u0) * j.F * sq(j.xit) * j.Ft -
                      j.u0 * j.F * j.u0t * j.Ft;
  const Expr a_tail = Expr(2) * sq(j.u0) * sq(j.Ft) - sq(j.u0) * j.F * j.Ftt;
  const Expr b_tail = Expr(-4) * sq(j.u0) * sq(j.Ft) + Expr(2) * sq(j.u0) * j.F * j.Ftt;
  Compatibility c;
  c.A = (common + a_tail) / (Expr(6) * j.u0 * sq(j.F));
  c.B = (common + b_tail) / (Expr(3) * Expr::pow(j.u0, 3) * Expr::pow(j.F, 3));
  c.residual = j.v0 * c.A + j.u0 * c.B;
  return c;
}

Expr compatibility_n3(const Expr& F, const Expr& psi, const Expr& u0) {
  return compatibility_n3_terms(F, psi, u0).residual;
}

Expr compatibility_n4(const Expr& F, const Expr& psi, const Expr& u0) {
  return compatibility_n4_terms(F, psi, u0).residual;
}

Expr constraint_residual(const Expr& F) {
  const Expr Ft = differentiate(F);
  return Expr(2) * sq(Ft) - F * differentiate(Ft);
}

Expr inverse_curvature(const Expr& F) { return differentiate(Expr(1) / F, 2); }

PainleveReport theorem1_check(const Expr& F, const CheckOptions& opts) {
  PainleveReport r;
  r.leading = leading_order(F);
  r.resonances = resonances();

  const Expr Ft = differentiate(F);
  const Expr Ftt = differentiate(Ft);
  r.constraint_residual = constraint_residual(F);
  {
    const Expr terms[] = {Expr(2) * sq(Ft), F * Ftt};
    r.constraint_test = test_zero(r.constraint_residual, terms, opts.sampling);
  }
  r.constraint_residual_text =
      r.constraint_test.normal_form ? r.constraint_test.normal_form->to_string() : to_string(r.constraint_residual);

  {
    // (1/F)'' = (2 F_t^2 - F F_tt) / F^3
    const Expr F3 = Expr::pow(F, 3);
    const Expr terms[] = {Expr(2) * sq(Ft) / F3, F * Ftt / F3};
    r.inverse_curvature_test = test_zero(inverse_curvature(F), terms, opts.sampling);
  }

  const Compatibility n3 = compatibility_n3_terms(F, opts.psi, opts.u0);
  {
    const Expr terms[] = {n3.A * Expr(-2) / (F * opts.u0), n3.B * opts.u0};
    r.n3_test = test_zero(n3.residual, terms, opts.sampling);
    r.n3_residual_norm = r.n3_test.max_abs;
  }
  const Compatibility n4 = compatibility_n4_terms(F, opts.psi, opts.u0);
  {
    const Expr terms[] = {n4.A * Expr(-2) / (F * opts.u0), n4.B * opts.u0};
    r.n4_test = test_zero(n4.residual, terms, opts.sampling);
    r.n4_identically_zero = r.n4_test.zero;
  }

  r.verdict = r.constraint_test.zero ? Verdict::Pass : Verdict::Fail;

  std::string notes = r.constraint_test.method == ZeroTestMethod::Exact
                          ? "F is rational in t; zero tests are exact."
                          : "F is not rational in t; zero tests sampled at " +
                                std::to_string(r.constraint_test.samples) + " points.";
  if (r.inverse_curvature_test.zero != r.constraint_test.zero)
    notes += " WARNING: d^2/dt^2(1/F) test disagrees with 2F_t^2-FF_tt.";
  if (r.n4_identically_zero != r.constraint_test.zero)
    notes += " WARNING: n=4 compatibility disagrees with 2F_t^2-FF_tt.";
  if (!r.n3_test.zero)
    notes += " WARNING: n=3 compatibility residual is not identically zero.";
  r.notes = std::move(notes);
  return r;
}

} // namespace tdnls::painleve
