#include "tdnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdnls/errors.hpp"
#include "tdnls/spectral.hpp"

namespace tdnls::solver {

namespace {

constexpr double kGaussNode = 0.57735026918962576451; // 1/sqrt(3)

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double real_coefficient(const Expr& F, double t) {
  std::complex<double> v;
  try {
    v = evaluate(F, t);
  } catch (const EvaluationError& e) {
    throw DomainError("F cannot be evaluated at t = " + fmt(t) + ": " + e.what());
  }
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
    throw ConfigError("F must be real-valued; F(" + fmt(t) + ") = " + fmt(v.real()) + " + " + fmt(v.imag()) + "i");
  return v.real();
}

// Real polynomial whose real roots are the real roots of p.
Poly real_root_carrier(const Poly& p) {
  std::vector<GaussianRational> re, im;
  for (const auto& c : p.coeffs()) {
    re.emplace_back(c.re());
    im.emplace_back(c.im());
  }
  const Poly pr(re), pi(im);
  if (pi.is_zero())
    return pr;
  return gcd(pr, pi);
}

} // namespace

CoefficientIntegral::CoefficientIntegral(const Expr& F) : F_(F) {
  const auto nf = rational_normal_form(F);
  if (!nf)
    return;
  const Poly& num = nf->numerator();
  const Poly& den = nf->denominator();
  if (num.degree() > 0 || den.degree() > 1 || !num.is_real() || !den.is_real())
    return;
  const double c = num.is_zero() ? 0.0 : num.coeff(0).re().get_d();
  if (den.degree() == 0)
    closed_ = Closed{c, 0.0, 1.0};
  else
    closed_ = Closed{c, den.coeff(1).re().get_d(), den.coeff(0).re().get_d()};
}

double CoefficientIntegral::value(double t) const { return real_coefficient(F_, t); }

double CoefficientIntegral::operator()(double ta, double tb) const {
  if (closed_) {
    const auto [c, alpha, beta] = *closed_;
    if (c == 0.0)
      return 0.0;
    if (alpha == 0.0)
      return c / beta * (tb - ta);
    const double base = alpha * ta + beta;
    return c / alpha * std::log1p(alpha * (tb - ta) / base);
  }
  const double mid = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
  return half * (value(mid - half * kGaussNode) + value(mid + half * kGaussNode));
}

void check_coefficient(const EvolveConfig& cfg) {
  const double lo = std::min(cfg.t0, cfg.t1) - cfg.pole_guard;
  const double hi = std::max(cfg.t0, cfg.t1) + cfg.pole_guard;
  const auto nf = rational_normal_form(cfg.F);
  if (nf) {
    const Poly& den = nf->denominator();
    if (den.degree() > 0) {
      const Poly carrier = real_root_carrier(den);
      if (carrier.degree() > 0 &&
          count_real_roots(carrier, GaussianRational::from_double(lo).re(), GaussianRational::from_double(hi).re()) > 0)
        throw DomainError("F = " + to_string(cfg.F) + " has a pole within " + fmt(cfg.pole_guard) + " of [" +
                          fmt(std::min(cfg.t0, cfg.t1)) + ", " + fmt(std::max(cfg.t0, cfg.t1)) + "]");
    }
    real_coefficient(cfg.F, cfg.t0);
    real_coefficient(cfg.F, 0.5 * (cfg.t0 + cfg.t1));
    return;
  }
  constexpr int kSamples = 4096;
  for (int j = 0; j <= kSamples; ++j)
    real_coefficient(cfg.F, lo + (hi - lo) * j / kSamples);
}

std::pair<long, double> step_plan(const EvolveConfig& cfg) {
  const double span = cfg.t1 - cfg.t0;
  if (span == 0.0)
    return {0, 0.0};
  const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(span) / cfg.dt - 1e-9)));
  return {steps, span / static_cast<double>(steps)};
}

ComplexField evolve(const ComplexField& u0, const EvolveConfig& cfg, const Observer& observer, long observe_every) {
  u0.grid.validate();
  u0.validate();
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw ConfigError("dt must be a positive finite number");
  if (!std::isfinite(cfg.t0) || !std::isfinite(cfg.t1))
    throw ConfigError("t0 and t1 must be finite");
  if (!(cfg.pole_guard >= 0.0))
    throw ConfigError("pole_guard must be non-negative");
  if (std::abs(u0.time - cfg.t0) > 1e-12 * std::max(1.0, std::abs(cfg.t0)))
    throw ConfigError("initial field is stamped t = " + fmt(u0.time) + " but t0 = " + fmt(cfg.t0));
  check_coefficient(cfg);

  const CoefficientIntegral integral(cfg.F);
  const auto [steps, h] = step_plan(cfg);
  const int n = u0.grid.n;
  ComplexField u = u0;
  u.time = cfg.t0;
  if (observer)
    observer(u, 0);
  if (steps == 0)
    return u;

  FftWorkspace fft(n);
  auto buf = fft.buffer();
  const auto k = wavenumbers(u.grid);
  std::vector<cdouble> half(n);
  for (int m = 0; m < n; ++m)
    half[m] = std::polar(1.0, -k[m] * k[m] * h / 2.0);

  auto linear_half = [&] {
    std::copy(u.samples.begin(), u.samples.end(), buf.begin());
    fft.forward();
    for (int m = 0; m < n; ++m)
      buf[m] *= half[m];
    fft.backward();
    std::copy(buf.begin(), buf.end(), u.samples.begin());
  };

  for (long s = 0; s < steps; ++s) {
    const double ta = cfg.t0 + static_cast<double>(s) * h;
    const double tb = s + 1 == steps ? cfg.t1 : cfg.t0 + static_cast<double>(s + 1) * h;
    linear_half();
    const double phase = integral(ta, tb);
    for (auto& z : u.samples)
      z *= std::polar(1.0, std::norm(z) * phase);
    linear_half();
    u.time = tb;
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(u.samples[j].real()) || !std::isfinite(u.samples[j].imag()))
        throw InstabilityError("non-finite sample at x = " + fmt(u.grid.x(j)) + " after step " +
                               std::to_string(s + 1) + " (t = " + fmt(tb) + ")");
    }
    if (observer && (s + 1 == steps || (observe_every > 0 && (s + 1) % observe_every == 0)))
      observer(u, s + 1);
  }
  u.time = cfg.t1;
  return u;
}

double mass(const ComplexField& u) {
  double sum = 0.0;
  for (const auto& z : u.samples)
    sum += std::norm(z);
  return u.grid.spacing() * sum;
}

double energy(const ComplexField& u, double F_at_t) {
  const auto ux = spectral_derivative(u, 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < u.samples.size(); ++j) {
    const double m = std::norm(u.samples[j]);
    sum += std::norm(ux[j]) - 0.5 * F_at_t * m * m;
  }
  return u.grid.spacing() * sum;
}

FieldTriple time_stencil(const ComplexField& u, const Expr& F, double tau) {
  if (!(tau > 0.0))
    throw ConfigError("stencil step must be positive");
  EvolveConfig back{u.time, u.time - tau, tau, F, 0.0};
  EvolveConfig fwd{u.time, u.time + tau, tau, F, 0.0};
  FieldTriple out;
  out.before = evolve(u, back);
  out.now = u;
  out.after = evolve(u, fwd);
  out.tau = tau;
  return out;
}

FreeWave::FreeWave(const ComplexField& field) : grid_(field.grid), t0_(field.time), k_(wavenumbers(field.grid)) {
  field.validate();
  FftWorkspace fft(grid_.n);
  auto buf = fft.buffer();
  std::copy(field.samples.begin(), field.samples.end(), buf.begin());
  fft.forward();
  coeffs_.assign(buf.begin(), buf.end());
  for (auto& c : coeffs_)
    c /= static_cast<double>(grid_.n);
}

cdouble FreeWave::value(double t, double x) const { return jet(t, x).u; }

Jet FreeWave::jet(double t, double x) const {
  const double xi = x - grid_.x_min, dt = t - t0_;
  Jet j{};
  for (std::size_t m = 0; m < k_.size(); ++m) {
    if (coeffs_[m] == 0.0)
      continue;
    const double k = k_[m];
    const cdouble term = coeffs_[m] * std::polar(1.0, k * xi - k * k * dt);
    j.u += term;
    j.u_x += cdouble(0.0, k) * term;
    j.u_xx += -k * k * term;
    j.u_t += cdouble(0.0, -k * k) * term;
  }
  return j;
}

std::string FreeWave::describe() const {
  return "free evolution of a gridded field (n=" + std::to_string(grid_.n) + ", t0=" + fmt(t0_) + ")";
}

} // namespace tdnls::solver
