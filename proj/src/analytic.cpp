#include "tdnls/analytic.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "tdnls/errors.hpp"

namespace tdnls::analytic {

namespace {

constexpr cdouble kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

double sech(double s) { return 1.0 / std::cosh(s); }

double real_coefficient(const Expr& F, double t) {
  const cdouble v = evaluate(F, t);
  return v.real();
}

} // namespace

AnalyticSolution::AnalyticSolution(SolutionKind kind, SolutionParams params) : kind_(kind), params_(params) {
  if (kind_ == SolutionKind::Travelling) {
    const double a2 = params_.k * params_.k + params_.v;
    if (!(a2 > 0.0))
      throw ConfigError("travelling soliton needs k^2 + v > 0");
    amp_ = std::sqrt(a2);
  }
  if (kind_ == SolutionKind::TimeDependent && (params_.a != 1.0 || params_.b != 0.0))
    throw ConfigError("closed-form time-dependent soliton exists for F = 1/t only; "
                      "use transform::coefficient_family_map for other a, b");
}

TimeInterval AnalyticSolution::domain() const {
  return kind_ == SolutionKind::TimeDependent ? TimeInterval::positive() : TimeInterval::all();
}

cdouble AnalyticSolution::value(double t, double x) const {
  check_time(t);
  switch (kind_) {
  case SolutionKind::Standing:
    return kSqrt2 * std::polar(1.0, t) * sech(x - params_.x0);
  case SolutionKind::Travelling: {
    const double k = params_.k, v = params_.v, a = amp_;
    return std::polar(1.0, v * t - k * x) * kSqrt2 * a * sech(a * (x + 2.0 * k * t));
  }
  case SolutionKind::TimeDependent:
    return std::polar(1.0, x * x / (4.0 * t) - 1.0 / t) / std::sqrt(t) * kSqrt2 * sech(-x / t - params_.x0);
  }
  throw std::logic_error("unhandled solution kind");
}

Jet AnalyticSolution::jet(double t, double x) const {
  check_time(t);
  Jet j;
  switch (kind_) {
  case SolutionKind::Standing: {
    const double y = x - params_.x0;
    const cdouble u = kSqrt2 * std::polar(1.0, t) * sech(y);
    const double th = std::tanh(y), s = sech(y);
    j.u = u;
    j.u_t = kI * u;
    j.u_x = -u * th;
    j.u_xx = u * (1.0 - 2.0 * s * s);
    return j;
  }
  case SolutionKind::Travelling: {
    const double k = params_.k, v = params_.v, a = amp_;
    const double xi = a * (x + 2.0 * k * t);
    const double phi = kSqrt2 * a * sech(xi);
    const double dphi = -phi * std::tanh(xi);
    const double s = sech(xi);
    const double ddphi = phi * (1.0 - 2.0 * s * s);
    const cdouble ph = std::polar(1.0, v * t - k * x);
    j.u = ph * phi;
    j.u_t = ph * (kI * v * phi + 2.0 * k * a * dphi);
    j.u_x = ph * (-kI * k * phi + a * dphi);
    j.u_xx = ph * (-k * k * phi - 2.0 * kI * k * a * dphi + a * a * ddphi);
    return j;
  }
  case SolutionKind::TimeDependent: {
    const double s = -x / t - params_.x0;
    const double s_t = x / (t * t), s_x = -1.0 / t;
    const double g = kSqrt2 * sech(s);
    const double g1 = -g * std::tanh(s);
    const double sh = sech(s);
    const double g2 = g * (1.0 - 2.0 * sh * sh);
    const double A = 1.0 / std::sqrt(t), A_t = -A / (2.0 * t);
    const double th_t = -x * x / (4.0 * t * t) + 1.0 / (t * t);
    const double th_x = x / (2.0 * t), th_xx = 1.0 / (2.0 * t);
    const cdouble ph = std::polar(1.0, x * x / (4.0 * t) - 1.0 / t);
    j.u = A * ph * g;
    j.u_t = ph * (A_t * g + A * kI * th_t * g + A * g1 * s_t);
    j.u_x = A * ph * (kI * th_x * g + g1 * s_x);
    j.u_xx = A * ph * ((kI * th_xx - th_x * th_x) * g + 2.0 * kI * th_x * s_x * g1 + s_x * s_x * g2);
    return j;
  }
  }
  throw std::logic_error("unhandled solution kind");
}

std::string AnalyticSolution::describe() const {
  std::ostringstream os;
  switch (kind_) {
  case SolutionKind::Standing:
    os << "standing soliton (x0=" << params_.x0 << ")";
    break;
  case SolutionKind::Travelling:
    os << "travelling soliton (k=" << params_.k << ", v=" << params_.v << ")";
    break;
  case SolutionKind::TimeDependent:
    os << "time-dependent soliton (x0=" << params_.x0 << ")";
    break;
  }
  return os.str();
}

SolutionPtr standing_soliton(double x0) {
  return std::make_shared<AnalyticSolution>(SolutionKind::Standing, SolutionParams{.x0 = x0});
}

SolutionPtr travelling_soliton(double k, double v) {
  return std::make_shared<AnalyticSolution>(SolutionKind::Travelling, SolutionParams{.k = k, .v = v});
}

SolutionPtr td_soliton(double x0) {
  return std::make_shared<AnalyticSolution>(SolutionKind::TimeDependent, SolutionParams{.x0 = x0});
}

std::vector<cdouble> pde_residual(const Wave& sol, const Expr& F, std::span<const SpaceTimePoint> points) {
  if (!sol.has_jet())
    throw DomainError(sol.describe() + " has no exact partials; sample it and use the gridded residual");
  std::map<double, double> f_cache;
  std::vector<cdouble> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    auto it = f_cache.find(p.t);
    if (it == f_cache.end())
      it = f_cache.emplace(p.t, real_coefficient(F, p.t)).first;
    const Jet j = sol.jet(p.t, p.x);
    out.push_back(kI * j.u_t + j.u_xx + it->second * std::norm(j.u) * j.u);
  }
  return out;
}

std::vector<cdouble> pde_residual(const FieldTriple& fields, const Expr& F) {
  const auto& now = fields.now;
  now.validate();
  if (!(fields.before.grid == now.grid) || !(fields.after.grid == now.grid))
    throw ConfigError("field triple slices live on different grids");
  if (!(fields.tau > 0.0))
    throw ConfigError("field triple needs tau > 0");
  const double F_now = real_coefficient(F, now.time);
  const auto u_xx = spectral_derivative(now, 2);
  std::vector<cdouble> out(now.grid.n);
  for (int j = 0; j < now.grid.n; ++j) {
    const cdouble u_t = (fields.after.samples[j] - fields.before.samples[j]) / (2.0 * fields.tau);
    const cdouble u = now.samples[j];
    out[j] = kI * u_t + u_xx[j] + F_now * std::norm(u) * u;
  }
  return out;
}

ReductionResiduals ansatz_reduction_residuals(const ProfileEvaluator& f, std::span<const SpaceTimePoint> points) {
  ReductionResiduals r;
  r.real_part.reserve(points.size());
  r.imag_part.reserve(points.size());
  for (const auto& p : points) {
    if (p.t == 0.0)
      throw DomainError("reduced equations are singular at t = 0");
    const RealJet j = f(p.t, p.x);
    r.real_part.push_back(j.f_xx - j.f / (p.t * p.t) + j.f * j.f * j.f / p.t);
    r.imag_part.push_back(j.f_t + (p.x / p.t) * j.f_x + j.f / (2.0 * p.t));
  }
  return r;
}

ProfileEvaluator td_profile(double x0) {
  return [x0](double t, double x) {
    if (!(t > 0.0))
      throw DomainError("time-dependent profile is defined for t > 0");
    const double s = -x / t - x0;
    const double s_t = x / (t * t), s_x = -1.0 / t;
    const double g = kSqrt2 * sech(s);
    const double g1 = -g * std::tanh(s);
    const double sh = sech(s);
    const double g2 = g * (1.0 - 2.0 * sh * sh);
    const double A = 1.0 / std::sqrt(t), A_t = -A / (2.0 * t);
    return RealJet{A * g, A_t * g + A * g1 * s_t, A * g1 * s_x, A * g2 * s_x * s_x};
  };
}

std::vector<double> ode_residual_g(const SteadyProfile& g, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const SteadyJet j = g(x);
    out.push_back(j.g_xx - j.g + j.g * j.g * j.g);
  }
  return out;
}

SteadyProfile sech_profile(double x0) {
  return [x0](double x) {
    const double y = x - x0;
    const double g = kSqrt2 * sech(y);
    const double s = sech(y);
    return SteadyJet{g, -g * std::tanh(y), g * (1.0 - 2.0 * s * s)};
  };
}

} // namespace tdnls::analytic
