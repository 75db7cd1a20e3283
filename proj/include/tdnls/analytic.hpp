#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tdnls/expr.hpp"
#include "tdnls/field.hpp"
#include "tdnls/wave.hpp"

namespace tdnls::analytic {

enum class SolutionKind { Standing, Travelling, TimeDependent };

struct SolutionParams {
  double x0 = 0.0;
  /// Travelling soliton wavenumber and frequency; amplitude a = sqrt(k^2 + v).
  double k = 0.0;
  double v = 1.0;
  /// Coefficient F = 1/(a t + b) the time-dependent soliton solves.
  double a = 1.0;
  double b = 0.0;
};

/// Closed-form NLS solution with exact first and second partials.
class AnalyticSolution final : public Wave {
public:
  AnalyticSolution(SolutionKind kind, SolutionParams params);

  SolutionKind kind() const { return kind_; }
  const SolutionParams& params() const { return params_; }
  /// Amplitude parameter sqrt(k^2 + v) of the travelling family (1 otherwise).
  double amplitude() const { return amp_; }

  TimeInterval domain() const override;
  cdouble value(double t, double x) const override;
  bool has_jet() const override { return true; }
  Jet jet(double t, double x) const override;
  std::string describe() const override;

private:
  SolutionKind kind_;
  SolutionParams params_;
  double amp_ = 1.0;
};

using SolutionPtr = std::shared_ptr<const AnalyticSolution>;

/// sqrt(2) e^{it} / cosh(x - x0); solves the F = 1 equation.
SolutionPtr standing_soliton(double x0);

/// e^{i(v t - k x)} sqrt(2) a / cosh(a (x + 2 k t)), a = sqrt(k^2 + v); solves
/// the F = 1 equation and moves along x = -2 k t. Throws ConfigError unless
/// k^2 + v > 0.
SolutionPtr travelling_soliton(double k, double v);

/// e^{i(x^2/4t - 1/t)} / sqrt(t) * sqrt(2) / cosh(-x/t - x0) for t > 0; solves
/// i u_t + u_xx + (1/t)|u|^2 u = 0.
SolutionPtr td_soliton(double x0);

struct SpaceTimePoint {
  double t = 0.0;
  double x = 0.0;
};

/// i u_t + u_xx + F(t)|u|^2 u at each point, from the wave's exact partials.
/// Throws DomainError for points outside the domain or waves without jets.
std::vector<cdouble> pde_residual(const Wave& sol, const Expr& F, std::span<const SpaceTimePoint> points);

/// Same residual on the grid of `fields.now`: spectral x-derivatives and a
/// central difference in time across the triple.
std::vector<cdouble> pde_residual(const FieldTriple& fields, const Expr& F);

/// Real profile f(t, x) with the partials the reduced equations need.
struct RealJet {
  double f = 0.0, f_t = 0.0, f_x = 0.0, f_xx = 0.0;
};
using ProfileEvaluator = std::function<RealJet(double t, double x)>;

struct ReductionResiduals {
  /// f_xx - f/t^2 + f^3/t
  std::vector<double> real_part;
  /// f_t + (x/t) f_x + f/(2t)
  std::vector<double> imag_part;
};

/// Residuals of the real and imaginary parts of the 1/t equation under
/// u = exp(i(x^2/4t - 1/t)) f. Throws DomainError at t = 0.
ReductionResiduals ansatz_reduction_residuals(const ProfileEvaluator& f, std::span<const SpaceTimePoint> points);

/// f(t, x) = t^{-1/2} sqrt(2) sech(-x/t - x0), valid for t > 0.
ProfileEvaluator td_profile(double x0);

struct SteadyJet {
  double g = 0.0, g_x = 0.0, g_xx = 0.0;
};
using SteadyProfile = std::function<SteadyJet(double x)>;

/// g'' - g + g^3 at each x.
std::vector<double> ode_residual_g(const SteadyProfile& g, std::span<const double> xs);

/// sqrt(2) sech(x - x0).
SteadyProfile sech_profile(double x0);

} // namespace tdnls::analytic
