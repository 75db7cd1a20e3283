#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdnls/expr.hpp"
#include "tdnls/field.hpp"
#include "tdnls/wave.hpp"

// Split-step Fourier integrator for i u_t + u_xx + F(t)|u|^2 u = 0 on a
// periodic grid.
namespace tdnls::solver {

struct EvolveConfig {
  double t0 = 0.0;
  double t1 = 1.0;
  /// Step size, > 0. When it does not divide |t1 - t0| the step count is
  /// rounded up and the step shrunk to fit.
  double dt = 1e-3;
  Expr F = Expr(1);
  /// Minimum distance between [t0, t1] and any pole of F.
  double pole_guard = 1e-2;
};

/// Called with the current field and the number of steps taken so far.
using Observer = std::function<void(const ComplexField& u, long step)>;

/// Exact integral of F over [ta, tb] when F = c/(alpha t + beta) (constants
/// included), two-point Gauss-Legendre otherwise.
class CoefficientIntegral {
public:
  explicit CoefficientIntegral(const Expr& F);
  double operator()(double ta, double tb) const;
  double value(double t) const;
  /// True when the closed form is used.
  bool exact() const { return closed_.has_value(); }

private:
  struct Closed {
    double c, alpha, beta;
  };
  Expr F_;
  std::optional<Closed> closed_;
};

/// Throws DomainError if F has a pole within cfg.pole_guard of [t0, t1]
/// (exact Sturm count for rational F, dense sampling otherwise) and
/// ConfigError if F is not real-valued there.
void check_coefficient(const EvolveConfig& cfg);

/// Number of steps and the signed step length evolve() will use.
std::pair<long, double> step_plan(const EvolveConfig& cfg);

/// Strang splitting: half linear step, exact nonlinear phase rotation, half
/// linear step. t1 < t0 integrates backwards. The observer, when set, sees the
/// initial field, every `observe_every`-th step and the final field.
/// Throws ConfigError on bad input, DomainError near poles of F and
/// InstabilityError when samples stop being finite.
ComplexField evolve(const ComplexField& u0, const EvolveConfig& cfg, const Observer& observer = {},
                    long observe_every = 0);

/// h * sum |u_j|^2.
double mass(const ComplexField& u);
/// h * sum (|u_x|^2 - (F/2)|u|^4) with a spectral u_x.
double energy(const ComplexField& u, double F_at_t);

/// Slices at t - tau, t, t + tau obtained by evolving `u` both ways.
FieldTriple time_stencil(const ComplexField& u, const Expr& F, double tau = 1e-5);

/// Exact solution of i u_t + u_xx = 0 whose samples at `field.time` are the
/// given field (band-limited, periodic). Has exact partials.
class FreeWave final : public Wave {
public:
  explicit FreeWave(const ComplexField& field);
  cdouble value(double t, double x) const override;
  bool has_jet() const override { return true; }
  Jet jet(double t, double x) const override;
  std::string describe() const override;

private:
  GridSpec grid_;
  double t0_;
  std::vector<double> k_;
  std::vector<cdouble> coeffs_;
};

enum class StudyCase { Standing, Travelling, TimeDependent };

/// "standing", "travelling", "td".
StudyCase parse_study_case(const std::string& name);
std::string to_string(StudyCase c);

struct ConvergenceRow {
  double dt = 0.0;
  int n = 0;
  double linf = 0.0;
  double l2 = 0.0;
  double mass_drift = 0.0;
};

struct ConvergenceTable {
  StudyCase study = StudyCase::Travelling;
  double t0 = 0.0, t1 = 1.0;
  GridSpec grid_template;
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log L-inf against log dt at the finest n; empty
  /// with fewer than two step sizes.
  std::optional<double> temporal_order;
};

/// Reference setups on [-20 pi, 20 pi]: travelling (k = 1, v = 1) and standing
/// (x0 = 0) under F = 1 on [0, 1]; the time-dependent soliton (x0 = 0) under
/// F = 1/t on [1, 2]. Runs execute concurrently.
ConvergenceTable convergence_study(StudyCase study, const std::vector<double>& dts, const std::vector<int>& ns);

} // namespace tdnls::solver
