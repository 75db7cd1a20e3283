#include "tdnls/verify.hpp"

#include <cmath>
#include <random>

#include "tdnls/analytic.hpp"
#include "tdnls/errors.hpp"
#include "tdnls/solver.hpp"
#include "tdnls/transform.hpp"

namespace tdnls::verify {

namespace {

const GridSpec kGrid{-20.0 * M_PI, 20.0 * M_PI, 1024};

CheckResult below(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, std::isfinite(value) && value < tolerance};
}

std::vector<analytic::SpaceTimePoint> random_points(std::uint64_t seed, int count, double t_lo, double t_hi,
                                                    double x_lo, double x_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dt(t_lo, t_hi), dx(x_lo, x_hi);
  std::vector<analytic::SpaceTimePoint> pts(count);
  for (auto& p : pts) {
    p.t = dt(rng);
    p.x = dx(rng);
  }
  return pts;
}

double max_abs(const std::vector<cdouble>& r) {
  double m = 0.0;
  for (const auto& z : r)
    m = std::max(m, std::abs(z));
  return m;
}

double max_abs(const std::vector<double>& r) {
  double m = 0.0;
  for (double z : r)
    m = std::max(m, std::abs(z));
  return m;
}

CaseReport solution_case(const std::string& name, const Wave& sol, const Expr& F, double t_lo, double t_hi,
                         const CaseOptions& opts) {
  CaseReport rep{name, {}, {}};
  const auto pts = random_points(opts.seed, opts.points, t_lo, t_hi, -10.0, 10.0);
  rep.checks.push_back(below("max_pde_residual", max_abs(analytic::pde_residual(sol, F, pts)), 1e-10));
  rep.dumps.push_back(sample_wave(sol, kGrid, t_lo));
  return rep;
}

// Smooth, localized, non-stationary initial data for the commuting square.
class SquareData final : public Wave {
public:
  TimeInterval domain() const override { return TimeInterval::instant(-1.0); }
  cdouble value(double t, double x) const override {
    check_time(t);
    return 1.2 / std::cosh(x - 1.0) * std::polar(1.0, 0.3 * x) + 0.5 / std::cosh(0.8 * (x + 2.0));
  }
  std::string describe() const override { return "two-hump initial data"; }
};

} // namespace

bool CaseReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass)
      return false;
  return true;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"standing", "travelling", "td-soliton", "ansatz", "ode-g", "theorem2"};
  return names;
}

CommutingSquare commuting_square(int n, double dt) {
  const GridSpec grid{-20.0 * M_PI, 20.0 * M_PI, n};
  grid.validate();
  const auto data = std::make_shared<SquareData>();
  const Expr one(1), inv_t = Expr(1) / Expr::variable();

  CommutingSquare out;
  auto drift = [](double a, double b) { return std::abs(b - a) / std::abs(a); };
  const ComplexField psi0 = sample_wave(*data, grid, -1.0);
  const ComplexField psi1 = solver::evolve(psi0, {-1.0, -0.5, dt, one, 1e-2}, [&](const ComplexField& u, long) {
    out.mass_drift = std::max(out.mass_drift, drift(solver::mass(psi0), solver::mass(u)));
    out.energy_drift = std::max(out.energy_drift, drift(solver::energy(psi0, 1.0), solver::energy(u, 1.0)));
  }, 50);
  const auto mapped = transform::theorem2_map(std::make_shared<GriddedWave>(psi1), transform::Direction::Forward);

  const auto u_start = transform::theorem2_map(data, transform::Direction::Forward);
  const ComplexField u1 = sample_wave(*u_start, grid, 1.0);
  out.map_then_evolve = solver::evolve(u1, {1.0, 2.0, dt, inv_t, 1e-2}, [&](const ComplexField& u, long) {
    out.mass_drift = std::max(out.mass_drift, drift(solver::mass(u1), solver::mass(u)));
  }, 50);

  // Outside the central 80% the mapped preimage leaves the trusted support.
  out.evolve_then_map = zero_field(grid, 2.0);
  const double lo = grid.x_min + 0.1 * grid.length(), hi = grid.x_max - 0.1 * grid.length();
  for (int j = 0; j < n; ++j) {
    const double x = grid.x(j);
    if (x >= lo && x <= hi)
      out.evolve_then_map.samples[j] = mapped->value(2.0, x);
  }
  out.linf = linf_distance(out.evolve_then_map, out.map_then_evolve, 0.8);
  return out;
}

CaseReport run_case(const std::string& name, const CaseOptions& opts) {
  const Expr one(1), inv_t = Expr(1) / Expr::variable();
  if (name == "standing")
    return solution_case(name, *analytic::standing_soliton(0.0), one, 0.0, 2.0, opts);
  if (name == "travelling")
    return solution_case(name, *analytic::travelling_soliton(1.0, 1.0), one, 0.0, 2.0, opts);
  if (name == "td-soliton")
    return solution_case(name, *analytic::td_soliton(0.0), inv_t, 0.5, 2.0, opts);
  if (name == "ansatz") {
    CaseReport rep{name, {}, {}};
    const auto pts = random_points(opts.seed, opts.points, 0.5, 2.0, -10.0, 10.0);
    const auto r = analytic::ansatz_reduction_residuals(analytic::td_profile(0.0), pts);
    rep.checks.push_back(below("max_real_part_residual", max_abs(r.real_part), 1e-10));
    rep.checks.push_back(below("max_imag_part_residual", max_abs(r.imag_part), 1e-10));
    return rep;
  }
  if (name == "ode-g") {
    CaseReport rep{name, {}, {}};
    std::vector<double> xs(200);
    for (int j = 0; j < 200; ++j)
      xs[j] = -10.0 + 20.0 * j / 199.0;
    rep.checks.push_back(below("max_ode_residual", max_abs(analytic::ode_residual_g(analytic::sech_profile(0.0), xs)),
                               1e-12));
    return rep;
  }
  if (name == "theorem2") {
    CaseReport rep{name, {}, {}};
    double closed = 0.0;
    for (double x0 : {0.0, 1.0, -2.0}) {
      const auto image = transform::theorem2_map(analytic::standing_soliton(x0), transform::Direction::Forward);
      const auto exact = analytic::td_soliton(x0);
      for (int i = 0; i <= 60; ++i) {
        const double t = 0.5 + 1.5 * i / 60.0;
        for (int j = 0; j <= 80; ++j) {
          const double x = -10.0 + 20.0 * j / 80.0;
          closed = std::max(closed, std::abs(image->value(t, x) - exact->value(t, x)));
        }
      }
    }
    rep.checks.push_back(below("closed_form_max_error", closed, 1e-12));
    auto square = commuting_square();
    rep.checks.push_back(below("commuting_square_linf", square.linf, 1e-4));
    rep.dumps.push_back(std::move(square.map_then_evolve));
    return rep;
  }
  throw ConfigError("unknown verify case '" + name + "'");
}

} // namespace tdnls::verify
