#include <cmath>
#include <future>

#include "tdnls/analytic.hpp"
#include "tdnls/errors.hpp"
#include "tdnls/solver.hpp"

namespace tdnls::solver {

StudyCase parse_study_case(const std::string& name) {
  if (name == "standing")
    return StudyCase::Standing;
  if (name == "travelling")
    return StudyCase::Travelling;
  if (name == "td")
    return StudyCase::TimeDependent;
  throw ConfigError("unknown study case '" + name + "' (expected standing, travelling or td)");
}

std::string to_string(StudyCase c) {
  switch (c) {
  case StudyCase::Standing:
    return "standing";
  case StudyCase::Travelling:
    return "travelling";
  case StudyCase::TimeDependent:
    return "td";
  }
  return "?";
}

ConvergenceTable convergence_study(StudyCase study, const std::vector<double>& dts, const std::vector<int>& ns) {
  if (dts.empty() || ns.empty())
    throw ConfigError("convergence study needs at least one dt and one n");
  ConvergenceTable table;
  table.study = study;
  table.grid_template = GridSpec{-20.0 * M_PI, 20.0 * M_PI, ns.front()};
  WavePtr reference;
  Expr F(1);
  switch (study) {
  case StudyCase::Standing:
    reference = analytic::standing_soliton(0.0);
    break;
  case StudyCase::Travelling:
    reference = analytic::travelling_soliton(1.0, 1.0);
    break;
  case StudyCase::TimeDependent:
    reference = analytic::td_soliton(0.0);
    F = Expr(1) / Expr::variable();
    table.t0 = 1.0;
    table.t1 = 2.0;
    break;
  }

  std::vector<std::future<ConvergenceRow>> jobs;
  for (int n : ns) {
    GridSpec grid{-20.0 * M_PI, 20.0 * M_PI, n};
    grid.validate();
    for (double dt : dts) {
      jobs.push_back(std::async(std::launch::async, [=, t0 = table.t0, t1 = table.t1] {
        const ComplexField u0 = sample_wave(*reference, grid, t0);
        const ComplexField u1 = evolve(u0, EvolveConfig{t0, t1, dt, F, 1e-2});
        const ComplexField exact = sample_wave(*reference, grid, t1);
        const double m0 = mass(u0);
        return ConvergenceRow{dt, n, linf_distance(u1, exact), l2_distance(u1, exact), std::abs(mass(u1) - m0) / m0};
      }));
    }
  }
  for (auto& j : jobs)
    table.rows.push_back(j.get());

  int finest = 0;
  for (int n : ns)
    finest = std::max(finest, n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : table.rows) {
    if (r.n != finest || !(r.linf > 0.0))
      continue;
    const double x = std::log(r.dt), y = std::log(r.linf);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2 && count * sxx - sx * sx > 0.0)
    table.temporal_order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return table;
}

} // namespace tdnls::solver
