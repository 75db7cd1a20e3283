#include "tdnls/identity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tdnls/errors.hpp"

namespace tdnls {

namespace {

bool finite_at(const Expr& e, double t) {
  try {
    (void)evaluate(e, t);
    return true;
  } catch (const EvaluationError&) {
    return false;
  }
}

} // namespace

std::vector<double> sample_points(std::span<const Expr> exprs, const SamplingOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(opts.lo, opts.hi);
  std::vector<double> points;
  points.reserve(opts.samples);
  for (int c = 0; c < opts.max_candidates && static_cast<int>(points.size()) < opts.samples; ++c) {
    const double t = dist(rng);
    const bool ok = std::all_of(exprs.begin(), exprs.end(), [&](const Expr& e) {
      return finite_at(e, t) && finite_at(e, t - opts.pole_distance) && finite_at(e, t + opts.pole_distance);
    });
    if (ok)
      points.push_back(t);
  }
  if (static_cast<int>(points.size()) < opts.samples)
    throw DomainError("sampling window contains only poles");
  return points;
}

ZeroTest test_zero(const Expr& residual, std::span<const Expr> scale_terms, const SamplingOptions& opts) {
  ZeroTest out;
  if (auto nf = rational_normal_form(residual)) {
    out.method = ZeroTestMethod::Exact;
    out.zero = nf->is_zero();
    out.normal_form = std::move(nf);
  }

  std::vector<Expr> all{residual};
  all.insert(all.end(), scale_terms.begin(), scale_terms.end());
  std::vector<double> points;
  try {
    points = sample_points(all, opts);
  } catch (const DomainError&) {
    if (out.method == ZeroTestMethod::Exact)
      return out;
    throw;
  }

  bool sampled_zero = true;
  for (double t : points) {
    const double r = std::abs(evaluate(residual, t));
    double scale = 0.0;
    for (const auto& term : scale_terms)
      scale = std::max(scale, std::abs(evaluate(term, t)));
    if (scale_terms.empty())
      scale = 1.0;
    const double rel = scale > 0.0 ? r / scale : (r == 0.0 ? 0.0 : INFINITY);
    out.max_abs = std::max(out.max_abs, r);
    out.max_rel = std::max(out.max_rel, rel);
    if (!(r <= opts.rel_tol * scale))
      sampled_zero = false;
  }
  out.samples = static_cast<int>(points.size());
  if (out.method == ZeroTestMethod::Sampled)
    out.zero = sampled_zero;
  return out;
}

} // namespace tdnls
