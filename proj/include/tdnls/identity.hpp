#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdnls/expr.hpp"

namespace tdnls {

/// Where and how densely a residual is probed when exact zero-testing is not
/// available.
struct SamplingOptions {
  int samples = 32;
  double lo = -10.0;
  double hi = 10.0;
  /// Candidates closer than this to a pole are skipped.
  double pole_distance = 1e-3;
  /// Pass threshold relative to the largest term magnitude at each point.
  double rel_tol = 1e-12;
  std::uint64_t seed = 0x5eed0fca7a1c0de5ULL;
  int max_candidates = 20000;
};

enum class ZeroTestMethod { Exact, Sampled };

struct ZeroTest {
  ZeroTestMethod method = ZeroTestMethod::Sampled;
  bool zero = false;
  /// Largest |residual| over the sample points.
  double max_abs = 0.0;
  /// Largest |residual| / scale over the sample points.
  double max_rel = 0.0;
  int samples = 0;
  /// Present when the exact route was taken.
  std::optional<RationalFunction> normal_form;
};

/// Deterministic sample points in [lo, hi] at which every expression evaluates
/// finitely at t and at t ± pole_distance. Throws DomainError when fewer than
/// `samples` points can be found.
std::vector<double> sample_points(std::span<const Expr> exprs, const SamplingOptions& opts = {});

/// Decides whether `residual` vanishes identically. Rational residuals are
/// decided exactly through the rational normal form; otherwise the residual is
/// sampled and compared with the largest magnitude among `scale_terms` (or
/// absolutely when no terms are given). Sampled norms are reported either way.
ZeroTest test_zero(const Expr& residual, std::span<const Expr> scale_terms, const SamplingOptions& opts = {});

} // namespace tdnls
