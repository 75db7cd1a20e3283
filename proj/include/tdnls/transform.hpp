#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tdnls/field.hpp"
#include "tdnls/wave.hpp"

// Schrodinger-group action on space-time and on wave functions.
//
// Every primitive g acts on points, (t, x) -> g(t, x), and on wave functions
// in active form: u'(g(t, x)) = multiplier(t, x) * u(t, x), evaluated through
// the preimage. A TransformSpec applies its primitives left to right.
namespace tdnls::transform {

/// (t, x) -> (delta^2 t, delta x), u' = u / delta.
struct Dilatation {
  double delta = 1.0;
};
/// (t, x) -> (t, x) / (1 - kappa t), u' = (1 - kappa t)^{1/2} exp(i kappa x^2 / 4(1 - kappa t)) u.
struct Expansion {
  double kappa = 0.0;
};
/// (t, x) -> (t + epsilon, x), u' = u.
struct TimeTranslation {
  double epsilon = 0.0;
};
/// (t, x) -> (t, x + c t), u'(t, x) = exp(i(c x/2 - c^2 t/4)) u(t, x - c t).
struct Boost {
  double c = 0.0;
};

using Primitive = std::variant<Dilatation, Expansion, TimeTranslation, Boost>;

/// Power of (1 - kappa t) in the expansion multiplier for one space dimension.
inline constexpr double kExpansionWeight = 0.5;
/// Boost multiplier exp(i(alpha c x + beta c^2 t)).
inline constexpr double kBoostPhaseX = 0.5;
inline constexpr double kBoostPhaseT = -0.25;

class TransformSpec {
public:
  TransformSpec() = default;
  /// Throws ConfigError for a zero dilatation.
  explicit TransformSpec(std::vector<Primitive> steps);

  /// Grammar: steps separated by ';' from D(delta), E(kappa), T(epsilon),
  /// B(c), and the alias Dmap = T(1);E(1);T(1). Empty text is the identity.
  static TransformSpec parse(std::string_view text);

  const std::vector<Primitive>& steps() const { return steps_; }
  bool is_identity() const { return steps_.empty(); }
  std::string to_string() const;

private:
  std::vector<Primitive> steps_;
};

/// `first` followed by `second`: acting with the result equals acting with
/// `first`, then with `second`.
TransformSpec compose(const TransformSpec& first, const TransformSpec& second);

/// T(1);E(1);T(1), acting on points as (t, x) -> (-1/t, -x/t).
TransformSpec d_map();

Primitive galilean_boost(double c);

/// Group element carrying solutions of the F = 1/t equation to solutions of
/// the F = 1/(a t + b) equation: D(1/sqrt(a)); T(-b/a). Needs a > 0.
TransformSpec coefficient_family_map(double a, double b);

struct Point {
  double t = 0.0;
  double x = 0.0;
};

/// Image of (t, x). Throws DomainError where an expansion is singular.
Point coordinate_action(const TransformSpec& spec, double t, double x);
/// Point mapped onto (t, x). Throws DomainError where singular.
Point preimage(const TransformSpec& spec, double t, double x);

/// Image of a time interval; throws DomainError when it contains a singular
/// time of some expansion (the two branches are never glued).
TimeInterval map_interval(const TransformSpec& spec, const TimeInterval& interval);

/// Transformed wave function; keeps exact jets when the input has them.
WavePtr apply(const TransformSpec& spec, WavePtr wave);

enum class Direction { Forward, Inverse };

/// Forward: u(t, x) = t^{-1/2} exp(i x^2/4t) psi(-1/t, -x/t) for t > 0, from
/// psi on t < 0. Inverse: psi(s, y) = (-s)^{-1/2} exp(i y^2/4s) u(-1/s, y/s)
/// for s < 0. Forward maps F = 1 solutions to F = 1/t solutions.
WavePtr theorem2_map(WavePtr wave, Direction direction);

/// SL(2, R) matrix [[a, b], [c, d]] acting by t -> (a t + b)/(c t + d),
/// x -> x/(c t + d).
struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

/// Matrix product of the spec's primitives; throws ConfigError for boosts.
Mobius mobius_matrix(const TransformSpec& spec);
Point mobius_action(const Mobius& m, double t, double x);

/// Transforms a sampled field onto the image of its grid (each output node is
/// the image of an input node, so no interpolation is involved).
ComplexField transform_field(const TransformSpec& spec, const ComplexField& field);

} // namespace tdnls::transform
