#pragma once

#include <span>
#include <vector>

#include "tdnls/wave.hpp"

namespace tdnls {

/// Uniform periodic grid x_j = x_min + j*h, j = 0..n-1, h = (x_max - x_min)/n.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 16;

  double length() const { return x_max - x_min; }
  double spacing() const { return length() / n; }
  double x(int j) const { return x_min + j * spacing(); }
  /// Throws ConfigError unless x_max > x_min and n >= 16 is a power of two.
  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Samples of u on a grid at one time stamp.
struct ComplexField {
  GridSpec grid;
  std::vector<cdouble> samples;
  double time = 0.0;

  /// Throws ConfigError on a length mismatch or non-finite samples.
  void validate() const;
};

ComplexField zero_field(const GridSpec& grid, double t);
ComplexField sample_wave(const Wave& wave, const GridSpec& grid, double t);

/// d^order u / dx^order by Fourier multiplication. For odd orders the Nyquist
/// mode is dropped.
std::vector<cdouble> spectral_derivative(const ComplexField& u, int order);

/// Band-limited periodic interpolant through the samples of a field.
class TrigInterpolant {
public:
  explicit TrigInterpolant(const ComplexField& field);
  cdouble operator()(double x) const;

private:
  GridSpec grid_;
  std::vector<cdouble> coeffs_; // FFT order, already divided by n
};

/// Max |a_j - b_j| over grid points whose x lies in the central `fraction`
/// of the grid (fraction = 1 uses every point). Grids must match.
double linf_distance(const ComplexField& a, const ComplexField& b, double fraction = 1.0);
/// sqrt(h * sum |a_j - b_j|^2).
double l2_distance(const ComplexField& a, const ComplexField& b);

/// A field at a single time stamp viewed as a Wave. Grid nodes return the
/// stored samples; other points use trigonometric interpolation, which is
/// trusted only inside the central `support_fraction` of the grid.
class GriddedWave final : public Wave {
public:
  explicit GriddedWave(ComplexField field, double support_fraction = 0.8);

  TimeInterval domain() const override { return TimeInterval::instant(field_.time); }
  cdouble value(double t, double x) const override;
  std::string describe() const override;
  const ComplexField& field() const { return field_; }

private:
  ComplexField field_;
  TrigInterpolant interp_;
  double support_lo_, support_hi_;
};

} // namespace tdnls

namespace tdnls {

/// Three slices of a numerical solution at t - tau, t, t + tau, used for
/// central-difference time derivatives.
struct FieldTriple {
  ComplexField before;
  ComplexField now;
  ComplexField after;
  double tau = 0.0;
};

} // namespace tdnls
