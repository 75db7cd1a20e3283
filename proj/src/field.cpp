#include "tdnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdnls/errors.hpp"
#include "tdnls/spectral.hpp"

namespace tdnls {

void GridSpec::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min))
    throw ConfigError("grid needs finite x_max > x_min");
  if (n < 16 || (n & (n - 1)) != 0)
    throw ConfigError("grid size must be a power of two and at least 16, got " + std::to_string(n));
}

void ComplexField::validate() const {
  grid.validate();
  if (samples.size() != static_cast<std::size_t>(grid.n))
    throw ConfigError("field has " + std::to_string(samples.size()) + " samples for a grid of " +
                      std::to_string(grid.n));
  for (const auto& s : samples)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw ConfigError("field contains non-finite samples");
}

ComplexField zero_field(const GridSpec& grid, double t) {
  grid.validate();
  return ComplexField{grid, std::vector<cdouble>(grid.n, 0.0), t};
}

ComplexField sample_wave(const Wave& wave, const GridSpec& grid, double t) {
  grid.validate();
  ComplexField f{grid, std::vector<cdouble>(grid.n), t};
  for (int j = 0; j < grid.n; ++j)
    f.samples[j] = wave.value(t, grid.x(j));
  return f;
}

std::vector<cdouble> spectral_derivative(const ComplexField& u, int order) {
  const int n = u.grid.n;
  FftWorkspace fft(n);
  auto buf = fft.buffer();
  std::copy(u.samples.begin(), u.samples.end(), buf.begin());
  fft.forward();
  const auto k = wavenumbers(u.grid);
  for (int m = 0; m < n; ++m) {
    if (m == n / 2 && order % 2 == 1) {
      buf[m] = 0.0;
      continue;
    }
    buf[m] *= std::pow(cdouble(0.0, k[m]), order);
  }
  fft.backward();
  return {buf.begin(), buf.end()};
}

TrigInterpolant::TrigInterpolant(const ComplexField& field) : grid_(field.grid) {
  const int n = grid_.n;
  FftWorkspace fft(n);
  auto buf = fft.buffer();
  std::copy(field.samples.begin(), field.samples.end(), buf.begin());
  fft.forward();
  coeffs_.assign(buf.begin(), buf.end());
  for (auto& c : coeffs_)
    c /= static_cast<double>(n);
}

cdouble TrigInterpolant::operator()(double x) const {
  const int n = grid_.n;
  const double theta = 2.0 * M_PI * (x - grid_.x_min) / grid_.length();
  cdouble acc = coeffs_[0];
  for (int m = 1; m < n / 2; ++m) {
    acc += coeffs_[m] * std::polar(1.0, m * theta);
    acc += coeffs_[n - m] * std::polar(1.0, -m * theta);
  }
  // Nyquist mode split symmetrically so the interpolant of real data is real.
  acc += coeffs_[n / 2] * std::cos((n / 2) * theta);
  return acc;
}

double linf_distance(const ComplexField& a, const ComplexField& b, double fraction) {
  if (!(a.grid == b.grid))
    throw ConfigError("fields live on different grids");
  const double margin = 0.5 * (1.0 - fraction) * a.grid.length();
  const double lo = a.grid.x_min + margin, hi = a.grid.x_max - margin;
  double m = 0.0;
  for (int j = 0; j < a.grid.n; ++j) {
    const double x = a.grid.x(j);
    if (x < lo || x > hi)
      continue;
    m = std::max(m, std::abs(a.samples[j] - b.samples[j]));
  }
  return m;
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid == b.grid))
    throw ConfigError("fields live on different grids");
  double s = 0.0;
  for (int j = 0; j < a.grid.n; ++j)
    s += std::norm(a.samples[j] - b.samples[j]);
  return std::sqrt(a.grid.spacing() * s);
}

GriddedWave::GriddedWave(ComplexField field, double support_fraction)
    : field_(std::move(field)), interp_(field_) {
  field_.validate();
  const double margin = 0.5 * (1.0 - support_fraction) * field_.grid.length();
  support_lo_ = field_.grid.x_min + margin;
  support_hi_ = field_.grid.x_max - margin;
}

cdouble GriddedWave::value(double t, double x) const {
  if (std::abs(t - field_.time) > 1e-12 * std::max(1.0, std::abs(t))) {
    std::ostringstream os;
    os << describe() << ": requested time " << t << " but the field is stored at t=" << field_.time;
    throw DomainError(os.str());
  }
  const double h = field_.grid.spacing();
  const double pos = (x - field_.grid.x_min) / h;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9 && nearest >= 0 && nearest < field_.grid.n)
    return field_.samples[static_cast<std::size_t>(nearest)];
  if (x < support_lo_ || x > support_hi_) {
    std::ostringstream os;
    os << describe() << ": x=" << x << " outside reliable interpolation support [" << support_lo_ << ", "
       << support_hi_ << "]";
    throw DomainError(os.str());
  }
  return interp_(x);
}

std::string GriddedWave::describe() const {
  std::ostringstream os;
  os << "gridded field (n=" << field_.grid.n << ", t=" << field_.time << ")";
  return os.str();
}

} // namespace tdnls
