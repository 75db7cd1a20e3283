#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <string>

namespace tdnls {

using cdouble = std::complex<double>;

/// Value of a complex field and the partials entering the NLS residual.
struct Jet {
  cdouble u, u_t, u_x, u_xx;
};

/// Interval of times on which a wave function is defined. Endpoints may be
/// infinite; open endpoints are excluded.
struct TimeInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  static TimeInterval all() { return {}; }
  static TimeInterval positive() { return {0.0, std::numeric_limits<double>::infinity(), true, true}; }
  static TimeInterval negative() { return {-std::numeric_limits<double>::infinity(), 0.0, true, true}; }
  static TimeInterval instant(double t) { return {t, t, false, false}; }

  bool contains(double t) const;
  bool empty() const;
  TimeInterval intersect(const TimeInterval& o) const;
  std::string to_string() const;
};

/// A complex field u(t, x) that can be evaluated pointwise. Implementations
/// are immutable and safe to evaluate concurrently.
class Wave {
public:
  virtual ~Wave() = default;

  virtual TimeInterval domain() const { return TimeInterval::all(); }
  /// Throws DomainError outside the domain.
  virtual cdouble value(double t, double x) const = 0;
  /// Whether jet() yields exact partial derivatives.
  virtual bool has_jet() const { return false; }
  /// Exact partials; throws DomainError when !has_jet().
  virtual Jet jet(double t, double x) const;
  virtual std::string describe() const = 0;

protected:
  void check_time(double t) const;
};

using WavePtr = std::shared_ptr<const Wave>;

/// The same wave with its domain narrowed to `interval`. Used to pick a branch
/// before applying transformations singular somewhere in time.
WavePtr restrict_domain(WavePtr wave, const TimeInterval& interval);

} // namespace tdnls
