#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tdnls/rational.hpp"

namespace tdnls {

/// Dense univariate polynomial in t over Q(i). Coefficients are stored from
/// the constant term upwards and never carry trailing zeros.
class Poly {
public:
  Poly() = default;
  Poly(GaussianRational c);
  explicit Poly(std::vector<GaussianRational> coeffs);

  static Poly t();

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
  GaussianRational coeff(int k) const;
  const GaussianRational& leading() const { return coeffs_.back(); }
  bool is_real() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const GaussianRational& c) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws DomainError when the divisor is zero.
  static void divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
  Poly monic() const;
  Poly derivative() const;
  std::complex<double> evaluate(std::complex<double> t) const;
  GaussianRational evaluate(const GaussianRational& t) const;

  /// Formula text in the parser's grammar, e.g. "3*t^2-1/2*t+1".
  std::string to_string() const;

private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Monic greatest common divisor (Euclid over Q(i)); gcd(0,0) = 0.
Poly gcd(Poly a, Poly b);

/// Number of distinct real roots of a real polynomial in the closed interval
/// [lo, hi], counted exactly with a Sturm sequence.
int count_real_roots(const Poly& p, const mpq_class& lo, const mpq_class& hi);

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class RationalFunction {
public:
  RationalFunction() : den_(GaussianRational(1)) {}
  RationalFunction(Poly num);
  /// Reduces to canonical form; throws DomainError when den is zero.
  RationalFunction(Poly num, Poly den);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction pow(long n) const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

private:
  Poly num_;
  Poly den_;
};

} // namespace tdnls
