#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace tdnls {

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {0, 1}; }
  /// Exact conversion of a finite double (every double is a dyadic rational).
  static GaussianRational from_double(double v);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// True when the value is a real integer; `out` receives it if it fits in a long.
  bool is_integer(long* out = nullptr) const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws DomainError on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussianRational pow(long n) const;

  /// "3", "-1/2", "2*i", "1/2-3/4*i".
  std::string to_string() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

} // namespace tdnls
