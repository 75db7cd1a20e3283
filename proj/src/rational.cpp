#include "tdnls/rational.hpp"

#include <cmath>

#include "tdnls/errors.hpp"

namespace tdnls {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double v) {
  if (!std::isfinite(v))
    throw DomainError("cannot represent a non-finite value exactly");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), v);
  return GaussianRational(q);
}

bool GaussianRational::is_integer(long* out) const {
  if (sgn(im_) != 0 || re_.get_den() != 1)
    return false;
  if (out) {
    if (!re_.get_num().fits_slong_p())
      return false;
    *out = re_.get_num().get_si();
  }
  return true;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero())
    throw DomainError("division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational GaussianRational::pow(long n) const {
  if (n < 0)
    return GaussianRational(1) / pow(-n);
  GaussianRational result(1), base = *this;
  while (n > 0) {
    if (n & 1)
      result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0)
    return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = im_.get_str() + "*i";
  if (sgn(re_) == 0)
    return imag;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

} // namespace tdnls
