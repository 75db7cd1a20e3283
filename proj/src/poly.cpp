#include "tdnls/poly.hpp"

#include <algorithm>
#include <utility>

#include "tdnls/errors.hpp"

namespace tdnls {

Poly::Poly(GaussianRational c) {
  if (!c.is_zero())
    coeffs_.push_back(std::move(c));
}

Poly::Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::t() { return Poly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero())
    coeffs_.pop_back();
}

GaussianRational Poly::coeff(int k) const {
  if (k < 0 || k > degree())
    return GaussianRational(0);
  return coeffs_[k];
}

bool Poly::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GaussianRational& c) { return c.is_real(); });
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_)
    c = -c;
  return r;
}

Poly Poly::scaled(const GaussianRational& c) const {
  if (c.is_zero())
    return {};
  Poly r = *this;
  for (auto& x : r.coeffs_)
    x *= c;
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  if (b.is_zero())
    throw DomainError("polynomial division by zero");
  remainder = a;
  std::vector<GaussianRational> q(std::max(0, a.degree() - b.degree() + 1));
  const GaussianRational inv_lead = GaussianRational(1) / b.leading();
  while (!remainder.is_zero() && remainder.degree() >= b.degree()) {
    const int shift = remainder.degree() - b.degree();
    GaussianRational factor = remainder.leading() * inv_lead;
    for (int k = 0; k <= b.degree(); ++k)
      remainder.coeffs_[k + shift] -= factor * b.coeffs_[k];
    // the leading term cancels exactly
    remainder.coeffs_.pop_back();
    remainder.trim();
    q[shift] = std::move(factor);
  }
  quotient = Poly(std::move(q));
}

Poly Poly::monic() const {
  if (is_zero())
    return {};
  return scaled(GaussianRational(1) / leading());
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1)
    return {};
  std::vector<GaussianRational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
  return Poly(std::move(d));
}

std::complex<double> Poly::evaluate(std::complex<double> t) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + it->to_complex();
  return acc;
}

GaussianRational Poly::evaluate(const GaussianRational& t) const {
  GaussianRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + *it;
  return acc;
}

std::string Poly::to_string() const {
  if (is_zero())
    return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = coeffs_[k];
    if (c.is_zero())
      continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    std::string coef;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      mpq_class mag = abs(c.re());
      if (!(mag == 1 && k > 0))
        coef = mag.get_str();
    } else {
      coef = "(" + c.to_string() + ")";
    }
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? "-" : "+") + term;
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

namespace {

int sign_changes(const std::vector<Poly>& seq, const mpq_class& x) {
  int changes = 0, last = 0;
  const GaussianRational gx(x);
  for (const auto& p : seq) {
    const int s = sgn(p.evaluate(gx).re());
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++changes;
    last = s;
  }
  return changes;
}

} // namespace

int count_real_roots(const Poly& p, const mpq_class& lo, const mpq_class& hi) {
  if (!p.is_real())
    throw DomainError("Sturm root counting needs real coefficients");
  if (p.is_zero())
    throw DomainError("zero polynomial has infinitely many roots");
  if (p.degree() == 0 || lo > hi)
    return 0;
  // Square-free part: distinct roots only.
  Poly q, r;
  Poly::divmod(p, gcd(p, p.derivative()), q, r);
  std::vector<Poly> seq{q, q.derivative()};
  while (seq.back().degree() > 0) {
    Poly quot, rem;
    Poly::divmod(seq[seq.size() - 2], seq.back(), quot, rem);
    if (rem.is_zero())
      break;
    seq.push_back(-rem);
  }
  // Sturm counts roots in (lo, hi]; add a root sitting exactly at lo.
  int count = sign_changes(seq, lo) - sign_changes(seq, hi);
  if (sgn(q.evaluate(GaussianRational(lo)).re()) == 0)
    ++count;
  return count;
}

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(GaussianRational(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) {
  if (den.is_zero())
    throw DomainError("rational function with identically zero denominator");
  if (num.is_zero()) {
    den_ = Poly(GaussianRational(1));
    return;
  }
  Poly g = gcd(num, den);
  Poly rem;
  Poly::divmod(num, g, num_, rem);
  Poly::divmod(den, g, den_, rem);
  const GaussianRational lead = den_.leading();
  num_ = num_.scaled(GaussianRational(1) / lead);
  den_ = den_.monic();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_)
    return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero())
    throw DomainError("division by an identically zero expression");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::pow(long n) const {
  if (n < 0) {
    if (is_zero())
      throw DomainError("negative power of an identically zero expression");
    return RationalFunction(Poly(GaussianRational(1))) / pow(-n);
  }
  RationalFunction result(Poly(GaussianRational(1))), base = *this;
  while (n > 0) {
    if (n & 1)
      result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial())
    return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

} // namespace tdnls
