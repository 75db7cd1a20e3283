#include "tdnls/wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdnls/errors.hpp"

namespace tdnls {

bool TimeInterval::contains(double t) const {
  if (std::isnan(t))
    return false;
  const bool above = lo_open ? t > lo : t >= lo;
  const bool below = hi_open ? t < hi : t <= hi;
  return above && below;
}

bool TimeInterval::empty() const {
  if (lo < hi)
    return false;
  if (lo == hi)
    return lo_open || hi_open;
  return true;
}

TimeInterval TimeInterval::intersect(const TimeInterval& o) const {
  TimeInterval r;
  if (lo > o.lo) {
    r.lo = lo;
    r.lo_open = lo_open;
  } else if (o.lo > lo) {
    r.lo = o.lo;
    r.lo_open = o.lo_open;
  } else {
    r.lo = lo;
    r.lo_open = lo_open || o.lo_open;
  }
  if (hi < o.hi) {
    r.hi = hi;
    r.hi_open = hi_open;
  } else if (o.hi < hi) {
    r.hi = o.hi;
    r.hi_open = o.hi_open;
  } else {
    r.hi = hi;
    r.hi_open = hi_open || o.hi_open;
  }
  return r;
}

std::string TimeInterval::to_string() const {
  std::ostringstream os;
  os << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']');
  return os.str();
}

Jet Wave::jet(double, double) const { throw DomainError(describe() + " has no exact partial derivatives"); }

void Wave::check_time(double t) const {
  const TimeInterval d = domain();
  if (!d.contains(t)) {
    std::ostringstream os;
    os << describe() << ": time " << t << " outside domain " << d.to_string();
    throw DomainError(os.str());
  }
}

namespace {

class RestrictedWave final : public Wave {
public:
  RestrictedWave(WavePtr inner, TimeInterval d) : inner_(std::move(inner)), domain_(d) {}
  TimeInterval domain() const override { return domain_; }
  cdouble value(double t, double x) const override {
    check_time(t);
    return inner_->value(t, x);
  }
  bool has_jet() const override { return inner_->has_jet(); }
  Jet jet(double t, double x) const override {
    check_time(t);
    return inner_->jet(t, x);
  }
  std::string describe() const override { return inner_->describe() + " on " + domain_.to_string(); }

private:
  WavePtr inner_;
  TimeInterval domain_;
};

} // namespace

WavePtr restrict_domain(WavePtr wave, const TimeInterval& interval) {
  const TimeInterval d = wave->domain().intersect(interval);
  if (d.empty())
    throw DomainError("restricted domain is empty");
  return std::make_shared<RestrictedWave>(std::move(wave), d);
}

} // namespace tdnls
