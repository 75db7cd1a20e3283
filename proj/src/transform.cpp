#include "tdnls/transform.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "tdnls/errors.hpp"

namespace tdnls::transform {

namespace {

constexpr cdouble kI(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// Multiplier and affine preimage of a pullback u'(t, x) = M(t, x) u(tau(t), alpha(t) x + beta(t)).
struct Pullback {
  cdouble M, M_t, M_x, M_xx;
  double tau, tau_t, alpha, alpha_t, beta, beta_t;
};

using PullbackFn = std::function<Pullback(double t, double x)>;

class PullbackWave final : public Wave {
public:
  PullbackWave(WavePtr inner, TimeInterval domain, PullbackFn fn, std::string name)
      : inner_(std::move(inner)), domain_(domain), fn_(std::move(fn)), name_(std::move(name)) {}

  TimeInterval domain() const override { return domain_; }

  cdouble value(double t, double x) const override {
    check_time(t);
    const Pullback p = fn_(t, x);
    return p.M * inner_->value(p.tau, p.alpha * x + p.beta);
  }

  bool has_jet() const override { return inner_->has_jet(); }

  Jet jet(double t, double x) const override {
    check_time(t);
    const Pullback p = fn_(t, x);
    const Jet j = inner_->jet(p.tau, p.alpha * x + p.beta);
    Jet out;
    out.u = p.M * j.u;
    out.u_x = p.M_x * j.u + p.M * p.alpha * j.u_x;
    out.u_xx = p.M_xx * j.u + 2.0 * p.M_x * p.alpha * j.u_x + p.M * p.alpha * p.alpha * j.u_xx;
    out.u_t = p.M_t * j.u + p.M * (p.tau_t * j.u_t + (p.alpha_t * x + p.beta_t) * j.u_x);
    return out;
  }

  std::string describe() const override { return name_ + " of " + inner_->describe(); }

private:
  WavePtr inner_;
  TimeInterval domain_;
  PullbackFn fn_;
  std::string name_;
};

// Image of an interval under an increasing time map `f` that is singular at
// `singular` (if any); f must also handle the infinite endpoints.
TimeInterval image(const TimeInterval& d, const std::function<double(double)>& f,
                   std::optional<double> singular) {
  if (singular && d.contains(*singular)) {
    std::ostringstream os;
    os << "time interval " << d.to_string() << " crosses the singular time " << *singular
       << "; restrict the domain to one branch first";
    throw DomainError(os.str());
  }
  TimeInterval r;
  r.lo_open = d.lo_open;
  r.hi_open = d.hi_open;
  r.lo = (singular && d.lo == *singular) ? -kInf : f(d.lo);
  r.hi = (singular && d.hi == *singular) ? kInf : f(d.hi);
  return r;
}

double expansion_time(double kappa, double t) {
  if (std::isinf(t))
    return kappa == 0.0 ? t : -1.0 / kappa;
  return t / (1.0 - kappa * t);
}

std::optional<double> expansion_singularity(double kappa) {
  if (kappa == 0.0)
    return std::nullopt;
  return 1.0 / kappa;
}

// One primitive as a pullback with its output domain.
WavePtr apply_primitive(const Primitive& prim, WavePtr inner) {
  const TimeInterval in = inner->domain();
  return std::visit(
      overloaded{
          [&](const Dilatation& d) -> WavePtr {
            const double delta = d.delta;
            const TimeInterval out = image(in, [delta](double t) { return delta * delta * t; }, std::nullopt);
            PullbackFn fn = [delta](double t, double) {
              const double inv = 1.0 / delta;
              return Pullback{inv, 0.0, 0.0, 0.0, t * inv * inv, inv * inv, inv, 0.0, 0.0, 0.0};
            };
            return std::make_shared<PullbackWave>(std::move(inner), out, std::move(fn),
                                                  "dilatation(" + std::to_string(delta) + ")");
          },
          [&](const TimeTranslation& tr) -> WavePtr {
            const double eps = tr.epsilon;
            const TimeInterval out = image(in, [eps](double t) { return t + eps; }, std::nullopt);
            PullbackFn fn = [eps](double t, double) {
              return Pullback{1.0, 0.0, 0.0, 0.0, t - eps, 1.0, 1.0, 0.0, 0.0, 0.0};
            };
            return std::make_shared<PullbackWave>(std::move(inner), out, std::move(fn),
                                                  "time translation(" + std::to_string(eps) + ")");
          },
          [&](const Expansion& e) -> WavePtr {
            const double kappa = e.kappa;
            const TimeInterval out =
                image(in, [kappa](double t) { return expansion_time(kappa, t); }, expansion_singularity(kappa));
            PullbackFn fn = [kappa](double t, double x) {
              // In output coordinates 1 - kappa t_pre = 1/s with s = 1 + kappa t.
              const double s = 1.0 + kappa * t;
              if (s == 0.0)
                throw DomainError("expansion is singular at t = " + std::to_string(t));
              const cdouble M = std::pow(std::abs(s), -kExpansionWeight) * std::polar(1.0, kappa * x * x / (4.0 * s));
              const cdouble q = kI * kappa * x / (2.0 * s);
              Pullback p;
              p.M = M;
              p.M_t = M * (-kExpansionWeight * kappa / s - kI * kappa * kappa * x * x / (4.0 * s * s));
              p.M_x = M * q;
              p.M_xx = M * (q * q + kI * kappa / (2.0 * s));
              p.tau = t / s;
              p.tau_t = 1.0 / (s * s);
              p.alpha = 1.0 / s;
              p.alpha_t = -kappa / (s * s);
              p.beta = 0.0;
              p.beta_t = 0.0;
              return p;
            };
            return std::make_shared<PullbackWave>(std::move(inner), out, std::move(fn),
                                                  "expansion(" + std::to_string(kappa) + ")");
          },
          [&](const Boost& b) -> WavePtr {
            const double c = b.c;
            PullbackFn fn = [c](double t, double x) {
              const double ax = kBoostPhaseX * c, bt = kBoostPhaseT * c * c;
              const cdouble M = std::polar(1.0, ax * x + bt * t);
              return Pullback{M, kI * bt * M, kI * ax * M, -ax * ax * M, t, 1.0, 1.0, 0.0, -c * t, -c};
            };
            return std::make_shared<PullbackWave>(std::move(inner), in, std::move(fn),
                                                  "boost(" + std::to_string(c) + ")");
          },
      },
      prim);
}

double parse_number(std::string_view text, std::size_t offset) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ParseError("malformed number '" + s + "'", offset);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

TransformSpec::TransformSpec(std::vector<Primitive> steps) : steps_(std::move(steps)) {
  for (const auto& p : steps_) {
    if (const auto* d = std::get_if<Dilatation>(&p); d && !(d->delta != 0.0 && std::isfinite(d->delta)))
      throw ConfigError("dilatation parameter must be finite and nonzero");
  }
}

TransformSpec TransformSpec::parse(std::string_view text) {
  std::vector<Primitive> steps;
  if (trim(text).empty())
    return TransformSpec();
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = std::min(text.find(';', pos), text.size());
    const std::string_view raw = text.substr(pos, end - pos);
    const std::string_view item = trim(raw);
    const std::size_t at = pos + static_cast<std::size_t>(item.empty() ? 0 : item.data() - raw.data());
    if (item.empty())
      throw ParseError("empty transform step", at);
    if (item == "Dmap") {
      const TransformSpec d = d_map();
      steps.insert(steps.end(), d.steps().begin(), d.steps().end());
    } else {
      if (item.size() < 4 || item[1] != '(' || item.back() != ')')
        throw ParseError("expected D(..), E(..), T(..), B(..) or Dmap", at);
      const double v = parse_number(trim(item.substr(2, item.size() - 3)), at + 2);
      switch (item[0]) {
      case 'D':
        steps.emplace_back(Dilatation{v});
        break;
      case 'E':
        steps.emplace_back(Expansion{v});
        break;
      case 'T':
        steps.emplace_back(TimeTranslation{v});
        break;
      case 'B':
        steps.emplace_back(Boost{v});
        break;
      default:
        throw ParseError(std::string("unknown transform '") + item[0] + "'", at);
      }
    }
    if (end >= text.size())
      break;
    pos = end + 1;
  }
  return TransformSpec(std::move(steps));
}

std::string TransformSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& p : steps_) {
    if (!first)
      os << ';';
    first = false;
    std::visit(overloaded{
                   [&](const Dilatation& d) { os << "D(" << d.delta << ")"; },
                   [&](const Expansion& e) { os << "E(" << e.kappa << ")"; },
                   [&](const TimeTranslation& t) { os << "T(" << t.epsilon << ")"; },
                   [&](const Boost& b) { os << "B(" << b.c << ")"; },
               },
               p);
  }
  return os.str();
}

TransformSpec compose(const TransformSpec& first, const TransformSpec& second) {
  std::vector<Primitive> steps = first.steps();
  steps.insert(steps.end(), second.steps().begin(), second.steps().end());
  return TransformSpec(std::move(steps));
}

TransformSpec d_map() { return TransformSpec({TimeTranslation{1.0}, Expansion{1.0}, TimeTranslation{1.0}}); }

Primitive galilean_boost(double c) { return Boost{c}; }

TransformSpec coefficient_family_map(double a, double b) {
  if (!(a > 0.0))
    throw ConfigError("coefficient family map needs a > 0");
  return TransformSpec({Dilatation{1.0 / std::sqrt(a)}, TimeTranslation{-b / a}});
}

Point coordinate_action(const TransformSpec& spec, double t, double x) {
  // Stepwise pass: reports the first singular primitive.
  double ts = t;
  for (const auto& p : spec.steps()) {
    std::visit(overloaded{
                   [&](const Dilatation& d) { ts *= d.delta * d.delta; },
                   [&](const Expansion& e) {
                     const double s = 1.0 - e.kappa * ts;
                     if (s == 0.0)
                       throw DomainError("expansion is singular at t = " + std::to_string(ts));
                     ts /= s;
                   },
                   [&](const TimeTranslation& tr) { ts += tr.epsilon; },
                   [](const Boost&) {},
               },
               p);
  }
  // Each run of SL(2, R) primitives acts through one matrix, which avoids the
  // cancellation of applying them one at a time.
  std::vector<Primitive> run;
  auto flush = [&] {
    if (run.empty())
      return;
    const Point q = mobius_action(mobius_matrix(TransformSpec(run)), t, x);
    t = q.t;
    x = q.x;
    run.clear();
  };
  for (const auto& p : spec.steps()) {
    if (const auto* b = std::get_if<Boost>(&p)) {
      flush();
      x += b->c * t;
    } else {
      run.push_back(p);
    }
  }
  flush();
  return {t, x};
}

Point preimage(const TransformSpec& spec, double t, double x) {
  const auto& steps = spec.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::visit(overloaded{
                   [&](const Dilatation& d) {
                     t /= d.delta * d.delta;
                     x /= d.delta;
                   },
                   [&](const Expansion& e) {
                     const double s = 1.0 + e.kappa * t;
                     if (s == 0.0)
                       throw DomainError("expansion preimage is singular at t = " + std::to_string(t));
                     t /= s;
                     x /= s;
                   },
                   [&](const TimeTranslation& tr) { t -= tr.epsilon; },
                   [&](const Boost& b) { x -= b.c * t; },
               },
               *it);
  }
  return {t, x};
}

TimeInterval map_interval(const TransformSpec& spec, const TimeInterval& interval) {
  TimeInterval d = interval;
  for (const auto& p : spec.steps()) {
    d = std::visit(
        overloaded{
            [&](const Dilatation& dl) {
              const double s = dl.delta * dl.delta;
              return image(d, [s](double t) { return s * t; }, std::nullopt);
            },
            [&](const Expansion& e) {
              const double k = e.kappa;
              return image(d, [k](double t) { return expansion_time(k, t); }, expansion_singularity(k));
            },
            [&](const TimeTranslation& tr) {
              const double eps = tr.epsilon;
              return image(d, [eps](double t) { return t + eps; }, std::nullopt);
            },
            [&](const Boost&) { return d; },
        },
        p);
  }
  return d;
}

WavePtr apply(const TransformSpec& spec, WavePtr wave) {
  for (const auto& p : spec.steps())
    wave = apply_primitive(p, std::move(wave));
  return wave;
}

WavePtr theorem2_map(WavePtr wave, Direction direction) {
  if (direction == Direction::Forward) {
    const TimeInterval src = wave->domain().intersect(TimeInterval::negative());
    if (src.empty())
      throw DomainError("theorem2 forward map needs the source defined for some t < 0");
    const TimeInterval out = image(src, [](double s) { return std::isinf(s) ? 0.0 : -1.0 / s; }, 0.0);
    PullbackFn fn = [](double t, double x) {
      if (!(t > 0.0))
        throw DomainError("theorem2 forward map is defined for t > 0");
      const cdouble M = std::polar(1.0 / std::sqrt(t), x * x / (4.0 * t));
      const cdouble q = kI * x / (2.0 * t);
      Pullback p;
      p.M = M;
      p.M_t = M * (-1.0 / (2.0 * t) - kI * x * x / (4.0 * t * t));
      p.M_x = M * q;
      p.M_xx = M * (q * q + kI / (2.0 * t));
      p.tau = -1.0 / t;
      p.tau_t = 1.0 / (t * t);
      p.alpha = -1.0 / t;
      p.alpha_t = 1.0 / (t * t);
      p.beta = 0.0;
      p.beta_t = 0.0;
      return p;
    };
    return std::make_shared<PullbackWave>(std::move(wave), out, std::move(fn), "theorem2 forward map");
  }
  const TimeInterval src = wave->domain().intersect(TimeInterval::positive());
  if (src.empty())
    throw DomainError("theorem2 inverse map needs the source defined for some t > 0");
  const TimeInterval out = image(src, [](double t) { return std::isinf(t) ? 0.0 : -1.0 / t; }, 0.0);
  PullbackFn fn = [](double s, double y) {
    if (!(s < 0.0))
      throw DomainError("theorem2 inverse map is defined for t < 0");
    const cdouble M = std::polar(1.0 / std::sqrt(-s), y * y / (4.0 * s));
    const cdouble q = kI * y / (2.0 * s);
    Pullback p;
    p.M = M;
    p.M_t = M * (-1.0 / (2.0 * s) - kI * y * y / (4.0 * s * s));
    p.M_x = M * q;
    p.M_xx = M * (q * q + kI / (2.0 * s));
    p.tau = -1.0 / s;
    p.tau_t = 1.0 / (s * s);
    p.alpha = 1.0 / s;
    p.alpha_t = -1.0 / (s * s);
    p.beta = 0.0;
    p.beta_t = 0.0;
    return p;
  };
  return std::make_shared<PullbackWave>(std::move(wave), out, std::move(fn), "theorem2 inverse map");
}

Mobius mobius_matrix(const TransformSpec& spec) {
  Mobius m;
  for (const auto& p : spec.steps()) {
    Mobius g = std::visit(overloaded{
                              [](const Dilatation& d) { return Mobius{d.delta, 0.0, 0.0, 1.0 / d.delta}; },
                              [](const Expansion& e) { return Mobius{1.0, 0.0, -e.kappa, 1.0}; },
                              [](const TimeTranslation& t) { return Mobius{1.0, t.epsilon, 0.0, 1.0}; },
                              [](const Boost&) -> Mobius { throw ConfigError("boosts have no SL(2,R) matrix"); },
                          },
                          p);
    // later steps multiply from the left
    m = Mobius{g.a * m.a + g.b * m.c, g.a * m.b + g.b * m.d, g.c * m.a + g.d * m.c, g.c * m.b + g.d * m.d};
  }
  return m;
}

Point mobius_action(const Mobius& m, double t, double x) {
  const double den = m.c * t + m.d;
  if (den == 0.0)
    throw DomainError("Mobius action is singular at t = " + std::to_string(t));
  return {(m.a * t + m.b) / den, x / den};
}

ComplexField transform_field(const TransformSpec& spec, const ComplexField& field) {
  field.validate();
  const double t_out = coordinate_action(spec, field.time, 0.0).t;
  std::vector<double> xs(field.grid.n);
  for (int j = 0; j < field.grid.n; ++j)
    xs[j] = coordinate_action(spec, field.time, field.grid.x(j)).x;
  const double step = (xs.back() - xs.front()) / (field.grid.n - 1);
  const double x_min = step > 0 ? xs.front() : xs.back();
  GridSpec grid{x_min, x_min + field.grid.n * std::abs(step), field.grid.n};
  const WavePtr src = std::make_shared<GriddedWave>(field);
  const WavePtr img = apply(spec, src);
  ComplexField out{grid, std::vector<cdouble>(grid.n), t_out};
  for (int j = 0; j < grid.n; ++j)
    out.samples[j] = img->value(t_out, grid.x(j));
  return out;
}

} // namespace tdnls::transform
