#include <doctest.h>

#include <cmath>
#include <random>
#include <limits>

#include "tdnls/analytic.hpp"
#include "tdnls/errors.hpp"
#include "tdnls/solver.hpp"
#include "tdnls/transform.hpp"

using namespace tdnls;
using namespace tdnls::transform;

namespace {

constexpr cdouble I(0, 1);

class PlaneWave final : public Wave {
public:
  explicit PlaneWave(double k) : k_(k) {}
  cdouble value(double t, double x) const override { return std::polar(1.0, k_ * x - k_ * k_ * t); }
  bool has_jet() const override { return true; }
  Jet jet(double t, double x) const override {
    const cdouble u = value(t, x);
    return {u, -I * k_ * k_ * u, I * k_ * u, -k_ * k_ * u};
  }
  std::string describe() const override { return "plane wave"; }

private:
  double k_;
};

// Expansion with an adjustable weight, written from the formula in output
// coordinates: u'(t, x) = s^-w exp(i kappa x^2 / 4s) u(t/s, x/s), s = 1 + kappa t.
class WeightedExpansion final : public Wave {
public:
  WeightedExpansion(WavePtr inner, double kappa, double w) : inner_(std::move(inner)), kappa_(kappa), w_(w) {}
  cdouble value(double t, double x) const override { return jet(t, x).u; }
  bool has_jet() const override { return true; }
  Jet jet(double t, double x) const override {
    const double s = 1 + kappa_ * t;
    const Jet j = inner_->jet(t / s, x / s);
    const cdouble M = std::pow(s, -w_) * std::polar(1.0, kappa_ * x * x / (4 * s));
    const cdouble Mx = M * I * kappa_ * x / (2.0 * s);
    const cdouble Mxx = Mx * I * kappa_ * x / (2.0 * s) + M * I * kappa_ / (2.0 * s);
    const cdouble Mt = M * (-w_ * kappa_ / s - I * kappa_ * kappa_ * x * x / (4 * s * s));
    Jet o;
    o.u = M * j.u;
    o.u_x = Mx * j.u + M * j.u_x / s;
    o.u_xx = Mxx * j.u + 2.0 * Mx * j.u_x / s + M * j.u_xx / (s * s);
    o.u_t = Mt * j.u + M * (j.u_t / (s * s) - kappa_ * x / (s * s) * j.u_x);
    return o;
  }
  std::string describe() const override { return "weighted expansion"; }

private:
  WavePtr inner_;
  double kappa_, w_;
};

double max_residual(const Wave& w, const Expr& F, const std::vector<analytic::SpaceTimePoint>& pts) {
  double m = 0;
  for (auto z : analytic::pde_residual(w, F, pts))
    m = std::max(m, std::abs(z));
  return m;
}

std::vector<analytic::SpaceTimePoint> points(std::uint64_t seed, int n, double t_lo, double t_hi, double x_lo,
                                             double x_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dt(t_lo, t_hi), dx(x_lo, x_hi);
  std::vector<analytic::SpaceTimePoint> p(n);
  for (auto& q : p)
    q = {dt(rng), dx(rng)};
  return p;
}

// Restricts to the branch of each expansion that contains t = 0.
WavePtr near_origin(WavePtr w, const TransformSpec& spec) {
  TimeInterval iv = TimeInterval::all();
  for (const auto& p : spec.steps())
    if (const auto* e = std::get_if<Expansion>(&p); e && e->kappa != 0.0) {
      const double s = 1.0 / e->kappa;
      iv = iv.intersect(e->kappa > 0 ? TimeInterval{-std::numeric_limits<double>::infinity(), s, true, true}
                                     : TimeInterval{s, std::numeric_limits<double>::infinity(), true, true});
    }
  return restrict_domain(std::move(w), iv);
}

TransformSpec random_sl2(std::mt19937_64& rng, int steps) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> par(-0.4, 0.4), dil(0.6, 1.5);
  std::vector<Primitive> v;
  for (int k = 0; k < steps; ++k) {
    switch (kind(rng)) {
    case 0:
      v.emplace_back(Dilatation{dil(rng) * (par(rng) < 0 ? -1 : 1)});
      break;
    case 1:
      v.emplace_back(Expansion{par(rng)});
      break;
    default:
      v.emplace_back(TimeTranslation{par(rng)});
    }
  }
  return TransformSpec(v);
}

} // namespace

TEST_CASE("coordinate action examples") {
  const auto d = coordinate_action(TransformSpec({Dilatation{2.0}}), 1.0, 1.0);
  CHECK(d.t == 4.0);
  CHECK(d.x == 2.0);
  const auto e = coordinate_action(TransformSpec({Expansion{1.0}}), 2.0, 3.0);
  CHECK(e.t == -2.0);
  CHECK(e.x == -3.0);
  for (double t : {1.0, 2.0, 0.5}) {
    const auto p = coordinate_action(d_map(), t, 3.0);
    CHECK(p.t == -1.0 / t);
    CHECK(p.x == -3.0 / t);
  }
  CHECK_THROWS_AS(coordinate_action(TransformSpec({Expansion{0.5}}), 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(TransformSpec({Dilatation{0.0}}), ConfigError);
  const auto b = coordinate_action(TransformSpec({Boost{3.0}}), 2.0, 1.0);
  CHECK(b.x == 7.0);
}

TEST_CASE("D decomposition on random points") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> tt(0.05, 5.0), xx(-10, 10), sign(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const double t = tt(rng) * (sign(rng) < 0 ? -1 : 1), x = xx(rng);
    const auto p = coordinate_action(d_map(), t, x);
    CHECK(std::abs(p.t - (-1 / t)) <= 1e-14 * std::max(1.0, std::abs(1 / t)));
    CHECK(std::abs(p.x - (-x / t)) <= 1e-14 * std::max(1.0, std::abs(x / t)));
    const auto back = coordinate_action(d_map(), p.t, p.x);
    CHECK(back.t == doctest::Approx(t).epsilon(1e-13));
    CHECK(back.x == doctest::Approx(-x).epsilon(1e-13));
  }
}

TEST_CASE("composition and identity") {
  const TransformSpec id;
  const auto T = TransformSpec::parse("D(1.5);E(0.2);T(-0.3)");
  const auto a = coordinate_action(compose(id, T), 0.4, 1.2), b = coordinate_action(T, 0.4, 1.2);
  CHECK(a.t == b.t);
  CHECK(a.x == b.x);
  const auto dd = coordinate_action(TransformSpec({Dilatation{3.0}, Dilatation{1.0 / 3.0}}), 0.7, -2.0);
  CHECK(dd.t == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(dd.x == doctest::Approx(-2.0).epsilon(1e-15));
  const auto T2 = TransformSpec::parse("B(0.5);E(-0.1)");
  const auto c = coordinate_action(compose(T, T2), 0.4, 1.2);
  const auto mid = coordinate_action(T, 0.4, 1.2);
  const auto d = coordinate_action(T2, mid.t, mid.x);
  CHECK(c.t == doctest::Approx(d.t).epsilon(1e-15));
  CHECK(c.x == doctest::Approx(d.x).epsilon(1e-15));
  const auto pre = preimage(compose(T, T2), c.t, c.x);
  CHECK(pre.t == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(pre.x == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("group law: coordinate action equals the Mobius action of the matrix product") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tt(-0.5, 0.5), xx(-5, 5);
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    const auto spec = random_sl2(rng, 1 + k % 6);
    const double t = tt(rng), x = xx(rng);
    Point p;
    try {
      p = coordinate_action(spec, t, x);
    } catch (const DomainError&) {
      continue;
    }
    const Mobius m = mobius_matrix(spec);
    CHECK(m.a * m.d - m.b * m.c == doctest::Approx(1.0).epsilon(1e-12));
    const auto q = mobius_action(m, t, x);
    CHECK(std::abs(p.t - q.t) <= 1e-12 * std::max(1.0, std::abs(p.t)));
    CHECK(std::abs(p.x - q.x) <= 1e-12 * std::max(1.0, std::abs(p.x)));
    ++checked;
  }
  CHECK(checked > 90);
  CHECK_THROWS_AS(mobius_matrix(TransformSpec({Boost{1.0}})), ConfigError);
  const Mobius dm = mobius_matrix(d_map());
  CHECK(dm.a == 0.0);
  CHECK(dm.b == 1.0);
  CHECK(dm.c == -1.0);
  CHECK(dm.d == 0.0);
}

TEST_CASE("multiplier cocycle") {
  std::mt19937_64 rng(3);
  const auto base = restrict_domain(std::make_shared<PlaneWave>(0.7), TimeInterval{-1.0, 1.0, true, true});
  const auto pts = points(4, 20, -0.1, 0.1, -4, 4);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    const auto T1 = random_sl2(rng, 2), T2 = random_sl2(rng, 2);
    try {
      const auto nested = transform::apply(T1, transform::apply(T2, base));
      const auto flat = transform::apply(compose(T2, T1), base);
      for (const auto& p : pts) {
        const cdouble a = nested->value(p.t, p.x), b = flat->value(p.t, p.x);
        CHECK(std::abs(a - b) < 1e-12);
      }
      ++checked;
    } catch (const DomainError&) {
      // composition singular on this window
    }
  }
  CHECK(checked > 15);
}

TEST_CASE("expansion weight is pinned by the free-equation oracle") {
  CHECK(kExpansionWeight == 0.5);
  const auto pw = std::make_shared<PlaneWave>(1.3);
  const auto pts = points(5, 50, -0.5, 0.5, -3, 3);
  const Expr free(0);
  const TransformSpec e06({Expansion{0.6}});
  const auto lib = transform::apply(e06, near_origin(pw, e06));
  CHECK(max_residual(*lib, free, pts) < 1e-12);
  const WeightedExpansion half(pw, 0.6, 0.5), full(pw, 0.6, 1.0);
  CHECK(max_residual(half, free, pts) < 1e-12);
  CHECK(max_residual(full, free, pts) > 1e-2);
  for (const auto& p : pts)
    CHECK(std::abs(half.value(p.t, p.x) - lib->value(p.t, p.x)) < 1e-13);
}

TEST_CASE("every primitive keeps free solutions free") {
  const auto pw = std::make_shared<PlaneWave>(-0.9);
  const auto pts = points(6, 50, -0.5, 0.5, -3, 3);
  for (const char* s : {"D(1.7)", "D(-0.4)", "E(-0.8)", "T(2.5)", "B(1.1)", "Dmap;B(-2)"}) {
    auto spec = TransformSpec::parse(s);
    WavePtr src = near_origin(pw, spec);
    if (std::string(s).rfind("Dmap", 0) == 0)
      src = restrict_domain(pw, TimeInterval::negative());
    const auto w = transform::apply(spec, src);
    auto use = pts;
    if (std::string(s).rfind("Dmap", 0) == 0)
      for (auto& p : use)
        p.t = 1.0 + p.t;
    CHECK_MESSAGE(max_residual(*w, Expr(0), use) < 1e-11, s);
  }
}

TEST_CASE("symmetries preserve gridded free solutions") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> amp(-1, 1), c(-3, 3), w(0.5, 2);
  const GridSpec grid{-40, 40, 512};
  for (int trial = 0; trial < 10; ++trial) {
    ComplexField f = zero_field(grid, 0.0);
    const double c1 = c(rng), c2 = c(rng), w1 = w(rng), w2 = w(rng);
    const cdouble a1(amp(rng), amp(rng)), a2(amp(rng), amp(rng));
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.x(j);
      f.samples[j] = a1 * std::exp(-w1 * (x - c1) * (x - c1)) + a2 * std::exp(-w2 * (x - c2) * (x - c2)) *
                                                                    std::polar(1.0, 0.8 * x);
    }
    const auto free_wave = std::make_shared<solver::FreeWave>(f);
    const auto pts = points(10 + trial, 20, -0.2, 0.2, -5, 5);
    for (const char* s : {"D(1.3)", "E(0.7)", "T(-0.4)", "B(0.9)"}) {
      const auto spec = TransformSpec::parse(s);
      const auto img = transform::apply(spec, near_origin(free_wave, spec));
      CHECK_MESSAGE(max_residual(*img, Expr(0), pts) < 1e-8, s);
    }
    // gridded check: dilatation keeps the solution on a grid of its own
    const auto img = transform::apply(TransformSpec::parse("D(2)"), free_wave);
    const GridSpec g2{-80, 80, 512};
    FieldTriple tri{sample_wave(*img, g2, 0.4 - 1e-4), sample_wave(*img, g2, 0.4), sample_wave(*img, g2, 0.4 + 1e-4),
                    1e-4};
    double m = 0;
    for (auto z : analytic::pde_residual(tri, Expr(0)))
      m = std::max(m, std::abs(z));
    CHECK(m < 1e-6);
  }
}

TEST_CASE("theorem 2 map") {
  for (double x0 : {0.0, 1.0, -2.0}) {
    const auto u = theorem2_map(analytic::standing_soliton(x0), Direction::Forward);
    const auto exact = analytic::td_soliton(x0);
    for (const auto& p : points(11, 200, 0.5, 2.0, -10, 10))
      CHECK(std::abs(u->value(p.t, p.x) - exact->value(p.t, p.x)) < 1e-12);
    // t = 1 slice
    const auto psi = analytic::standing_soliton(x0);
    for (double x : {-3.0, 0.0, 2.5})
      CHECK(std::abs(u->value(1.0, x) - std::polar(1.0, x * x / 4) * psi->value(-1.0, -x)) < 1e-15);
  }
  const auto u = theorem2_map(analytic::standing_soliton(0.5), Direction::Forward);
  CHECK(u->domain().lo == 0.0);
  CHECK_THROWS_AS(u->value(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(u->value(-1.0, 1.0), DomainError);
  CHECK(max_residual(*u, parse("1/t"), points(12, 100, 0.5, 3, -5, 5)) < 1e-10);
}

TEST_CASE("theorem 2 forward and inverse are mutually inverse") {
  const auto psi = analytic::travelling_soliton(0.4, 0.8);
  const auto round = theorem2_map(theorem2_map(psi, Direction::Forward), Direction::Inverse);
  for (const auto& p : points(13, 100, -3.0, -0.3, -6, 6))
    CHECK(std::abs(round->value(p.t, p.x) - psi->value(p.t, p.x)) < 1e-13);
  const auto u = analytic::td_soliton(0.2);
  const auto back = theorem2_map(theorem2_map(u, Direction::Inverse), Direction::Forward);
  for (const auto& p : points(14, 100, 0.3, 3.0, -6, 6))
    CHECK(std::abs(back->value(p.t, p.x) - u->value(p.t, p.x)) < 1e-13);
  CHECK_THROWS_AS(theorem2_map(analytic::td_soliton(0.0), Direction::Forward), DomainError);
}

TEST_CASE("the three-step chain equals the theorem 2 map composed with parity") {
  for (double x0 : {0.0, 1.0, -2.0}) {
    const auto psi = restrict_domain(analytic::standing_soliton(x0), TimeInterval::negative());
    const auto chain = transform::apply(d_map(), psi);
    const auto direct = theorem2_map(analytic::standing_soliton(x0), Direction::Forward);
    for (const auto& p : points(15, 100, 0.5, 2.0, -10, 10))
      CHECK(std::abs(chain->value(p.t, p.x) - direct->value(p.t, -p.x)) < 1e-12);
    if (x0 == 0.0)
      for (const auto& p : points(16, 50, 0.5, 2.0, -10, 10))
        CHECK(std::abs(chain->value(p.t, p.x) - direct->value(p.t, p.x)) < 1e-12);
  }
  CHECK_THROWS_AS(transform::apply(d_map(), analytic::standing_soliton(0.0)), DomainError);
}

TEST_CASE("theorem 2 map preserves mass") {
  const auto psi = analytic::travelling_soliton(0.5, 1.0);
  const auto u = theorem2_map(psi, Direction::Forward);
  const double t = 2.0, s = -1.0 / t;
  const GridSpec gu{-120, 120, 8192}, gp{-60, 60, 8192};
  const double mu = solver::mass(sample_wave(*u, gu, t)), mp = solver::mass(sample_wave(*psi, gp, s));
  CHECK(std::abs(mu - mp) / mp < 1e-8);
}

TEST_CASE("galilean boost") {
  CHECK(kBoostPhaseX == 0.5);
  CHECK(kBoostPhaseT == -0.25);
  const auto s = analytic::standing_soliton(0.0);
  const auto id = transform::apply(TransformSpec({Boost{0.0}}), s);
  for (const auto& p : points(17, 20, -1, 1, -5, 5))
    CHECK(id->value(p.t, p.x) == s->value(p.t, p.x));
  for (double k : {-1.0, 0.3, 2.0}) {
    const auto w = transform::apply(TransformSpec({Boost{1.7}}), std::make_shared<PlaneWave>(k));
    CHECK(max_residual(*w, Expr(0), points(18, 50, -1, 1, -5, 5)) < 1e-12);
  }
  for (double c : {-2.0, 0.6, 1.5}) {
    const auto b = transform::apply(TransformSpec({Boost{c}}), s);
    CHECK(max_residual(*b, Expr(1), points(19, 50, -1, 1, -5, 5)) < 1e-12);
    // least-squares fit of the phase v t - k x near the crest
    double stt = 0, stx = 0, sxx = 0, sty = 0, sxy = 0;
    const cdouble ref = b->value(0.0, 0.0);
    for (const auto& p : points(20, 200, -0.3, 0.3, -0.3, 0.3)) {
      const double x = p.x + c * p.t;
      const double y = std::arg(b->value(p.t, x) / ref);
      stt += p.t * p.t;
      stx += p.t * x;
      sxx += x * x;
      sty += p.t * y;
      sxy += x * y;
    }
    const double det = stt * sxx - stx * stx;
    const double v = (sty * sxx - sxy * stx) / det, mk = (sxy * stt - sty * stx) / det;
    CHECK(std::abs(-mk - (-c / 2)) < 1e-10);
    CHECK(std::abs(v - (1 - c * c / 4)) < 1e-10);
    const auto tr = analytic::travelling_soliton(-c / 2, 1 - c * c / 4);
    CHECK(tr->amplitude() == doctest::Approx(1.0));
    for (const auto& p : points(21, 100, -2, 2, -8, 8))
      CHECK(std::abs(b->value(p.t, p.x) - tr->value(p.t, p.x)) < 1e-12);
  }
}

TEST_CASE("coefficient family map") {
  for (auto [a, b] : {std::pair{2.0, 3.0}, {0.5, -1.0}, {1.0, 0.0}}) {
    const auto w = transform::apply(coefficient_family_map(a, b), analytic::td_soliton(0.4));
    const Expr F = Expr(1) / (Expr(GaussianRational::from_double(a)) * Expr::variable() +
                              Expr(GaussianRational::from_double(b)));
    const double pole = -b / a;
    CHECK(w->domain().lo == doctest::Approx(pole));
    CHECK(max_residual(*w, F, points(22, 100, pole + 0.3, pole + 3, -5, 5)) < 1e-10);
  }
  CHECK_THROWS_AS(coefficient_family_map(-1.0, 5.0), ConfigError);
  CHECK_THROWS_AS(coefficient_family_map(0.0, 1.0), ConfigError);
}

TEST_CASE("time intervals through singular maps") {
  CHECK_THROWS_AS(map_interval(TransformSpec({Expansion{1.0}}), TimeInterval::all()), DomainError);
  const auto img = map_interval(d_map(), TimeInterval::negative());
  CHECK(img.lo == 0.0);
  CHECK(std::isinf(img.hi));
  const auto e = map_interval(TransformSpec({Expansion{1.0}}), TimeInterval{1.0, INFINITY, true, true});
  CHECK(std::isinf(e.lo));
  CHECK(e.hi == -1.0);
  const auto inst = map_interval(TransformSpec::parse("D(2);T(1)"), TimeInterval::instant(0.5));
  CHECK(inst.lo == 3.0);
  CHECK(inst.hi == 3.0);
}

TEST_CASE("spec grammar") {
  const auto s = TransformSpec::parse(" D(2) ; E(-0.5);T(1e-1);B(3)");
  CHECK(s.steps().size() == 4);
  CHECK(TransformSpec::parse(s.to_string()).to_string() == s.to_string());
  CHECK(TransformSpec::parse("Dmap").steps().size() == 3);
  CHECK(TransformSpec::parse("").is_identity());
  CHECK(TransformSpec::parse("   ").is_identity());
  for (const char* bad : {"X(1)", "D(", "D()", "D(1);;T(1)", "D(1);", "D(abc)", "E 1", "D(0)"})
    CHECK_THROWS_AS(TransformSpec::parse(bad), Error);
  try {
    TransformSpec::parse("D(1);Q(2)");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
}

TEST_CASE("gridded fields transform node by node") {
  const GridSpec grid{-20 * M_PI, 20 * M_PI, 1024};
  const auto s = analytic::standing_soliton(0.5);
  const ComplexField f = sample_wave(*s, grid, 1.0);
  const auto out = transform_field(TransformSpec::parse("D(2)"), f);
  CHECK(out.time == 4.0);
  CHECK(out.grid.x_min == doctest::Approx(2 * grid.x_min));
  const auto exact = transform::apply(TransformSpec::parse("D(2)"), s);
  for (int j = 0; j < out.grid.n; ++j)
    CHECK(std::abs(out.samples[j] - exact->value(4.0, out.grid.x(j))) < 1e-14);

  const auto psi = sample_wave(*s, grid, -1.0);
  const auto dm = transform_field(d_map(), psi);
  CHECK(dm.time == doctest::Approx(1.0));
  const auto ex = transform::apply(d_map(), restrict_domain(s, TimeInterval::negative()));
  double m = 0;
  for (int j = 0; j < dm.grid.n; ++j)
    m = std::max(m, std::abs(dm.samples[j] - ex->value(dm.time, dm.grid.x(j))));
  CHECK(m < 1e-13);

  // off-node preimages interpolate, and only inside the trusted support
  const auto gw = std::make_shared<GriddedWave>(f);
  const auto half = transform::apply(TransformSpec::parse("D(0.5)"), gw);
  CHECK(std::abs(half->value(0.25, 0.3) - 2.0 * s->value(1.0, 0.6)) < 1e-12);
  CHECK_THROWS_AS(half->value(0.25, 0.45 * grid.x_max), DomainError);
}
