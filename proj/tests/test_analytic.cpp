#include <doctest.h>

#include <cmath>
#include <random>

#include "tdnls/analytic.hpp"
#include "tdnls/errors.hpp"
#include "tdnls/solver.hpp"

using namespace tdnls;
using namespace tdnls::analytic;

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<SpaceTimePoint> points(std::uint64_t seed, int n, double t_lo, double t_hi, double x_lo = -10,
                                   double x_hi = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dt(t_lo, t_hi), dx(x_lo, x_hi);
  std::vector<SpaceTimePoint> p(n);
  for (auto& q : p)
    q = {dt(rng), dx(rng)};
  return p;
}

double max_abs(const std::vector<cdouble>& r) {
  double m = 0;
  for (auto z : r)
    m = std::max(m, std::abs(z));
  return m;
}

// sech written independently of the library
double sech(double x) { return 2.0 / (std::exp(x) + std::exp(-x)); }

void check_partials(const Wave& w, double t_lo, double t_hi) {
  const double h = 1e-5;
  for (const auto& p : points(5, 200, t_lo, t_hi, -8, 8)) {
    const Jet j = w.jet(p.t, p.x);
    const cdouble ut = (w.value(p.t + h, p.x) - w.value(p.t - h, p.x)) / (2 * h);
    const cdouble ux = (w.value(p.t, p.x + h) - w.value(p.t, p.x - h)) / (2 * h);
    const cdouble uxx = (w.value(p.t, p.x + h) - 2.0 * w.value(p.t, p.x) + w.value(p.t, p.x - h)) / (h * h);
    CHECK(std::abs(j.u - w.value(p.t, p.x)) == doctest::Approx(0.0));
    CHECK(std::abs(j.u_t - ut) <= 1e-6 * (1 + std::abs(ut)));
    CHECK(std::abs(j.u_x - ux) <= 1e-6 * (1 + std::abs(ux)));
    CHECK(std::abs(j.u_xx - uxx) <= 1e-4 * (1 + std::abs(uxx)));
  }
}

} // namespace

TEST_CASE("standing soliton values") {
  const auto s = standing_soliton(0.7);
  CHECK(std::abs(s->value(0.0, 0.7) - cdouble(kSqrt2)) < 1e-15);
  CHECK(std::abs(s->value(0.0, 1.7)) == doctest::Approx(kSqrt2 * sech(1.0)).epsilon(1e-14));
  CHECK(std::abs(s->value(0.0, 1.7)) == doctest::Approx(0.9164871429693121).epsilon(1e-14));
  for (double t : {-3.0, 0.0, 0.4, 12.0})
    CHECK(std::abs(s->value(t, 2.1)) == doctest::Approx(std::abs(s->value(0.0, 2.1))).epsilon(1e-15));
}

TEST_CASE("travelling soliton") {
  CHECK_THROWS_AS(travelling_soliton(1.0, -1.0), ConfigError);
  CHECK_THROWS_AS(travelling_soliton(0.0, 0.0), ConfigError);
  const auto a = travelling_soliton(0.0, 1.0);
  const auto s = standing_soliton(0.0);
  for (const auto& p : points(1, 100, -2, 2))
    CHECK(std::abs(a->value(p.t, p.x) - s->value(p.t, p.x)) < 1e-14);
  const auto tr = travelling_soliton(1.0, 1.0);
  CHECK(tr->amplitude() == doctest::Approx(kSqrt2));
  // crest position: the modulus peaks where x + 2kt = 0
  for (double t : {0.0, 0.5, 1.0}) {
    const double crest = -2.0 * t;
    CHECK(std::abs(tr->value(t, crest)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(tr->value(t, crest + 0.1)) < 2.0);
    CHECK(std::abs(tr->value(t, crest - 0.1)) < 2.0);
  }
}

TEST_CASE("time-dependent soliton") {
  const auto u = td_soliton(0.0);
  CHECK(std::abs(u->value(1.0, 0.0) - kSqrt2 * std::polar(1.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(u->value(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(u->value(-1.0, 1.0), DomainError);
  for (double x0 : {0.0, 1.0, -2.0})
    for (double t : {0.5, 1.0, 3.0})
      CHECK(std::abs(td_soliton(x0)->value(t, 0.0)) ==
            doctest::Approx(std::sqrt(2.0 / t) * sech(x0)).epsilon(1e-14));
  CHECK_THROWS_AS(AnalyticSolution(SolutionKind::TimeDependent, {0.0, 0.0, 1.0, 2.0, 3.0}), ConfigError);
}

TEST_CASE("exact partials agree with finite differences") {
  check_partials(*standing_soliton(0.3), -2, 2);
  check_partials(*travelling_soliton(1.0, 1.0), -1, 1);
  check_partials(*travelling_soliton(-0.6, 0.4), -1, 1);
  check_partials(*td_soliton(-0.5), 0.5, 2.0);
}

TEST_CASE("pde residuals of the closed forms") {
  const Expr one(1), inv_t = parse("1/t");
  CHECK(max_abs(pde_residual(*standing_soliton(0.0), one, points(2, 100, -3, 3))) < 1e-12);
  CHECK(max_abs(pde_residual(*travelling_soliton(1.0, 1.0), one, points(3, 100, -3, 3))) < 1e-10);
  CHECK(max_abs(pde_residual(*td_soliton(1.0), inv_t, points(4, 100, 0.5, 2.0))) < 1e-10);
  // wrong coefficient leaves the cubic term
  const auto s = standing_soliton(0.0);
  const auto pts = points(6, 20, -1, 1);
  const auto r = pde_residual(*s, Expr(2), pts);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const cdouble u = s->value(pts[k].t, pts[k].x);
    CHECK(std::abs(r[k] - std::norm(u) * u) < 1e-12);
  }
  // the residual of the printed x + k t argument is not small
  class Printed final : public Wave {
  public:
    cdouble value(double t, double x) const override { return jet(t, x).u; }
    bool has_jet() const override { return true; }
    Jet jet(double t, double x) const override {
      const double a = kSqrt2, z = a * (x + t);
      const cdouble ph = std::polar(1.0, t - x);
      const double s = 1 / std::cosh(z), th = std::tanh(z);
      const cdouble u = ph * kSqrt2 * a * s;
      const cdouble ux = cdouble(0, -1) * u - u * a * th;
      const cdouble uxx = -u + 2.0 * cdouble(0, 1) * u * a * th + u * a * a * (th * th - s * s);
      const cdouble ut = cdouble(0, 1) * u - u * a * th;
      return {u, ut, ux, uxx};
    }
    std::string describe() const override { return "printed travelling form"; }
  } printed;
  CHECK(max_abs(pde_residual(printed, one, points(3, 100, -3, 3))) > 1e-2);
  CHECK_THROWS_AS(pde_residual(*td_soliton(0.0), inv_t, std::vector<SpaceTimePoint>{{-1.0, 0.0}}), DomainError);
}

TEST_CASE("gridded residual uses spectral space and central time differences") {
  const GridSpec grid{-20 * M_PI, 20 * M_PI, 1024};
  const auto s = standing_soliton(0.0);
  FieldTriple tri{sample_wave(*s, grid, 0.5 - 1e-5), sample_wave(*s, grid, 0.5), sample_wave(*s, grid, 0.5 + 1e-5),
                  1e-5};
  double m = 0;
  for (auto z : pde_residual(tri, Expr(1)))
    m = std::max(m, std::abs(z));
  CHECK(m < 1e-8);
  const ComplexField zero = zero_field(grid, 0.0);
  for (auto z : pde_residual(FieldTriple{zero, zero, zero, 1e-5}, Expr(1)))
    CHECK(z == cdouble(0.0));
  // the solver-built stencil gives the same picture
  const auto st = solver::time_stencil(sample_wave(*s, grid, 0.5), Expr(1));
  m = 0;
  for (auto z : pde_residual(st, Expr(1)))
    m = std::max(m, std::abs(z));
  CHECK(m < 1e-8);
}

TEST_CASE("ansatz reduction") {
  const auto pts = points(8, 100, 0.5, 2.0);
  const auto r = ansatz_reduction_residuals(td_profile(0.3), pts);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(std::abs(r.real_part[k]) < 1e-10);
    CHECK(std::abs(r.imag_part[k]) < 1e-10);
  }
  const auto z = ansatz_reduction_residuals([](double, double) { return RealJet{}; }, pts);
  for (std::size_t k = 0; k < pts.size(); ++k)
    CHECK((z.real_part[k] == 0.0 && z.imag_part[k] == 0.0));
  // f = t^{-1/2} g(-1/t, -x/t) kills the second residual for any steady g
  auto g = [](double y) { return std::exp(-y * y) * (1 + 0.3 * y); };
  auto gp = [](double y) { return std::exp(-y * y) * (0.3 - 2 * y * (1 + 0.3 * y)); };
  ProfileEvaluator f = [&](double t, double x) {
    const double y = -x / t, pre = 1 / std::sqrt(t);
    RealJet j;
    j.f = pre * g(y);
    j.f_x = pre * gp(y) * (-1 / t);
    j.f_t = -0.5 * pre / t * g(y) + pre * gp(y) * (x / (t * t));
    return j;
  };
  for (double v : ansatz_reduction_residuals(f, pts).imag_part)
    CHECK(std::abs(v) < 1e-12);
  CHECK_THROWS_AS(ansatz_reduction_residuals(td_profile(0.0), std::vector<SpaceTimePoint>{{0.0, 1.0}}),
                  DomainError);
}

TEST_CASE("steady profile equation") {
  std::vector<double> xs(200);
  for (int k = 0; k < 200; ++k)
    xs[k] = -10 + 20.0 * k / 199;
  for (double x0 : {0.0, 1.5, -3.0})
    for (double v : ode_residual_g(sech_profile(x0), xs))
      CHECK(std::abs(v) < 1e-12);
  for (double v : ode_residual_g([](double) { return SteadyJet{}; }, xs))
    CHECK(v == 0.0);
  for (double v : ode_residual_g([](double) { return SteadyJet{1.0, 0.0, 0.0}; }, xs))
    CHECK(v == 0.0);
  const auto g = sech_profile(0.0);
  CHECK(g(0.5).g == doctest::Approx(kSqrt2 * sech(0.5)).epsilon(1e-15));
}

TEST_CASE("standing soliton mass is time independent") {
  const GridSpec grid{-20 * M_PI, 20 * M_PI, 1024};
  const auto s = standing_soliton(0.0);
  const double m0 = solver::mass(sample_wave(*s, grid, 0.0));
  for (double t : {0.3, 1.0, 5.0})
    CHECK(std::abs(solver::mass(sample_wave(*s, grid, t)) - m0) / m0 < 1e-10);
  // integral of 2 sech^2
  CHECK(m0 == doctest::Approx(4.0).epsilon(1e-12));
}
