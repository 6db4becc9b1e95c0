#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cbkdv/analysis.hpp"
#include "cbkdv/solution.hpp"

using namespace cbkdv;

namespace {

const PhysicalParameters kFig1(0.05, -0.15, 0.5, 1.0);

PhysicalParameters random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> alpha(0.02, 1.5);
  std::uniform_real_distribution<double> abs_beta(0.05, 1.5);
  std::uniform_real_distribution<double> mu(0.05, 1.5);
  std::uniform_real_distribution<double> s(0.2, 2.5);
  return PhysicalParameters(alpha(rng), -abs_beta(rng), mu(rng), s(rng));
}

VelocityGradient finite_difference_gradient(const PhysicalParameters& p, int eps3) {
  const double m = p.abs_beta();
  const auto central = [&](auto f, double x) {
    const double h = 1e-6 * std::max(std::abs(x), 1e-3);
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  VelocityGradient g;
  g.dalpha = central([&](double a) { return velocity(a, m, p.mu, p.s, eps3); }, p.alpha);
  g.dmu = central([&](double mu) { return velocity(p.alpha, m, mu, p.s, eps3); }, p.mu);
  g.dabs_beta = central([&](double mm) { return velocity(p.alpha, mm, p.mu, p.s, eps3); }, m);
  g.ds = central([&](double s) { return velocity(p.alpha, m, p.mu, s, eps3); }, p.s);
  return g;
}

}  // namespace

TEST_CASE("velocity agrees exactly with the coefficient family") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const PhysicalParameters p = random_params(rng);
    for (int e1 : {1, -1}) {
      for (int e2 : {1, -1}) {
        const SignTriple signs(e1, e2, e1 * e2);
        const WaveCoefficients c = solve_coefficients(p, signs);
        CHECK(velocity(VelocityQuery(p, signs.eps3)) == c.v);
      }
    }
  }
}

TEST_CASE("variational table values (eps3 = -1)") {
  std::mt19937 rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const PhysicalParameters p = random_params(rng);
    const double m = p.abs_beta();

    // Head of the alpha table: v at alpha -> 0 equals -2 mu^2/(9 s).
    const double head = velocity(0.0, m, p.mu, p.s, -1);
    CHECK(head == doctest::Approx(-2.0 * p.mu * p.mu / (9.0 * p.s)).epsilon(1e-12));
    CHECK(velocity_limit_alpha_to_zero(p.mu, p.s) ==
          doctest::Approx(head).epsilon(1e-13));

    // Minimum of the alpha table: v(alpha_v) = -mu^2/(4 s).
    const double alpha_v = p.mu * std::sqrt(m / (6.0 * p.s));
    CHECK(velocity(alpha_v, m, p.mu, p.s, -1) ==
          doctest::Approx(-p.mu * p.mu / (4.0 * p.s)).epsilon(1e-12));

    // Head of the mu table: v at mu -> 0 equals alpha^2/(6 |beta|).
    CHECK(velocity(p.alpha, m, 0.0, p.s, -1) ==
          doctest::Approx(p.alpha * p.alpha / (6.0 * m)).epsilon(1e-12));
    CHECK(velocity_limit_mu_to_zero(p.alpha, m) ==
          doctest::Approx(p.alpha * p.alpha / (6.0 * m)).epsilon(1e-13));
  }
}

TEST_CASE("tail limits are approached from the right side") {
  // |beta| -> infinity: the closed-form limit is -2 mu^2/(9 s); sampling at
  // a huge |beta| must approach it.  (The printed table shows -mu^2/(9s),
  // which contradicts the velocity formula itself; the formula value is
  // what both the ODE residual and finite differences confirm.)
  const double limit = velocity_limit_abs_beta_to_infinity(kFig1.mu, kFig1.s);
  CHECK(limit == doctest::Approx(-2.0 * 0.25 / 9.0).epsilon(1e-15));
  const double sampled = velocity(kFig1.alpha, 1e12, kFig1.mu, kFig1.s, -1);
  CHECK(sampled == doctest::Approx(limit).epsilon(1e-5));

  // s -> infinity: alpha^2/(6 |beta|), approached from below.
  const double s_limit = velocity_limit_s_to_infinity(kFig1.alpha, kFig1.abs_beta());
  CHECK(s_limit == doctest::Approx(kFig1.alpha * kFig1.alpha / (6.0 * 0.15)).epsilon(1e-15));
  const double s_sampled = velocity(kFig1.alpha, kFig1.abs_beta(), kFig1.mu, 1e10, -1);
  CHECK(s_sampled < s_limit);
  CHECK(s_sampled == doctest::Approx(s_limit).epsilon(1e-4));
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937 rng(57);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const PhysicalParameters p = random_params(rng);
    const int eps3 = sign(rng) ? 1 : -1;
    const VelocityGradient g = velocity_gradient(VelocityQuery(p, eps3));
    const VelocityGradient fd = finite_difference_gradient(p, eps3);

    const auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-6 * std::max({1e-9, std::abs(a), std::abs(b)});
    };
    CHECK(close(g.dalpha, fd.dalpha));
    CHECK(close(g.dmu, fd.dmu));
    CHECK(close(g.dabs_beta, fd.dabs_beta));
    CHECK(close(g.ds, fd.ds));
  }
}

TEST_CASE("stationary points of the eps3 = -1 branch") {
  SUBCASE("alpha_v closed form and derivative zero") {
    const CriticalPoints cp = critical_points(kFig1, -1);
    CHECK(cp.alpha_v == doctest::Approx(0.0790569415042095).epsilon(1e-12));
    const VelocityGradient g =
        velocity_gradient(cp.alpha_v, kFig1.abs_beta(), kFig1.mu, kFig1.s, -1);
    CHECK(std::abs(g.dalpha) < 1e-10);

    // alpha_v is a local minimum.
    const double v0 = velocity(cp.alpha_v, kFig1.abs_beta(), kFig1.mu, kFig1.s, -1);
    for (const double h : {1e-4, 1e-3}) {
      CHECK(velocity(cp.alpha_v + h, kFig1.abs_beta(), kFig1.mu, kFig1.s, -1) >= v0);
      CHECK(velocity(cp.alpha_v - h, kFig1.abs_beta(), kFig1.mu, kFig1.s, -1) >= v0);
    }
  }

  SUBCASE("beta_v is the stationary point of v in |beta|") {
    // 6 alpha^2 s / mu^2; the derivative vanishes there and the minimum
    // value is -mu^2/(4s), matching the variational table's minimum.
    const CriticalPoints cp = critical_points(kFig1, -1);
    CHECK(cp.beta_v == doctest::Approx(-0.06).epsilon(1e-12));
    const double mv = -cp.beta_v;
    const VelocityGradient g = velocity_gradient(kFig1.alpha, mv, kFig1.mu, kFig1.s, -1);
    CHECK(std::abs(g.dabs_beta) < 1e-10);
    CHECK(velocity(kFig1.alpha, mv, kFig1.mu, kFig1.s, -1) ==
          doctest::Approx(-kFig1.mu * kFig1.mu / (4.0 * kFig1.s)).epsilon(1e-12));
  }

  SUBCASE("zero crossings") {
    const CriticalPoints cp = critical_points(kFig1, -1);
    REQUIRE(cp.alpha_c.has_value());
    CHECK(*cp.alpha_c > cp.alpha_v);
    CHECK(std::abs(velocity(*cp.alpha_c, kFig1.abs_beta(), kFig1.mu, kFig1.s, -1)) <= 1e-10);

    REQUIRE(cp.mu_c.has_value());
    CHECK(*cp.mu_c > 0.0);
    CHECK(std::abs(velocity(kFig1.alpha, kFig1.abs_beta(), *cp.mu_c, kFig1.s, -1)) <= 1e-10);
  }

  SUBCASE("mu = 0 leaves no stationary |beta|") {
    const PhysicalParameters inviscid(0.05, -0.15, 0.0, 1.0);
    const CriticalPoints cp = critical_points(inviscid, -1);
    CHECK(std::isnan(cp.beta_v));
    CHECK(cp.alpha_v == 0.0);
    CHECK_FALSE(cp.alpha_c.has_value());
    CHECK_FALSE(cp.mu_c.has_value());
  }
}

TEST_CASE("eps3 = +1 has no critical point in alpha") {
  std::mt19937 rng(58);
  for (int trial = 0; trial < 50; ++trial) {
    const PhysicalParameters p = random_params(rng);
    CHECK(velocity_gradient(VelocityQuery(p, 1)).dalpha > 0.0);
  }
}

TEST_CASE("monotonicity reports (eps3 = -1)") {
  SUBCASE("alpha sweep dips at alpha_v") {
    const CriticalPoints cp = critical_points(kFig1, -1);
    const SweepSpec spec{SweepParameter::Alpha, cp.alpha_v / 10.0, 10.0 * cp.alpha_v, 201, kFig1,
                         -1};
    const MonotonicityReport report = monotonicity_report(spec);
    REQUIRE(report.segments.size() == 2);
    CHECK(report.segments[0].pass);
    CHECK(report.segments[1].pass);
    CHECK(report.pass);
  }

  SUBCASE("mu sweep decreases toward -infinity") {
    const SweepSpec spec{SweepParameter::Mu, 0.0, 3.0, 301, kFig1, -1};
    const MonotonicityReport report = monotonicity_report(spec);
    CHECK(report.pass);
    CHECK(report.samples.front().boundary);  // mu = 0 sits on the closure
    REQUIRE(report.analytic_limit.has_value());
    CHECK(report.observed_head == doctest::Approx(*report.analytic_limit).epsilon(1e-12));
    CHECK(report.observed_tail < report.observed_head);
  }

  SUBCASE("|beta| sweep dips at the stationary point") {
    const SweepSpec spec{SweepParameter::Beta, 0.005, 1.0, 400, kFig1, -1};
    const MonotonicityReport report = monotonicity_report(spec);
    CHECK(report.pass);
  }

  SUBCASE("s sweep increases toward alpha^2/(6 |beta|)") {
    const SweepSpec spec{SweepParameter::S, 0.05, 500.0, 400, kFig1, -1};
    const MonotonicityReport report = monotonicity_report(spec);
    CHECK(report.pass);
    REQUIRE(report.analytic_limit.has_value());
    CHECK(report.observed_tail < *report.analytic_limit);
    CHECK(report.observed_tail == doctest::Approx(*report.analytic_limit).epsilon(0.05));
  }
}

TEST_CASE("sweep validation") {
  CHECK_THROWS_AS(
      monotonicity_report(SweepSpec{SweepParameter::Mu, -0.5, 1.0, 10, kFig1, -1}),
      SweepOutsideValidity);
  CHECK_THROWS_AS(
      monotonicity_report(SweepSpec{SweepParameter::Beta, 0.0, 1.0, 10, kFig1, -1}),
      SweepOutsideValidity);
  CHECK_THROWS_AS(
      monotonicity_report(SweepSpec{SweepParameter::S, 1.0, 0.5, 10, kFig1, -1}),
      SweepOutsideValidity);
  CHECK_THROWS_AS(
      monotonicity_report(SweepSpec{SweepParameter::Alpha, 0.1, 1.0, 1, kFig1, -1}),
      SweepOutsideValidity);
}
