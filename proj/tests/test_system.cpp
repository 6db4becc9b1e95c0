#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cbkdv/ansatz_system.hpp"
#include "cbkdv/newton.hpp"

using namespace cbkdv;

namespace {

const PhysicalParameters kFig1(0.05, -0.15, 0.5, 1.0);
const SignTriple kFig1Signs(1, -1, -1, 1);

PhysicalParameters random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> alpha(0.02, 1.5);
  std::uniform_real_distribution<double> abs_beta(0.05, 1.5);
  std::uniform_real_distribution<double> mu(0.05, 1.5);
  std::uniform_real_distribution<double> s(0.2, 2.5);
  return PhysicalParameters(alpha(rng), -abs_beta(rng), mu(rng), s(rng));
}

}  // namespace

TEST_CASE("closed-form candidates annihilate the extracted system") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const PhysicalParameters p = random_params(rng);
    for (const auto& [signs, candidate] : closed_form_candidates(p)) {
      const SystemValues sys = extract_system(candidate, p);
      CHECK(sys.max_relative() < 1e-10);
    }
  }
}

TEST_CASE("zero candidate yields the zero system") {
  const CandidateVector zero{0.0, 0.0, 1.0, 0.0, 0.0};
  const SystemValues sys = extract_system(zero, kFig1);
  for (int k = 0; k < 7; ++k) CHECK(sys.p[k] == Complex(0.0, 0.0));
}

TEST_CASE("perturbed candidate leaves a visible footprint") {
  CandidateVector c = to_candidate(solve_coefficients(kFig1, kFig1Signs));
  c.B0 += 0.05;
  const SystemValues sys = extract_system(c, kFig1);
  CHECK(sys.max_relative() > 1e-3);
}

TEST_CASE("degenerate width is rejected") {
  CandidateVector c = to_candidate(solve_coefficients(kFig1, kFig1Signs));
  c.C1 = 0.0;
  CHECK_THROWS_AS(extract_system(c, kFig1), DegenerateWidth);
}

TEST_CASE("cleared polynomial reproduces the pointwise residual") {
  // Sum_k P_k E^k divided by (E + E^-1)^3 E^3 at E = exp(C1 xi) must equal
  // the direct ODE residual.
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const PhysicalParameters p = random_params(rng);
    // A generic (non-solution) candidate keeps the residual away from zero.
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const CandidateVector c{coeff(rng), coeff(rng), 0.5 + 0.5 * std::abs(coeff(rng)), coeff(rng),
                            coeff(rng)};

    const LaurentPoly poly = cleared_residual_poly(c, p);
    TravelingWaveSolution sol{p, SignTriple(1, -1, -1, 1),
                              WaveCoefficients{c.C1 / 2.0, c.B0, c.B1, c.C1,
                                               Complex(0.0, c.D1_imag), c.v, 0.0}};

    for (const double xi : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      const Complex E = std::exp(Complex(c.C1 * xi, 0.0));
      const Complex w = E + 1.0 / E;
      const Complex from_poly = eval(poly, E) / (w * w * w * E * E * E);
      const Complex direct = residual_ode(sol, xi);
      CHECK(std::abs(from_poly - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("printed system: zero candidate gives zero on both sides") {
  const CandidateVector zero{0.0, 0.0, 1.0, 0.0, 0.0};
  for (const auto& row : compare_with_printed_system(zero, kFig1)) {
    CHECK(row.machine == Complex(0.0, 0.0));
    CHECK(row.printed == Complex(0.0, 0.0));
  }
}

TEST_CASE("printed system vs machine at the closed form") {
  const CandidateVector c = to_candidate(solve_coefficients(kFig1, kFig1Signs));
  const auto rows = compare_with_printed_system(c, kFig1);
  REQUIRE(rows.size() == 7);

  // The machine-generated equations vanish identically.
  for (const auto& row : rows) CHECK(row.machine_relative < 1e-10);

  // Printed rows 1..6 equal 3s times the machine system and vanish too.
  for (int k = 1; k <= 6; ++k) {
    CHECK(rows[k].printed_relative < 1e-10);
    CHECK(rows[k].discrepancy < 1e-10);
  }

  // The printed P0 does not vanish at the closed form (its transcription
  // carries terms that cannot occur at exponent zero); the report records
  // the value without taking sides.
  CHECK(std::abs(rows[0].printed) == doctest::Approx(0.801217884246544).epsilon(1e-9));
  CHECK(rows[0].discrepancy > 1e-3);
}

TEST_CASE("printed system report is structurally complete on random input") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const PhysicalParameters p = random_params(rng);
  const CandidateVector c{coeff(rng), coeff(rng), 1.0, coeff(rng), coeff(rng)};

  const auto rows = compare_with_printed_system(c, p);
  REQUIRE(rows.size() == 7);
  for (int k = 0; k < 7; ++k) {
    CHECK(rows[k].k == k);
    CHECK(std::isfinite(rows[k].machine.real()));
    CHECK(std::isfinite(rows[k].printed.real()));
    CHECK(std::isfinite(rows[k].discrepancy));
  }
}

TEST_CASE("asymptotic-state structure of the extreme equations") {
  // P6 (and mirrored P0) are the constant-solution conditions at u = B0 + B1
  // and u = B0 - B1: no derivative or D1 content can reach those exponents.
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const PhysicalParameters p = random_params(rng);

  const double B0 = coeff(rng), B1 = coeff(rng), v = coeff(rng);
  const CandidateVector with_d1{B0, B1, 0.8, 0.9, v};
  const CandidateVector without_d1{B0, B1, 0.8, 0.0, v};

  const SystemValues a = extract_system(with_d1, p);
  const SystemValues b = extract_system(without_d1, p);
  CHECK(std::abs(a.p[0] - b.p[0]) < 1e-14);
  CHECK(std::abs(a.p[6] - b.p[6]) < 1e-14);

  const ReducedODECoefficients ode(p, v);
  const double up = B0 + B1;
  const double um = B0 - B1;
  const Complex expected_p6 = ode.a * up * up * up + ode.b * up * up + ode.c * up;
  const Complex expected_p0 = ode.a * um * um * um + ode.b * um * um + ode.c * um;
  CHECK(std::abs(a.p[6] - expected_p6) < 1e-12);
  CHECK(std::abs(a.p[0] - expected_p0) < 1e-12);
}
