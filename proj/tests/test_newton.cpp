#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cbkdv/newton.hpp"

using namespace cbkdv;

namespace {

const PhysicalParameters kFig1(0.05, -0.15, 0.5, 1.0);
const SignTriple kFig1Signs(1, -1, -1, 1);

}  // namespace

TEST_CASE("noisy start recovers the closed form") {
  const CandidateVector truth = to_candidate(solve_coefficients(kFig1, kFig1Signs));
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);

  for (int trial = 0; trial < 10; ++trial) {
    const CandidateVector start{truth.B0 + noise(rng), truth.B1 + noise(rng),
                                truth.C1 + noise(rng), truth.D1_imag + noise(rng),
                                truth.v + noise(rng)};
    const CandidateVector found = newton_solve(kFig1, start, 100, 1e-12);
    CHECK(candidate_distance(found, truth) < 1e-8);
  }
}

TEST_CASE("all-zero start is the degenerate constant") {
  const CandidateVector zero{};
  CHECK_THROWS_AS(newton_solve(kFig1, zero, 100, 1e-12), ConvergedToDegenerate);
}

TEST_CASE("hopeless budget reports no convergence") {
  const CandidateVector far{5.0, -7.0, 3.0, 4.0, 2.0};
  CHECK_THROWS_AS(newton_solve(kFig1, far, 1, 1e-14), NoConvergence);
}

TEST_CASE("tolerance must be positive") {
  CHECK_THROWS_AS(newton_solve(kFig1, CandidateVector{}, 10, 0.0), InvalidParameters);
}

TEST_CASE("canonicalization folds the mirror symmetry") {
  const CandidateVector c{0.7, -0.7, -0.2, 0.7, -0.06};
  const CandidateVector canon = canonicalize(c);
  CHECK(canon.C1 == 0.2);
  CHECK(canon.B1 == 0.7);
  CHECK(canon.D1_imag == 0.7);  // sech is even: D1 untouched
  CHECK(candidate_distance(c, canon) == 0.0);
}

TEST_CASE("closed_form_candidates enumerates eight branches") {
  const auto branches = closed_form_candidates(kFig1);
  CHECK(branches.size() == 8);
  for (const auto& [signs, candidate] : branches) {
    CHECK(signs.satisfies_constraint());
    const SystemValues sys = extract_system(candidate, kFig1);
    CHECK(sys.max_relative() < 1e-12);
  }
}

TEST_CASE("multi-start study lands only on branches or constants") {
  const MultiStartSummary summary =
      multi_start_study(kFig1, 200, 0.05, /*seed=*/20240809, /*max_iter=*/100, /*tol=*/1e-12,
                        /*match_tol=*/1e-8);
  CHECK(summary.branch_matches + summary.degenerate_constants + summary.no_convergence == 200);
  CHECK(summary.unmatched == 0);
  CHECK(summary.branch_matches > 100);
  CHECK(summary.worst_match_distance < 1e-8);
}

TEST_CASE("the algebraic system also admits pure-tanh kinks") {
  // With D1 = 0 the D1-bearing equations vanish identically and the four
  // remaining ones have real kink solutions u = B0 + B1 tanh(kappa xi) at
  // HALF the family's width (C1 = kappa, not 2 kappa).  The closed-form
  // family is their analytic continuation: tanh(z + i pi/4) =
  // tanh(2z) + i sech(2z).  Wide multi-start boxes do reach these, which is
  // why the study protocol seeds near the closed form.
  const double m = kFig1.abs_beta();
  const double t1 = kFig1.alpha / (2.0 * m) * std::sqrt(m / (6.0 * kFig1.s));
  const double t2 = kFig1.mu / (6.0 * kFig1.s);
  const double kap = t1 - t2;  // kappa with eps1 = eps2 = 1
  const double root = std::sqrt(6.0 * kFig1.s / m);
  const CandidateVector near_kink{-kFig1.alpha / (2.0 * kFig1.beta) - root * t2 + 0.01,
                                  root * kap - 0.01, kap + 0.01, 0.0,
                                  branch_velocity(kFig1, 1) + 0.01};

  const CandidateVector found = newton_solve(kFig1, near_kink, 200, 1e-12);
  CHECK(std::abs(found.D1_imag) < 1e-9);
  CHECK(std::abs(found.B1) > 0.1);
  CHECK(std::abs(std::abs(found.C1) - std::abs(kap)) < 1e-8);
  CHECK(extract_system(found, kFig1).max_relative() < 1e-10);
  CHECK_FALSE(match_branch(found, kFig1, 1e-6).has_value());
}

TEST_CASE("full-complex D1 search lands on pure-imaginary D1") {
  const CandidateVector truth = to_candidate(solve_coefficients(kFig1, kFig1Signs));
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);

  int converged = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // Generic complex start: a real part is deliberately injected into D1.
    const ComplexCandidate start{truth.B0 + noise(rng), truth.B1 + noise(rng),
                                 truth.C1 + noise(rng),
                                 Complex(noise(rng) * 4.0, truth.D1_imag + noise(rng)),
                                 truth.v + noise(rng)};
    ComplexCandidate found;
    try {
      found = newton_solve_complex_d1(kFig1, start, 200, 1e-13);
    } catch (const Error&) {
      continue;  // degenerate basins are legitimate
    }
    ++converged;
    CHECK(std::abs(found.D1.real()) < 1e-7);
  }
  CHECK(converged > 10);
}
