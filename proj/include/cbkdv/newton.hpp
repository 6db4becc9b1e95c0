#pragma once

#include <optional>
#include <vector>

#include "cbkdv/ansatz_system.hpp"

namespace cbkdv {

/// Damped Gauss-Newton least squares on the real/imaginary split of the
/// seven extracted equations (14 real residuals, 5 real unknowns).  Returns
/// the converged candidate; throws NoConvergence after max_iter sweeps and
/// ConvergedToDegenerate when the limit is a constant solution
/// (|B1| + |D1| < tol).
CandidateVector newton_solve(const PhysicalParameters& params, const CandidateVector& initial,
                             int max_iter, double tol);

/// Search mode with D1 unconstrained in the complex plane (6 real unknowns).
/// Exists to check that generic complex starts still land on pure-imaginary
/// D1.
struct ComplexCandidate {
  double B0 = 0.0;
  double B1 = 0.0;
  double C1 = 0.0;
  Complex D1;
  double v = 0.0;
};
ComplexCandidate newton_solve_complex_d1(const PhysicalParameters& params,
                                         const ComplexCandidate& initial, int max_iter,
                                         double tol);

/// The ansatz is invariant under (C1, B1) -> (-C1, -B1) (tanh odd, sech
/// even), so solutions come in mirrored pairs; this picks the C1 >= 0
/// representative.
CandidateVector canonicalize(const CandidateVector& c);

/// All eight closed-form branches (four constraint-satisfying sign triples
/// times the free eps), as candidates.
std::vector<std::pair<SignTriple, CandidateVector>> closed_form_candidates(
    const PhysicalParameters& params);

/// Max-norm distance after canonicalizing both sides.
double candidate_distance(const CandidateVector& a, const CandidateVector& b);

struct BranchMatch {
  SignTriple signs;
  double distance;
};

/// Nearest closed-form branch within tol, if any.
std::optional<BranchMatch> match_branch(const CandidateVector& candidate,
                                        const PhysicalParameters& params, double tol);

/// Multi-start study: n_starts Gauss-Newton runs seeded round-robin from the
/// eight closed-form branches plus uniform noise, classified against the
/// closed form.  Deterministic for a fixed seed.
struct MultiStartSummary {
  int branch_matches = 0;
  int degenerate_constants = 0;  // converged with |B1| + |D1| below amplitude_floor
  int no_convergence = 0;
  int unmatched = 0;             // converged, nontrivial, not a closed-form branch
  double worst_match_distance = 0.0;
};
MultiStartSummary multi_start_study(const PhysicalParameters& params, int n_starts, double noise,
                                    unsigned seed, int max_iter, double tol, double match_tol,
                                    double amplitude_floor = 1e-3);

}  // namespace cbkdv
