#include "cbkdv/newton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace cbkdv {

namespace {

using Vec = std::vector<double>;

double norm2(const Vec& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

// Solve (J^T J) delta = -J^T f by Gaussian elimination with partial
// pivoting.  A tiny ridge keeps the solve defined near rank-deficient
// points (the constant-solution manifold leaves C1 and v unconstrained).
Vec normal_equation_step(const std::vector<Vec>& jac, const Vec& f, int n) {
  const int m = static_cast<int>(f.size());
  std::vector<Vec> a(n, Vec(n + 1, 0.0));
  double trace = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int k = 0; k < m; ++k) sum += jac[k][i] * jac[k][j];
      a[i][j] = sum;
    }
    trace += a[i][i];
    double rhs = 0.0;
    for (int k = 0; k < m; ++k) rhs += jac[k][i] * f[k];
    a[i][n] = -rhs;
  }
  const double ridge = 1e-14 * std::max(trace, 1e-30);
  for (int i = 0; i < n; ++i) a[i][i] += ridge;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) continue;  // direction stays zero in this coordinate
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  Vec delta(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double sum = a[row][n];
    for (int j = row + 1; j < n; ++j) sum -= a[row][j] * delta[j];
    delta[row] = (a[row][row] == 0.0) ? 0.0 : sum / a[row][row];
  }
  return delta;
}

// Generic damped Gauss-Newton.  Step halving (at most 30 times) until the
// residual norm decreases.
Vec gauss_newton(const std::function<Vec(const Vec&)>& residual, Vec x, int max_iter, double tol,
                 double* final_norm) {
  const int n = static_cast<int>(x.size());
  Vec f = residual(x);
  double fnorm = norm2(f);

  for (int iter = 0; iter < max_iter && fnorm >= tol; ++iter) {
    const int m = static_cast<int>(f.size());
    std::vector<Vec> jac(m, Vec(n, 0.0));
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec fp = residual(xp);
      const Vec fm = residual(xm);
      for (int k = 0; k < m; ++k) jac[k][j] = (fp[k] - fm[k]) / (2.0 * h);
    }

    const Vec delta = normal_equation_step(jac, f, n);
    double step = 1.0;
    bool improved = false;
    for (int halve = 0; halve < 30; ++halve) {
      Vec xn(n);
      for (int j = 0; j < n; ++j) xn[j] = x[j] + step * delta[j];
      Vec fn = residual(xn);
      const double fnn = norm2(fn);
      if (fnn < fnorm) {
        x = std::move(xn);
        f = std::move(fn);
        fnorm = fnn;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;  // stalled; the convergence test below decides
  }

  if (final_norm) *final_norm = fnorm;
  return x;
}

// The solver only needs values, not the cancellation-scale companion, so it
// reads the cleared polynomial directly.
Vec split_residual(const LaurentPoly& poly) {
  Vec f(14);
  for (int k = 0; k < 7; ++k) {
    const Complex c = poly.coefficient(k);
    f[2 * k] = c.real();
    f[2 * k + 1] = c.imag();
  }
  return f;
}

Vec split_residual(const SystemValues& sys) {
  Vec f(14);
  for (int k = 0; k < 7; ++k) {
    f[2 * k] = sys.p[k].real();
    f[2 * k + 1] = sys.p[k].imag();
  }
  return f;
}

}  // namespace

CandidateVector newton_solve(const PhysicalParameters& params, const CandidateVector& initial,
                             int max_iter, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw InvalidParameters("tol must be positive");

  auto residual = [&params](const Vec& x) -> Vec {
    // A zero C1 makes the reduction degenerate; nudge the evaluation point
    // off the singular line so the search can pass through it.
    CandidateVector c{x[0], x[1], x[2] == 0.0 ? 1e-150 : x[2], x[3], x[4]};
    return split_residual(cleared_residual_poly(c, params));
  };

  double fnorm = 0.0;
  const Vec x = gauss_newton(residual, {initial.B0, initial.B1, initial.C1, initial.D1_imag,
                                        initial.v},
                             max_iter, tol, &fnorm);
  if (fnorm >= tol) {
    throw NoConvergence("residual norm " + std::to_string(fnorm) + " after " +
                        std::to_string(max_iter) + " iterations");
  }
  const CandidateVector result{x[0], x[1], x[2], x[3], x[4]};
  if (std::abs(result.B1) + std::abs(result.D1_imag) < tol) {
    throw ConvergedToDegenerate("limit is a constant solution (B1 = D1 = 0)");
  }
  return result;
}

ComplexCandidate newton_solve_complex_d1(const PhysicalParameters& params,
                                         const ComplexCandidate& initial, int max_iter,
                                         double tol) {
  params.validate();
  if (!(tol > 0.0)) throw InvalidParameters("tol must be positive");

  auto residual = [&params](const Vec& x) -> Vec {
    const double c1 = x[2] == 0.0 ? 1e-150 : x[2];
    return split_residual(
        extract_system_complex_d1(x[0], x[1], c1, Complex(x[3], x[4]), x[5], params));
  };

  double fnorm = 0.0;
  const Vec x = gauss_newton(residual,
                             {initial.B0, initial.B1, initial.C1, initial.D1.real(),
                              initial.D1.imag(), initial.v},
                             max_iter, tol, &fnorm);
  if (fnorm >= tol) {
    throw NoConvergence("residual norm " + std::to_string(fnorm) + " after " +
                        std::to_string(max_iter) + " iterations");
  }
  ComplexCandidate result{x[0], x[1], x[2], Complex(x[3], x[4]), x[5]};
  if (std::abs(result.B1) + std::abs(result.D1) < tol) {
    throw ConvergedToDegenerate("limit is a constant solution (B1 = D1 = 0)");
  }
  return result;
}

CandidateVector canonicalize(const CandidateVector& c) {
  CandidateVector out = c;
  if (out.C1 < 0.0) {
    out.C1 = -out.C1;
    out.B1 = -out.B1;
  }
  return out;
}

std::vector<std::pair<SignTriple, CandidateVector>> closed_form_candidates(
    const PhysicalParameters& params) {
  std::vector<std::pair<SignTriple, CandidateVector>> out;
  for (int e1 : {1, -1}) {
    for (int e2 : {1, -1}) {
      const int e3 = e1 * e2;  // the unique eps3 satisfying the constraint
      for (int e : {1, -1}) {
        const SignTriple signs(e1, e2, e3, e);
        out.emplace_back(signs, to_candidate(solve_coefficients(params, signs)));
      }
    }
  }
  return out;
}

double candidate_distance(const CandidateVector& a, const CandidateVector& b) {
  const CandidateVector ca = canonicalize(a);
  const CandidateVector cb = canonicalize(b);
  return std::max({std::abs(ca.B0 - cb.B0), std::abs(ca.B1 - cb.B1), std::abs(ca.C1 - cb.C1),
                   std::abs(ca.D1_imag - cb.D1_imag), std::abs(ca.v - cb.v)});
}

std::optional<BranchMatch> match_branch(const CandidateVector& candidate,
                                        const PhysicalParameters& params, double tol) {
  std::optional<BranchMatch> best;
  for (const auto& [signs, branch] : closed_form_candidates(params)) {
    const double d = candidate_distance(candidate, branch);
    if (d <= tol && (!best || d < best->distance)) best = BranchMatch{signs, d};
  }
  return best;
}

MultiStartSummary multi_start_study(const PhysicalParameters& params, int n_starts, double noise,
                                    unsigned seed, int max_iter, double tol, double match_tol,
                                    double amplitude_floor) {
  const auto branches = closed_form_candidates(params);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-noise, noise);

  MultiStartSummary summary;
  for (int i = 0; i < n_starts; ++i) {
    const CandidateVector& base = branches[i % branches.size()].second;
    const CandidateVector start{base.B0 + jitter(rng), base.B1 + jitter(rng),
                                base.C1 + jitter(rng), base.D1_imag + jitter(rng),
                                base.v + jitter(rng)};
    CandidateVector converged;
    try {
      converged = newton_solve(params, start, max_iter, tol);
    } catch (const ConvergedToDegenerate&) {
      ++summary.degenerate_constants;
      continue;
    } catch (const NoConvergence&) {
      ++summary.no_convergence;
      continue;
    }
    if (std::abs(converged.B1) + std::abs(converged.D1_imag) < amplitude_floor) {
      ++summary.degenerate_constants;
      continue;
    }
    if (const auto match = match_branch(converged, params, match_tol)) {
      ++summary.branch_matches;
      summary.worst_match_distance = std::max(summary.worst_match_distance, match->distance);
    } else {
      ++summary.unmatched;
    }
  }
  return summary;
}

}  // namespace cbkdv
