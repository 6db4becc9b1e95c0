#include "cbkdv/solution.hpp"

#include <algorithm>
#include <cmath>

namespace cbkdv {

namespace {

// The two positive building blocks of kappa:
//   t1 = (alpha/(2|beta|)) sqrt(|beta|/(6s)),   t2 = mu/(6s).
struct KappaTerms {
  double t1;
  double t2;
};

KappaTerms kappa_terms(const PhysicalParameters& p) {
  const double m = p.abs_beta();
  return {p.alpha / (2.0 * m) * std::sqrt(m / (6.0 * p.s)), p.mu / (6.0 * p.s)};
}

}  // namespace

double kappa(const PhysicalParameters& params, int eps1, int eps2) {
  const auto [t1, t2] = kappa_terms(params);
  return eps1 * t1 - eps2 * t2;
}

double branch_velocity(const PhysicalParameters& params, int eps3) {
  const auto [t1, t2] = kappa_terms(params);
  const double bracket = t1 - eps3 * t2;
  return -params.mu * params.mu / (6.0 * params.s) - 2.0 * params.s * bracket * bracket -
         params.alpha * params.alpha / (4.0 * params.beta);
}

WaveCoefficients solve_coefficients(const PhysicalParameters& params, const SignTriple& signs) {
  signs.require_constraint();

  const auto [t1, t2] = kappa_terms(params);
  const double k = signs.eps1 * t1 - signs.eps2 * t2;

  // kappa = 0 collapses tanh(2*kappa*xi) to a constant; refuse to hand back
  // a constant disguised as a wave.
  if (std::abs(k) < 1e-14 * t1 + 1e-30) {
    throw DegenerateWidth("kappa is numerically zero for this sign branch");
  }

  const double m = params.abs_beta();
  const double root = std::sqrt(6.0 * params.s / m);  // sqrt(6s/|beta|)

  WaveCoefficients c;
  c.kappa = k;
  c.B0 = -params.alpha / (2.0 * params.beta) - signs.eps3 * root * t2;
  c.B1 = signs.eps3 * root * k;
  c.C1 = 2.0 * k;
  c.D1 = Complex(0.0, signs.eps * (params.alpha / (2.0 * m) - signs.eps3 * t2 * root));
  c.v = branch_velocity(params, signs.eps3);
  c.x0 = 0.0;
  return c;
}

TravelingWaveSolution make_solution(const PhysicalParameters& params, const SignTriple& signs,
                                    double x0) {
  WaveCoefficients c = solve_coefficients(params, signs);
  c.x0 = x0;
  return TravelingWaveSolution{params, signs, c};
}

std::vector<double> trivial_solutions(const PhysicalParameters& params, double velocity) {
  const ReducedODECoefficients ode(params, velocity);
  std::vector<double> roots{0.0};

  if (ode.c == 0.0) {
    // u^2 (a u + b) = 0: zero is a double root.
    roots.push_back(0.0);
    roots.push_back(-ode.b / ode.a);
  } else {
    const double disc = ode.b * ode.b - 4.0 * ode.a * ode.c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      roots.push_back((-ode.b + sq) / (2.0 * ode.a));
      roots.push_back((-ode.b - sq) / (2.0 * ode.a));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Complex evaluate(const TravelingWaveSolution& sol, double x, double t) {
  const WaveCoefficients& c = sol.coeffs;
  const double theta = c.C1 * (x - c.v * t + c.x0);
  return c.B0 + c.B1 * std::tanh(theta) + c.D1 * (1.0 / std::cosh(theta));
}

ProfileDerivatives profile_derivatives(const WaveCoefficients& c, double xi) {
  const double theta = c.C1 * (xi + c.x0);
  const double th = std::tanh(theta);
  const double se = 1.0 / std::cosh(theta);
  const double C1 = c.C1;

  ProfileDerivatives d;
  d.u = c.B0 + c.B1 * th + c.D1 * se;
  d.du = c.B1 * C1 * se * se - c.D1 * C1 * se * th;
  d.d2u = -2.0 * c.B1 * C1 * C1 * se * se * th + c.D1 * C1 * C1 * (se * th * th - se * se * se);
  return d;
}

ResidualBreakdown residual_breakdown(const TravelingWaveSolution& sol, double xi) {
  const ReducedODECoefficients ode(sol.params, sol.coeffs.v);
  const ProfileDerivatives d = profile_derivatives(sol.coeffs, xi);

  ResidualBreakdown b;
  b.second_derivative = d.d2u;
  b.damping = ode.r * d.du;
  b.cubic = ode.a * d.u * d.u * d.u;
  b.quadratic = ode.b * d.u * d.u;
  b.linear = ode.c * d.u;
  return b;
}

double ResidualBreakdown::scale() const {
  return std::max({std::abs(second_derivative), std::abs(damping), std::abs(cubic),
                   std::abs(quadratic), std::abs(linear)});
}

Complex residual_ode(const TravelingWaveSolution& sol, double xi) {
  return residual_breakdown(sol, xi).total();
}

double residual_ode_relative(const TravelingWaveSolution& sol, double xi) {
  const ResidualBreakdown b = residual_breakdown(sol, xi);
  const double scale = std::max(b.scale(), 1e-300);
  return std::abs(b.total()) / scale;
}

double max_relative_residual(const TravelingWaveSolution& sol, double xi_lo, double xi_hi,
                             int n_points) {
  // Normalized by the largest additive term magnitude over the whole grid:
  // at the exponential tails all five terms die together, so a pointwise
  // quotient there would just measure rounding noise against zero.
  double worst_abs = 0.0;
  double scale = 0.0;
  const double step = (n_points > 1) ? (xi_hi - xi_lo) / (n_points - 1) : 0.0;
  for (int i = 0; i < n_points; ++i) {
    const ResidualBreakdown b = residual_breakdown(sol, xi_lo + i * step);
    worst_abs = std::max(worst_abs, std::abs(b.total()));
    scale = std::max(scale, b.scale());
  }
  return worst_abs / std::max(scale, 1e-300);
}

AmplitudeBalance amplitude_balance(const WaveCoefficients& coeffs) {
  const double b1 = std::abs(coeffs.B1);
  const double d1 = std::abs(coeffs.D1);
  if (b1 == 0.0 && d1 == 0.0) {
    throw DegenerateAmplitudes("both amplitudes vanish; quotient undefined");
  }
  const Complex d1sq = coeffs.D1 * coeffs.D1;  // real and negative for pure-imaginary D1
  AmplitudeBalance out;
  out.quotient = coeffs.B1 * coeffs.B1 / d1sq.real();
  out.balanced = std::abs(b1 - d1) <= 1e-12 * std::max({1.0, b1, d1});
  return out;
}

}  // namespace cbkdv
