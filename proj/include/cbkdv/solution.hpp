#pragma once

#include <complex>
#include <vector>

#include "cbkdv/types.hpp"

namespace cbkdv {

using Complex = std::complex<double>;

/// Closed-form data of one traveling wave,
///   u(x,t) = B0 + B1 tanh(C1 (x - v t + x0)) + D1 sech(C1 (x - v t + x0)).
/// B0, B1, C1, v are real; D1 is pure imaginary (its real part is stored as
/// exactly zero).  kappa is the half-width, C1 = 2 kappa.
struct WaveCoefficients {
  double kappa;
  double B0;
  double B1;
  double C1;
  Complex D1;
  double v;
  double x0 = 0.0;
};

/// A fully assembled solution branch: parameters, the sign choice, and the
/// coefficients produced by solve_coefficients for exactly that pair.
struct TravelingWaveSolution {
  PhysicalParameters params;
  SignTriple signs;
  WaveCoefficients coeffs;
};

/// Half-width kappa = eps1 * (alpha/(2|beta|)) * sqrt(|beta|/(6s)) - eps2 * mu/(6s).
double kappa(const PhysicalParameters& params, int eps1, int eps2);

/// Wave velocity for a branch; depends on the signs only through eps3
/// (the bracketed quantity squares to kappa^2).
double branch_velocity(const PhysicalParameters& params, int eps3);

/// Builds the coefficient family for one sign branch.  Throws
/// ConstraintViolation unless eps1*eps2*eps3 = 1 and DegenerateWidth when
/// kappa is numerically zero (the profile would collapse to a constant).
WaveCoefficients solve_coefficients(const PhysicalParameters& params, const SignTriple& signs);

/// Convenience: solve_coefficients wrapped into a TravelingWaveSolution,
/// with the arbitrary phase shift x0 applied.
TravelingWaveSolution make_solution(const PhysicalParameters& params, const SignTriple& signs,
                                    double x0 = 0.0);

/// All real constant solutions of the reduced ODE at the given velocity,
/// i.e. real roots of a u^3 + b u^2 + c u = 0 with multiplicity, sorted
/// ascending.  Zero is always among them.
std::vector<double> trivial_solutions(const PhysicalParameters& params, double velocity);

/// Pointwise evaluation of the wave at (x, t).
Complex evaluate(const TravelingWaveSolution& sol, double x, double t);

/// Evaluation plus the first two traveling-frame derivatives at xi = x - v t,
/// from the exact tanh/sech derivative formulas.
struct ProfileDerivatives {
  Complex u;
  Complex du;   // du/dxi
  Complex d2u;  // d^2u/dxi^2
};
ProfileDerivatives profile_derivatives(const WaveCoefficients& c, double xi);

/// The five additive terms of the traveling-frame ODE residual at xi.
/// scale() is the largest term magnitude, the natural unit for judging how
/// close to zero the total is.
struct ResidualBreakdown {
  Complex second_derivative;  // u''
  Complex damping;            // r u'
  Complex cubic;              // a u^3
  Complex quadratic;          // b u^2
  Complex linear;             // c u

  Complex total() const { return second_derivative + damping + cubic + quadratic + linear; }
  double scale() const;
};
ResidualBreakdown residual_breakdown(const TravelingWaveSolution& sol, double xi);

/// The ODE residual u'' + r u' + a u^3 + b u^2 + c u at xi, using exact
/// analytic derivatives.  Identically zero (up to roundoff) for any valid
/// branch.
Complex residual_ode(const TravelingWaveSolution& sol, double xi);

/// Residual magnitude divided by the largest additive term, which makes the
/// check scale-free.
double residual_ode_relative(const TravelingWaveSolution& sol, double xi);

/// Max of residual_ode_relative over a uniform xi grid.
double max_relative_residual(const TravelingWaveSolution& sol, double xi_lo, double xi_hi,
                             int n_points);

/// Quotient B1^2 / D1^2 (real, since D1^2 is real and negative) and whether
/// |B1| = |D1| holds to 1e-12.  For every constraint-satisfying branch the
/// quotient is -1: the kink and bell amplitudes are in equilibrium.
struct AmplitudeBalance {
  double quotient;
  bool balanced;
};
AmplitudeBalance amplitude_balance(const WaveCoefficients& coeffs);

}  // namespace cbkdv
