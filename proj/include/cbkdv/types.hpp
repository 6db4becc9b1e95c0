#pragma once

#include <cmath>
#include <string>

#include "cbkdv/errors.hpp"

namespace cbkdv {

/// Coefficients of the PDE  u_t + alpha*u*u_x + beta*u^2*u_x + mu*u_xx + s*u_xxx = 0.
///
/// The admissible region is alpha > 0, beta < 0, s > 0, mu >= 0.  Viscous
/// (dissipative) time integration additionally needs mu > 0; mu = 0 is kept
/// legal here because the velocity analysis evaluates that boundary.
struct PhysicalParameters {
  double alpha;  // quadratic convection
  double beta;   // cubic convection, negative
  double mu;     // viscosity, nonnegative
  double s;      // dispersion, positive

  PhysicalParameters(double alpha_, double beta_, double mu_, double s_)
      : alpha(alpha_), beta(beta_), mu(mu_), s(s_) {
    validate();
  }

  void validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(mu) ||
        !std::isfinite(s)) {
      throw InvalidParameters("parameters must be finite");
    }
    if (alpha <= 0.0) {
      throw InvalidParameters("alpha must be positive, got " + std::to_string(alpha));
    }
    if (beta >= 0.0) {
      throw InvalidParameters("beta must be negative, got " + std::to_string(beta));
    }
    if (s <= 0.0) {
      throw InvalidParameters("s must be positive, got " + std::to_string(s));
    }
    if (mu < 0.0) {
      throw InvalidParameters("mu must be nonnegative, got " + std::to_string(mu));
    }
  }

  double abs_beta() const noexcept { return -beta; }
};

/// Discrete branch selector (eps1, eps2, eps3, eps), each +-1.  A nontrivial
/// wave requires eps1*eps2*eps3 = 1; eps is free and only flips the sign of
/// the imaginary amplitude D1.
struct SignTriple {
  int eps1;
  int eps2;
  int eps3;
  int eps;

  SignTriple(int e1, int e2, int e3, int e = 1) : eps1(e1), eps2(e2), eps3(e3), eps(e) {
    auto check = [](int v, const char* name) {
      if (v != 1 && v != -1) {
        throw InvalidParameters(std::string(name) + " must be +1 or -1");
      }
    };
    check(eps1, "eps1");
    check(eps2, "eps2");
    check(eps3, "eps3");
    check(eps, "eps");
  }

  bool satisfies_constraint() const noexcept { return eps1 * eps2 * eps3 == 1; }

  void require_constraint() const {
    if (!satisfies_constraint()) {
      throw ConstraintViolation("sign triple must satisfy eps1*eps2*eps3 = 1");
    }
  }
};

/// Coefficients of the traveling-frame ODE
///   u'' + r u' + a u^3 + b u^2 + c u = 0,  xi = x - v t,
/// with r = mu/s, a = beta/(3 s), b = alpha/(2 s), c = -v/s.
/// c exists only once a wave velocity v is chosen.
struct ReducedODECoefficients {
  double r;
  double a;
  double b;
  double c;

  ReducedODECoefficients(const PhysicalParameters& p, double velocity)
      : r(p.mu / p.s), a(p.beta / (3.0 * p.s)), b(p.alpha / (2.0 * p.s)), c(-velocity / p.s) {}
};

}  // namespace cbkdv
