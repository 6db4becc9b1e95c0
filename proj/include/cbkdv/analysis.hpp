#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbkdv/types.hpp"

namespace cbkdv {

struct VelocityQuery {
  PhysicalParameters params;
  int eps3;

  VelocityQuery(PhysicalParameters p, int e3) : params(p), eps3(e3) {
    if (e3 != 1 && e3 != -1) throw InvalidParameters("eps3 must be +1 or -1");
  }
};

/// Wave velocity as a function of the parameters and the eps3 branch.
/// The unvalidated overload also accepts the boundary values alpha = 0 and
/// mu = 0, which the variational tables evaluate as limits.
double velocity(double alpha, double abs_beta, double mu, double s, int eps3) noexcept;
double velocity(const VelocityQuery& q);

struct VelocityGradient {
  double dalpha;
  double dmu;
  double dabs_beta;  // derivative in |beta|
  double ds;
};

/// Closed-form partials of the velocity (real-valued |beta| forms).
VelocityGradient velocity_gradient(double alpha, double abs_beta, double mu, double s,
                                   int eps3) noexcept;
VelocityGradient velocity_gradient(const VelocityQuery& q);

// Analytic boundary/tail values of the velocity.  All four are independent
// of eps3 (the branch distinction dies with the term that the limit kills).
double velocity_limit_alpha_to_zero(double mu, double s);           // -2 mu^2 / (9 s)
double velocity_limit_mu_to_zero(double alpha, double abs_beta);    // alpha^2 / (6 |beta|)
double velocity_limit_abs_beta_to_infinity(double mu, double s);    // -2 mu^2 / (9 s)
double velocity_limit_s_to_infinity(double alpha, double abs_beta); // alpha^2 / (6 |beta|)

/// Stationary points and zero crossings of the velocity for the eps3 = -1
/// branch (the branch with critical points; for eps3 = +1 the alpha- and
/// |beta|-derivatives keep a fixed sign).
///
/// alpha_v: location of the velocity minimum in alpha, mu*sqrt(|beta|/(6s)).
/// beta_v:  location (as the negative beta value) of the minimum in |beta|,
///          -6 alpha^2 s / mu^2, where the minimum value is -mu^2/(4s);
///          NaN when mu = 0 (no stationary point exists).
/// alpha_c / mu_c: zero crossings of v found by interval doubling plus
/// bisection; absent when no sign change exists.
struct CriticalPoints {
  double alpha_v;
  double beta_v;
  std::optional<double> alpha_c;
  std::optional<double> mu_c;
};
CriticalPoints critical_points(const PhysicalParameters& params, int eps3);

enum class SweepParameter { Alpha, Beta, Mu, S };

std::string to_string(SweepParameter p);

/// One-parameter sweep: `varying` takes `count` uniform values in [lo, hi]
/// while the other three stay at `fixed`.  For Beta the range is in |beta|.
/// lo = 0 is allowed for Alpha and Mu (boundary evaluation); Beta and S need
/// lo > 0.
struct SweepSpec {
  SweepParameter varying;
  double lo;
  double hi;
  int count;
  PhysicalParameters fixed;
  int eps3;

  void validate() const;
};

struct SweepSample {
  double value;
  double v;
  VelocityGradient gradient;
  bool boundary;  // evaluated on the closure of the validity region
};

struct SegmentCheck {
  std::string description;
  bool pass;
};

/// Sampled velocity sweep checked against the predicted variational-table
/// pattern (eps3 = -1): decreasing/increasing in alpha around alpha_v,
/// strictly decreasing in mu, decreasing/increasing in |beta| around the
/// stationary point, increasing in s.  For eps3 = +1 no table is asserted;
/// the report carries the samples and observed end values only.
struct MonotonicityReport {
  SweepParameter varying;
  int eps3;
  std::vector<SweepSample> samples;
  std::vector<SegmentCheck> segments;
  double observed_head;
  double observed_tail;
  std::optional<double> analytic_limit;  // tail limit where one exists
  bool pass;
};
MonotonicityReport monotonicity_report(const SweepSpec& spec);

}  // namespace cbkdv
