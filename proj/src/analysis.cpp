#include "cbkdv/analysis.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "cbkdv/solution.hpp"

namespace cbkdv {

double velocity(double alpha, double abs_beta, double mu, double s, int eps3) noexcept {
  const double t1 = alpha / (2.0 * abs_beta) * std::sqrt(abs_beta / (6.0 * s));
  const double t2 = mu / (6.0 * s);
  const double bracket = t1 - eps3 * t2;
  return -mu * mu / (6.0 * s) - 2.0 * s * bracket * bracket + alpha * alpha / (4.0 * abs_beta);
}

double velocity(const VelocityQuery& q) {
  return branch_velocity(q.params, q.eps3);
}

VelocityGradient velocity_gradient(double alpha, double abs_beta, double mu, double s,
                                   int eps3) noexcept {
  const double m = abs_beta;
  const double root = std::sqrt(6.0 * m / s);  // sqrt(6|beta|/s)

  VelocityGradient g;
  g.dalpha = (root * eps3 * mu + 6.0 * alpha) / (18.0 * m);
  g.dmu = (s * alpha * root * eps3 - 8.0 * m * mu) / (18.0 * s * m);
  g.dabs_beta = -alpha * (6.0 * alpha + root * eps3 * mu) / (36.0 * m * m);
  g.ds = mu * (-std::sqrt(6.0) * alpha * eps3 + 8.0 * mu * std::sqrt(m / s)) /
         (36.0 * s * s * std::sqrt(m / s));
  return g;
}

VelocityGradient velocity_gradient(const VelocityQuery& q) {
  return velocity_gradient(q.params.alpha, q.params.abs_beta(), q.params.mu, q.params.s, q.eps3);
}

double velocity_limit_alpha_to_zero(double mu, double s) { return -2.0 * mu * mu / (9.0 * s); }

double velocity_limit_mu_to_zero(double alpha, double abs_beta) {
  return alpha * alpha / (6.0 * abs_beta);
}

double velocity_limit_abs_beta_to_infinity(double mu, double s) {
  return -2.0 * mu * mu / (9.0 * s);
}

double velocity_limit_s_to_infinity(double alpha, double abs_beta) {
  return alpha * alpha / (6.0 * abs_beta);
}

namespace {

// Interval-doubling from lo until f changes sign (cap lo * 2^60), then
// bisection down to |f| <= 1e-12.  Returns nullopt when no sign change
// appears within the cap.
std::optional<double> bisect_zero(const std::function<double(double)>& f, double lo) {
  const double f_lo = f(lo);
  if (f_lo == 0.0) return lo;

  double hi = lo;
  double f_hi = f_lo;
  for (int i = 0; i < 60; ++i) {
    hi *= 2.0;
    f_hi = f(hi);
    if (f_lo * f_hi <= 0.0) break;
  }
  if (f_lo * f_hi > 0.0) return std::nullopt;

  double a = lo, b = hi, fa = f_lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (std::abs(fm) <= 1e-12) return mid;
    if (fa * fm <= 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

CriticalPoints critical_points(const PhysicalParameters& params, int eps3) {
  if (eps3 != 1 && eps3 != -1) throw InvalidParameters("eps3 must be +1 or -1");
  const double m = params.abs_beta();
  const double s = params.s;
  const double mu = params.mu;
  const double alpha = params.alpha;

  CriticalPoints cp;
  cp.alpha_v = mu * std::sqrt(m / (6.0 * s));
  cp.beta_v = (mu > 0.0) ? -6.0 * alpha * alpha * s / (mu * mu)
                         : std::numeric_limits<double>::quiet_NaN();

  if (mu > 0.0) {
    // v(alpha_v) < 0 on both branches, and v grows like alpha^2 upward.
    cp.alpha_c = bisect_zero([&](double a) { return velocity(a, m, mu, s, eps3); }, cp.alpha_v);

    // v(mu -> 0) = alpha^2/(6|beta|) > 0 and v -> -infinity in mu.
    cp.mu_c = bisect_zero([&](double mq) { return -velocity(alpha, m, mq, s, eps3); },
                          1e-8 * std::max(mu, 1.0));
  }
  return cp;
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Alpha: return "alpha";
    case SweepParameter::Beta: return "beta";
    case SweepParameter::Mu: return "mu";
    case SweepParameter::S: return "s";
  }
  return "?";
}

void SweepSpec::validate() const {
  fixed.validate();
  if (eps3 != 1 && eps3 != -1) throw InvalidParameters("eps3 must be +1 or -1");
  if (count < 2) throw SweepOutsideValidity("sweep needs at least 2 samples");
  if (!(lo < hi)) throw SweepOutsideValidity("sweep range must satisfy lo < hi");
  switch (varying) {
    case SweepParameter::Alpha:
    case SweepParameter::Mu:
      if (lo < 0.0) throw SweepOutsideValidity(to_string(varying) + " sweep needs lo >= 0");
      break;
    case SweepParameter::Beta:
    case SweepParameter::S:
      if (lo <= 0.0) throw SweepOutsideValidity(to_string(varying) + " sweep needs lo > 0");
      break;
  }
}

namespace {

double sweep_velocity(const SweepSpec& spec, double value) {
  const PhysicalParameters& f = spec.fixed;
  switch (spec.varying) {
    case SweepParameter::Alpha: return velocity(value, f.abs_beta(), f.mu, f.s, spec.eps3);
    case SweepParameter::Beta: return velocity(f.alpha, value, f.mu, f.s, spec.eps3);
    case SweepParameter::Mu: return velocity(f.alpha, f.abs_beta(), value, f.s, spec.eps3);
    case SweepParameter::S: return velocity(f.alpha, f.abs_beta(), f.mu, value, spec.eps3);
  }
  return 0.0;
}

VelocityGradient sweep_gradient(const SweepSpec& spec, double value) {
  const PhysicalParameters& f = spec.fixed;
  switch (spec.varying) {
    case SweepParameter::Alpha:
      return velocity_gradient(value, f.abs_beta(), f.mu, f.s, spec.eps3);
    case SweepParameter::Beta:
      return velocity_gradient(f.alpha, value, f.mu, f.s, spec.eps3);
    case SweepParameter::Mu:
      return velocity_gradient(f.alpha, f.abs_beta(), value, f.s, spec.eps3);
    case SweepParameter::S:
      return velocity_gradient(f.alpha, f.abs_beta(), f.mu, value, spec.eps3);
  }
  return {};
}

// True when v is monotone over the sampled values restricted to [lo, hi].
bool monotone_over(const std::vector<SweepSample>& samples, double lo, double hi,
                   bool increasing) {
  const SweepSample* prev = nullptr;
  for (const auto& s : samples) {
    if (s.value < lo || s.value > hi) continue;
    if (prev) {
      if (increasing && s.v < prev->v) return false;
      if (!increasing && s.v > prev->v) return false;
    }
    prev = &s;
  }
  return true;
}

}  // namespace

MonotonicityReport monotonicity_report(const SweepSpec& input) {
  SweepSpec spec = input;
  // A beta sweep is a sweep in |beta|; fold a range given on the negative
  // axis onto magnitudes.
  if (spec.varying == SweepParameter::Beta && input.lo < 0.0 && input.hi < 0.0) {
    spec.lo = -input.hi;
    spec.hi = -input.lo;
  }
  spec.validate();

  MonotonicityReport report;
  report.varying = spec.varying;
  report.eps3 = spec.eps3;

  const double step = (spec.hi - spec.lo) / (spec.count - 1);
  for (int i = 0; i < spec.count; ++i) {
    const double value = spec.lo + i * step;
    SweepSample sample;
    sample.value = value;
    sample.v = sweep_velocity(spec, value);
    sample.gradient = sweep_gradient(spec, value);
    sample.boundary =
        (value == 0.0 &&
         (spec.varying == SweepParameter::Alpha || spec.varying == SweepParameter::Mu));
    report.samples.push_back(sample);
  }
  report.observed_head = report.samples.front().v;
  report.observed_tail = report.samples.back().v;

  const PhysicalParameters& f = spec.fixed;
  if (spec.eps3 == -1) {
    const CriticalPoints cp = critical_points(f, -1);
    switch (spec.varying) {
      case SweepParameter::Alpha:
        report.segments.push_back({"decreasing before alpha_v",
                                   monotone_over(report.samples, spec.lo, cp.alpha_v, false)});
        report.segments.push_back({"increasing after alpha_v",
                                   monotone_over(report.samples, cp.alpha_v, spec.hi, true)});
        break;
      case SweepParameter::Mu:
        report.segments.push_back(
            {"strictly decreasing in mu", monotone_over(report.samples, spec.lo, spec.hi, false)});
        report.analytic_limit = velocity_limit_mu_to_zero(f.alpha, f.abs_beta());
        break;
      case SweepParameter::Beta: {
        // Stationary point of v in |beta|; sweeping |beta| itself, so the
        // fixed beta plays no role here.
        const double mv = (f.mu > 0.0) ? 6.0 * f.alpha * f.alpha * f.s / (f.mu * f.mu)
                                       : std::numeric_limits<double>::infinity();
        report.segments.push_back({"decreasing before |beta_v|",
                                   monotone_over(report.samples, spec.lo, mv, false)});
        report.segments.push_back({"increasing after |beta_v|",
                                   monotone_over(report.samples, mv, spec.hi, true)});
        report.analytic_limit = velocity_limit_abs_beta_to_infinity(f.mu, f.s);
        break;
      }
      case SweepParameter::S:
        report.segments.push_back(
            {"increasing in s", monotone_over(report.samples, spec.lo, spec.hi, true)});
        report.analytic_limit = velocity_limit_s_to_infinity(f.alpha, f.abs_beta());
        break;
    }
  } else {
    // No printed table for eps3 = +1; the only shape the derivative pins
    // down for all valid parameters is growth in alpha.
    if (spec.varying == SweepParameter::Alpha) {
      report.segments.push_back(
          {"increasing in alpha", monotone_over(report.samples, spec.lo, spec.hi, true)});
    }
  }

  report.pass = true;
  for (const auto& seg : report.segments) report.pass = report.pass && seg.pass;
  return report;
}

}  // namespace cbkdv
