#pragma once

#include <functional>
#include <vector>

#include "cbkdv/solution.hpp"

namespace cbkdv {

/// Uniform spatial grid on [x_left, x_right].
struct GridSpec {
  double x_left;
  double x_right;
  int num_points;

  GridSpec(double left, double right, int n) : x_left(left), x_right(right), num_points(n) {
    if (!(x_left < x_right)) throw InvalidParameters("grid needs x_left < x_right");
    if (num_points < 16) throw InvalidParameters("grid needs at least 16 points");
  }

  double dx() const noexcept { return (x_right - x_left) / (num_points - 1); }
  double x(int i) const noexcept { return x_left + i * dx(); }
};

/// Explicit time stepping configuration.  The dispersive term forces the
/// dt = O(dx^3) restriction; stable_dt() evaluates the guard
///   dt <= safety * dx^3 / (4 s + dx mu + dx^2 (alpha + |beta| u) u)
/// with u a bound on |u| over the initial data.
struct TimeSpec {
  double t_end;
  double dt;
  double safety_factor = 0.9;
};

double stable_dt(const PhysicalParameters& params, const GridSpec& grid, double u_scale,
                 double safety_factor);

/// The complex field at one instant.
struct FieldState {
  double t = 0.0;
  std::vector<Complex> values;
};

struct ErrorMetrics {
  double l_inf = 0.0;
  double l2 = 0.0;
  double t = 0.0;
};

/// Supplies ghost values outside the grid (two per side).
using BoundaryFn = std::function<Complex(double x, double t)>;

BoundaryFn boundary_from(const TravelingWaveSolution& sol);

/// Semi-discrete right side u_t = -alpha u u_x - beta u^2 u_x - mu u_xx - s u_xxx
/// with second-order central differences; the third derivative uses the
/// five-point-wide antisymmetric stencil.  Throws BlowUp on non-finite
/// output.
std::vector<Complex> rhs(const FieldState& state, const PhysicalParameters& params,
                         const GridSpec& grid, const BoundaryFn& boundary);
std::vector<Complex> rhs(const FieldState& state, const PhysicalParameters& params,
                         const GridSpec& grid, const TravelingWaveSolution& boundary);

/// One classical Runge-Kutta step; ghost values are re-evaluated at each
/// stage time.
FieldState step_rk4(const FieldState& state, double dt, const PhysicalParameters& params,
                    const GridSpec& grid, const BoundaryFn& boundary);

/// Error of a state against the analytic solution at the same time, over
/// interior points only (the two ghost-adjacent points per side are forced
/// by the boundary and carry no information).
ErrorMetrics error_metrics(const FieldState& state, const TravelingWaveSolution& exact,
                           const GridSpec& grid);

struct SimulationRun {
  GridSpec grid;
  TimeSpec time;
  std::vector<FieldState> states;
  std::vector<ErrorMetrics> metrics;
};

/// Integrates from the analytic profile at t = 0, recording every
/// record_every-th step (plus the initial and final states).  Requires the
/// kink to be fully contained: |tanh(C1 (x_edge - v t + x0))| > 1 - 1e-6 for
/// both edges through t_end, else DomainTooNarrow.  Dissipative runs need
/// mu > 0.
SimulationRun simulate(const TravelingWaveSolution& sol, const GridSpec& grid,
                       const TimeSpec& time, int record_every);

}  // namespace cbkdv
