#include "cbkdv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cbkdv {

double stable_dt(const PhysicalParameters& params, const GridSpec& grid, double u_scale,
                 double safety_factor) {
  const double dx = grid.dx();
  const double convection = dx * dx * u_scale * (params.alpha + params.abs_beta() * u_scale);
  return safety_factor * dx * dx * dx / (4.0 * params.s + dx * params.mu + convection);
}

BoundaryFn boundary_from(const TravelingWaveSolution& sol) {
  return [sol](double x, double t) { return evaluate(sol, x, t); };
}

std::vector<Complex> rhs(const FieldState& state, const PhysicalParameters& params,
                         const GridSpec& grid, const BoundaryFn& boundary) {
  const int n = grid.num_points;
  if (static_cast<int>(state.values.size()) != n) {
    throw InvalidParameters("field length does not match grid");
  }
  const double dx = grid.dx();
  const double inv_2dx = 1.0 / (2.0 * dx);
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx3 = 1.0 / (2.0 * dx * dx * dx);

  // Extended field with two ghost values per side.
  std::vector<Complex> ext(n + 4);
  ext[0] = boundary(grid.x_left - 2.0 * dx, state.t);
  ext[1] = boundary(grid.x_left - dx, state.t);
  std::copy(state.values.begin(), state.values.end(), ext.begin() + 2);
  ext[n + 2] = boundary(grid.x_right + dx, state.t);
  ext[n + 3] = boundary(grid.x_right + 2.0 * dx, state.t);

  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) {
    const int j = i + 2;
    const Complex u = ext[j];
    const Complex ux = (ext[j + 1] - ext[j - 1]) * inv_2dx;
    const Complex uxx = (ext[j + 1] - 2.0 * u + ext[j - 1]) * inv_dx2;
    const Complex uxxx = (ext[j + 2] - 2.0 * ext[j + 1] + 2.0 * ext[j - 1] - ext[j - 2]) * inv_2dx3;
    out[i] = -params.alpha * u * ux - params.beta * u * u * ux - params.mu * uxx - params.s * uxxx;
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) {
      throw BlowUp("non-finite time derivative at x = " + std::to_string(grid.x(i)) +
                   ", t = " + std::to_string(state.t));
    }
  }
  return out;
}

std::vector<Complex> rhs(const FieldState& state, const PhysicalParameters& params,
                         const GridSpec& grid, const TravelingWaveSolution& boundary) {
  return rhs(state, params, grid, boundary_from(boundary));
}

FieldState step_rk4(const FieldState& state, double dt, const PhysicalParameters& params,
                    const GridSpec& grid, const BoundaryFn& boundary) {
  const int n = grid.num_points;
  const auto stage = [&](const std::vector<Complex>& base, const std::vector<Complex>& k,
                         double factor, double t_stage) {
    FieldState s;
    s.t = t_stage;
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = base[i] + factor * k[i];
    return s;
  };

  const std::vector<Complex> k1 = rhs(state, params, grid, boundary);
  const FieldState s2 = stage(state.values, k1, 0.5 * dt, state.t + 0.5 * dt);
  const std::vector<Complex> k2 = rhs(s2, params, grid, boundary);
  const FieldState s3 = stage(state.values, k2, 0.5 * dt, state.t + 0.5 * dt);
  const std::vector<Complex> k3 = rhs(s3, params, grid, boundary);
  const FieldState s4 = stage(state.values, k3, dt, state.t + dt);
  const std::vector<Complex> k4 = rhs(s4, params, grid, boundary);

  FieldState next;
  next.t = state.t + dt;
  next.values.resize(n);
  const double w = dt / 6.0;
  for (int i = 0; i < n; ++i) {
    next.values[i] = state.values[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(next.values[i].real()) || !std::isfinite(next.values[i].imag())) {
      throw BlowUp("non-finite field value after step to t = " + std::to_string(next.t));
    }
  }
  return next;
}

ErrorMetrics error_metrics(const FieldState& state, const TravelingWaveSolution& exact,
                           const GridSpec& grid) {
  ErrorMetrics m;
  m.t = state.t;
  double sum_sq = 0.0;
  int count = 0;
  for (int i = 2; i < grid.num_points - 2; ++i) {
    const double err = std::abs(state.values[i] - evaluate(exact, grid.x(i), state.t));
    m.l_inf = std::max(m.l_inf, err);
    sum_sq += err * err;
    ++count;
  }
  m.l2 = count > 0 ? std::sqrt(sum_sq * grid.dx()) : 0.0;
  return m;
}

SimulationRun simulate(const TravelingWaveSolution& sol, const GridSpec& grid,
                       const TimeSpec& time, int record_every) {
  if (!(time.t_end >= 0.0)) throw InvalidParameters("t_end must be nonnegative");
  if (time.t_end > 0.0 && !(time.dt > 0.0)) throw InvalidParameters("dt must be positive");
  if (!(time.safety_factor > 0.0 && time.safety_factor <= 1.0)) {
    throw InvalidParameters("safety_factor must be in (0, 1]");
  }
  if (record_every < 1) throw InvalidParameters("record_every must be >= 1");
  if (sol.params.mu <= 0.0) {
    throw InvalidParameters("dissipative time integration needs mu > 0");
  }

  // The kink must stay essentially saturated at both edges for the whole
  // run, otherwise the Dirichlet ghosts truncate it.
  const double kink_tol = 1.0 - 1e-6;
  for (const double t : {0.0, time.t_end}) {
    for (const double edge : {grid.x_left, grid.x_right}) {
      const double theta = sol.coeffs.C1 * (edge - sol.coeffs.v * t + sol.coeffs.x0);
      if (std::abs(std::tanh(theta)) <= kink_tol) {
        throw DomainTooNarrow("kink is not contained: |tanh| = " +
                              std::to_string(std::abs(std::tanh(theta))) + " at x = " +
                              std::to_string(edge) + ", t = " + std::to_string(t));
      }
    }
  }

  const BoundaryFn boundary = boundary_from(sol);

  FieldState state;
  state.t = 0.0;
  state.values.resize(grid.num_points);
  for (int i = 0; i < grid.num_points; ++i) state.values[i] = evaluate(sol, grid.x(i), 0.0);

  SimulationRun run{grid, time, {}, {}};
  const auto record = [&](const FieldState& s) {
    run.states.push_back(s);
    run.metrics.push_back(error_metrics(s, sol, grid));
  };
  record(state);

  if (time.t_end == 0.0) return run;

  // Hit t_end exactly with a whole number of steps no larger than dt.
  const long long n_steps = std::max<long long>(1, std::llround(std::ceil(time.t_end / time.dt)));
  const double dt = time.t_end / static_cast<double>(n_steps);

  double u_scale = 0.0;
  for (const Complex& u : state.values) u_scale = std::max(u_scale, std::abs(u));
  const double bound = stable_dt(sol.params, grid, u_scale, time.safety_factor);
  if (dt > bound * (1.0 + 1e-12)) {
    throw InvalidParameters("dt = " + std::to_string(dt) + " exceeds the stability guard " +
                            std::to_string(bound));
  }

  for (long long step = 1; step <= n_steps; ++step) {
    state = step_rk4(state, dt, sol.params, grid, boundary);
    // Rounding drift in t accumulates over many steps; keep t exact.
    state.t = time.t_end * static_cast<double>(step) / static_cast<double>(n_steps);
    if (step % record_every == 0 || step == n_steps) record(state);
  }
  return run;
}

}  // namespace cbkdv
