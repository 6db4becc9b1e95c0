#include "cbkdv/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace cbkdv {

namespace {

// Full double precision in scientific notation; round-trips exactly and
// keeps output byte-stable.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", x);
  return buf;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

}  // namespace

void write_profile_csv(std::ostream& os, const TravelingWaveSolution& sol, const GridSpec& grid,
                       const std::vector<double>& times) {
  os << "t,x,re_u,im_u\n";
  for (const double t : times) {
    for (int i = 0; i < grid.num_points; ++i) {
      const Complex u = evaluate(sol, grid.x(i), t);
      os << fmt(t) << ',' << fmt(grid.x(i)) << ',' << fmt(u.real()) << ',' << fmt(u.imag())
         << '\n';
    }
  }
  if (!os) throw IoError("profile write failed");
}

void write_profile_csv(const std::string& path, const TravelingWaveSolution& sol,
                       const GridSpec& grid, const std::vector<double>& times) {
  auto os = open_or_throw(path);
  write_profile_csv(os, sol, grid, times);
}

void write_trajectory_csv(std::ostream& os, const SimulationRun& run,
                          const TravelingWaveSolution& exact) {
  os << "t,x,re_u,im_u,re_u_exact,im_u_exact\n";
  for (const FieldState& state : run.states) {
    for (int i = 0; i < run.grid.num_points; ++i) {
      const Complex u = state.values[i];
      const Complex ue = evaluate(exact, run.grid.x(i), state.t);
      os << fmt(state.t) << ',' << fmt(run.grid.x(i)) << ',' << fmt(u.real()) << ','
         << fmt(u.imag()) << ',' << fmt(ue.real()) << ',' << fmt(ue.imag()) << '\n';
    }
  }
  if (!os) throw IoError("trajectory write failed");
}

void write_trajectory_csv(const std::string& path, const SimulationRun& run,
                          const TravelingWaveSolution& exact) {
  auto os = open_or_throw(path);
  write_trajectory_csv(os, run, exact);
}

void write_metrics_csv(std::ostream& os, const SimulationRun& run) {
  os << "t,l_inf,l2\n";
  for (const ErrorMetrics& m : run.metrics) {
    os << fmt(m.t) << ',' << fmt(m.l_inf) << ',' << fmt(m.l2) << '\n';
  }
  if (!os) throw IoError("metrics write failed");
}

void write_metrics_csv(const std::string& path, const SimulationRun& run) {
  auto os = open_or_throw(path);
  write_metrics_csv(os, run);
}

}  // namespace cbkdv
