#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbkdv/dynamics.hpp"

namespace cbkdv {

/// Wave profile samples, columns t,x,re_u,im_u; t-major, x ascending, full
/// double precision.
void write_profile_csv(std::ostream& os, const TravelingWaveSolution& sol, const GridSpec& grid,
                       const std::vector<double>& times);
void write_profile_csv(const std::string& path, const TravelingWaveSolution& sol,
                       const GridSpec& grid, const std::vector<double>& times);

/// Recorded trajectory with the analytic reference,
/// columns t,x,re_u,im_u,re_u_exact,im_u_exact.
void write_trajectory_csv(std::ostream& os, const SimulationRun& run,
                          const TravelingWaveSolution& exact);
void write_trajectory_csv(const std::string& path, const SimulationRun& run,
                          const TravelingWaveSolution& exact);

/// Error metric history, columns t,l_inf,l2.
void write_metrics_csv(std::ostream& os, const SimulationRun& run);
void write_metrics_csv(const std::string& path, const SimulationRun& run);

}  // namespace cbkdv
