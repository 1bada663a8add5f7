#pragma once

#include "hedonic/welfare.hpp"

#include <string>
#include <vector>

namespace hedonic {

// Inclusive grid lo..hi with `points` samples (points >= 1; a single point
// sits at lo). Parsed from "lo:hi:points".
struct GridSpec {
  double lo = 0;
  double hi = 0;
  int points = 1;

  double at(int k) const;
  static GridSpec parse(const std::string& text);
};

// Worker count: HEDONIC_EQ_THREADS caps it, hardware_concurrency is the
// default. Rows are always emitted in grid order whatever the schedule.
int worker_count();

std::vector<SymmetricRow> symmetric_sweep(int n, double alpha, const GridSpec& grid);

// gamma, q_monopoly, q_diff, q_conc, q_polar_high, q_polar_low
std::string fig_outputs_csv(int n, double alpha, const GridSpec& grid);

// gamma, ratio of each outcome's welfare to the planner's
std::string fig_ratios_csv(int n, double alpha, const GridSpec& grid);

// kappa, then one equilibrium-welfare column per symmetric gamma level
std::string fig_ownership_csv(int n, double alpha, const std::vector<double>& gammas,
                              const GridSpec& kappa_grid);

// gamma, planner regime label, welfare cells, symmetric output levels
std::string table_welfare_csv(int n, double alpha, const GridSpec& grid);

}  // namespace hedonic
