#pragma once

#include "hedonic/geometry.hpp"
#include "hedonic/types.hpp"

namespace hedonic {

// Closed-form regime of the surplus-maximizing allocation, decided by where
// the unconstrained output vector gamma sits relative to the unit annulus.
enum class PlannerRegime { Differentiation, Concentration, DominantFirmPolarization };

struct BenchmarkResult {
  PlannerRegime regime = PlannerRegime::Differentiation;
  Vec q;
  double rho = 0;  // norm of the aggregate actually attained
  Allocation allocation;
  double welfare = 0;  // total surplus for the planner, profit for the monopolist
};

// Surplus-maximizing outputs and profile. Boundary parameter values resolve
// to the differentiation regime (q = gamma, |x| = 1).
BenchmarkResult planner_optimum(const MarketInstance& inst, bool mirror = false);

// Profit-maximizing multiproduct monopolist: same profile family, outputs
// halved, aggregate norm clamped at 1/2 instead of 1.
BenchmarkResult monopoly_optimum(const MarketInstance& inst, bool mirror = false);

// Optimal aggregate norm at fixed outputs q: clamp of the target level
// (1 for the planner, 1/2 for the monopolist) into the annulus of q.
enum class RhoKind { Planner, Monopolist };
double conditional_rho(const Vec& q, RhoKind which);

const char* regime_name(PlannerRegime regime);

}  // namespace hedonic
