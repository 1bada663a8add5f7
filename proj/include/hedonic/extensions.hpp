#pragma once

#include "hedonic/equilibrium.hpp"
#include "hedonic/types.hpp"

#include <optional>

namespace hedonic {

// (I - delta W)^-1 z by dense LU. Requires spectral_radius_abs(delta W) < 1;
// delta W = 0 short-circuits to z so the no-coupling case is bit-identical
// to the closed form it nests.
Vec bonacich(const Mat& w, double delta, const Vec& z);

// Partial sums sum_{t=0..terms} (delta W)^t z; used to cross-check bonacich
// against its geometric series.
Vec bonacich_series(const Mat& w, double delta, const Vec& z, int terms);

// Benchmark and equilibrium outputs when idiosyncratic characteristics are
// complements across firms. Profiles are unchanged; only output levels pick
// up the network multiplier.
struct NetworkOutputs {
  Vec q_planner;      // bonacich(W, 1, gamma)
  Vec q_monopoly;     // bonacich(W, 1, gamma / 2)
  Vec q_equilibrium;  // bonacich(W, 1/(2+alpha), gamma/(2+alpha))
  // The planner/monopoly aggregate clamps and the interior-equilibrium
  // annulus condition evaluated at the adjusted outputs.
  bool planner_interior = false;
  bool monopoly_interior = false;
  bool equilibrium_exists = false;
};

NetworkOutputs network_outputs(const MarketInstance& inst);

// Per-firm best response under output couplings: firm i's floor picks up
// sum_j w_ij q_j on top of gamma_i.
BestResponse network_best_response(const MarketInstance& inst, int i,
                                   const CharProfile& profile, const Vec& q);

// Symmetric common-ownership equilibrium at internalization weight kappa in
// [0, 1]: q = gamma / (2 + alpha (1 - kappa)), aggregate beta / (1 + kappa).
// Exists iff the annulus of q contains the shrunk aggregate, i.e.
// inner(gamma) <= (2 + alpha (1 - kappa)) / (1 + kappa) <= outer(gamma).
struct OwnershipEquilibrium {
  double kappa = 0;
  Allocation allocation;
  Vec aggregate_target;  // beta / (1 + kappa)
  double cosine;         // weighted_cosine at the profile
  double welfare_closed_form = 0;
  double welfare_direct = 0;
  bool boundary = false;
};

std::optional<OwnershipEquilibrium> ownership_equilibrium(const MarketInstance& inst,
                                                          double kappa,
                                                          bool mirror = false);

// Best response when firm i weights rival j's profit by k(i, j).
BestResponse ownership_best_response(const MarketInstance& inst, const Mat& k, int i,
                                     const CharProfile& profile, const Vec& q);

// Numerical witness that the first-best allocation (x, y) = (beta, gamma) is
// not an equilibrium under any sampled internalization matrix: the
// stationarity residual stays bounded away from zero. When `k` is given only
// that matrix is tried; otherwise `trials` matrices are sampled (a symmetric
// kappa grid plus random PSD perturbations).
struct InfeasibilityReport {
  double min_residual = 0;
  int trials = 0;
};

InfeasibilityReport first_best_infeasibility_check(const MarketInstance& inst,
                                                   std::optional<Mat> k, int trials,
                                                   unsigned long long seed);

// Sign test for d/d kappa of equilibrium welfare at symmetric kappa:
// welfare rises iff |gamma| > f(alpha, kappa) u / (1 + kappa) with
// u = 2 + alpha (1 - kappa), f = sqrt(kappa u / ((1+kappa)(1+alpha(1-kappa)))).
struct SlopeReport {
  bool condition_holds = false;
  double threshold = 0;  // the |gamma| cutoff above
  double slope = 0;      // central difference of the closed-form welfare
  bool agreement = false;
};

SlopeReport ownership_welfare_slope(const MarketInstance& inst, double kappa,
                                    double step = 1e-5);

// Closed-form equilibrium welfare at symmetric kappa (exists or not, the
// formula is evaluated; existence is the caller's concern).
double ownership_welfare_closed_form(const MarketInstance& inst, double kappa);

}  // namespace hedonic
