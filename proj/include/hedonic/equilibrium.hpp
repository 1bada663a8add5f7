#pragma once

#include "hedonic/geometry.hpp"
#include "hedonic/types.hpp"

#include <optional>
#include <vector>

namespace hedonic {

// Firm i's best response to the rivals held fixed: point the column at the
// residual ideal direction beta - sum_{j != i} q_j a_j and price against it.
struct BestResponse {
  double delta = 0;   // norm of the residual ideal direction
  Vec direction;      // unit vector; when delta = 0 any direction is optimal
  double output = 0;  // (alpha delta + gamma_i) / (2 (1 + alpha))
  bool arbitrary_direction = false;
};

BestResponse best_response(const MarketInstance& inst, int i,
                           const CharProfile& profile, const Vec& q);

enum class EquilibriumKind { Differentiation, SignVector };

struct EquilibriumRecord {
  EquilibriumKind kind = EquilibriumKind::Differentiation;
  // SignVector only: firm i sits at sigma_i * beta.
  std::vector<int> sigma;
  double phi = 0;  // signed output shift off gamma / (2 + alpha)

  Allocation allocation;
  Vec markups;  // (1 + alpha) q
  Vec profits;  // (1 + alpha) q^2

  bool boundary = false;  // existence condition met with equality (1e-12 slack)

  // Residuals of the two first-order equilibrium conditions at the record:
  // output_floor_violation is how far some output falls below
  // gamma_i / (2 (1 + alpha)); alignment_residual is the worst mismatch of
  // ((2 + alpha) q_i - gamma_i) a_i against alpha (beta - A q).
  double output_floor_violation = 0;
  double alignment_residual = 0;
};

// Interior-profile equilibrium: q = gamma / (2 + alpha), aggregate exactly
// beta. Exists iff the annulus of q contains beta, i.e.
// inner(gamma) <= 2 + alpha <= outer(gamma). Needs n, m >= 2.
std::optional<EquilibriumRecord> differentiation_equilibrium(const MarketInstance& inst,
                                                             bool mirror = false);

// Equilibrium with every column at +-beta according to sigma. Closed form
// q = gamma / (2 + alpha) - phi * sigma; exists iff every output clears its
// floor, which reduces to a two-sided bound on sigma . gamma.
std::optional<EquilibriumRecord> sign_vector_equilibrium(const MarketInstance& inst,
                                                         const std::vector<int>& sigma);

// All equilibria: the interior record plus every admissible sign vector.
// The all-minus sign vector is skipped (it can never satisfy the output
// floor with gamma > 0). Records are ordered: interior first, then sign
// vectors in binary order with +1 ~ bit 1 from firm 0 in the high bit.
std::vector<EquilibriumRecord> enumerate_equilibria(const MarketInstance& inst,
                                                    bool mirror = false);

struct VerifyOptions {
  int samples_per_firm = 256;
  unsigned long long seed = 0;
  double condition_tol = 1e-8;
  double deviation_tol = 1e-6;
};

struct VerifyReport {
  double output_floor_violation = 0;
  double alignment_residual = 0;
  // Best profit improvement found by any sampled or best-response deviation;
  // at an equilibrium this is nonpositive up to roundoff.
  double worst_deviation_gain = 0;
  bool accepted = false;
};

// Independent check that no firm can profitably deviate. For each firm the
// exact best response is tried along with sampled unit directions (each at
// its own optimal output), so acceptance does not depend on the closed forms
// used by the enumerator.
VerifyReport verify_equilibrium(const MarketInstance& inst, const Allocation& alloc,
                                const VerifyOptions& opts = {});

struct DynamicsOptions {
  int max_rounds = 10000;
  double damping = 1.0;  // 1 = undamped Gauss-Seidel best-response sweep
  double tol = 1e-10;
  VerifyOptions verify;
};

struct DynamicsResult {
  std::vector<Vec> trajectory;  // outputs after each full sweep
  Allocation final_allocation;
  bool converged = false;
  // Filled when the limit passes verify_equilibrium; kind and sigma are
  // recovered from the limiting profile.
  std::optional<EquilibriumRecord> record;
};

DynamicsResult best_response_dynamics(const MarketInstance& inst, const Allocation& start,
                                      const DynamicsOptions& opts = {});

const char* kind_name(EquilibriumKind kind);

}  // namespace hedonic
