#pragma once

#include "hedonic/types.hpp"

namespace hedonic {

// Inverse demand restricted to a fixed profile A:
//   p = intercept - sigma * q  with  sigma = alpha A^T A + I
// where intercept is already net of marginal cost.
struct DemandSystem {
  Vec intercept;  // alpha A^T beta + gamma
  Mat sigma;      // alpha A^T A + I, symmetric positive definite
};

DemandSystem demand_system(const MarketInstance& inst, const CharProfile& profile);

// Per-unit margin of firm i at the allocation:
//   alpha a_i . (beta - sum_{j != i} q_j a_j) - (1 + alpha) q_i + gamma_i
double markup(const MarketInstance& inst, const Allocation& alloc, int i);

// markup_i * q_i
double firm_profit(const MarketInstance& inst, const Allocation& alloc, int i);

// alpha (x . beta - x . x / 2) + q . gamma - q . q / 2  with x = A q
double total_surplus(const MarketInstance& inst, const Allocation& alloc);

// q . (alpha A^T beta + gamma) - q . sigma q; equals the sum of firm profits.
double aggregate_profit(const MarketInstance& inst, const Allocation& alloc);

PriceReport price_report(const MarketInstance& inst, const Allocation& alloc);

}  // namespace hedonic
