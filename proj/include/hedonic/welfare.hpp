#pragma once

#include "hedonic/equilibrium.hpp"
#include "hedonic/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hedonic {

// Population variance of the standalone values: mean of gamma_i^2 minus the
// squared mean.
double gamma_variance(const Vec& gamma);

// Output-weighted average alignment across firm pairs:
//   mean over i < j of gamma_i gamma_j a_i . a_j
double weighted_cosine(const Vec& gamma, const CharProfile& profile);

// The same average for any profile satisfying A q = c beta with q = d gamma:
//   (c^2 / d^2 - |gamma|^2) / (n (n - 1))
double weighted_cosine_closed_form(double c, double d, const Vec& gamma, int n);

struct WelfareComparison {
  std::string left_label;
  std::string right_label;
  double left_welfare = 0;   // from total_surplus at the realized allocation
  double right_welfare = 0;  // same
  // +1 left better, -1 right better, 0 tie; prediction_made = false when the
  // theory is silent for these parameters.
  bool prediction_made = false;
  int predicted_sign = 0;
  int observed_sign = 0;
  bool agreement = false;
  std::vector<std::string> notes;
};

// Monopoly vs the interior equilibrium, on the overlap region
// inner(gamma) <= 1 and 2 + alpha <= outer(gamma). Monopoly wins exactly
// when |gamma| exceeds (2 + alpha) / sqrt(4 + 3 alpha).
WelfareComparison compare_mono_vs_diff(const MarketInstance& inst);

// Interior equilibrium vs the sigma equilibrium (both must exist). The
// interior one is better when sigma . gamma is above 2 + alpha or below
// n alpha (2 + alpha) / (2 (1 + alpha) (2 + (n + 1) alpha) + n alpha);
// in between the theory makes no claim.
WelfareComparison compare_diff_vs_sigma(const MarketInstance& inst,
                                        const std::vector<int>& sigma);

// Concentrated equilibrium (all-plus sign vector) vs monopoly, on
// outer(gamma) <= 1. The exact decision is a scalar inequality between the
// single major spectral weight and the variance term; the classic
// sufficient conditions (alpha large, n large, variance small) are exposed
// as advisory notes only.
WelfareComparison compare_mono_vs_conc(const MarketInstance& inst);

// One row of the symmetric-market welfare table at gamma_i = gamma for all i.
// Cells are empty when the corresponding outcome does not exist there.
struct SymmetricRow {
  double gamma = 0;
  double omega_planner = 0;
  double omega_monopoly = 0;
  std::optional<double> omega_diff;
  std::optional<double> omega_conc;
  std::optional<double> omega_polar;

  double q_monopoly = 0;
  std::optional<double> q_diff;
  std::optional<double> q_conc;
  std::optional<double> q_polar_high;
  std::optional<double> q_polar_low;
};

// Closed-form row; n >= 2. Polarization cells use the balanced half-split
// sign vector and require n even.
SymmetricRow symmetric_welfare_row(int n, double alpha, double gamma);

}  // namespace hedonic
