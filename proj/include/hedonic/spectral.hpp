#pragma once

#include "hedonic/eig.hpp"
#include "hedonic/types.hpp"

namespace hedonic {

// Reduced quadratic market: surplus psi . q - q . sigma q / 2 with sigma
// symmetric positive definite and a constant diagonal. The fixed-profile
// market is the special case sigma = alpha A^T A + I, psi = alpha A^T beta
// + gamma.
struct SpectralInstance {
  Vec psi;    // strictly positive
  Mat sigma;  // SPD, constant diagonal

  void validate(double tol = 1e-10) const;
  double lambda_bar() const;  // the shared diagonal entry
};

struct SpectralOutputs {
  Vec q_planner;      // sigma^-1 psi
  Vec q_monopoly;     // half of it
  Vec q_equilibrium;  // (sigma + lambda_bar I)^-1 psi
};

SpectralOutputs spectral_outputs(const SpectralInstance& inst);

double spectral_surplus(const SpectralInstance& inst, const Vec& q);

struct SpectralWelfares {
  double planner = 0;
  double monopoly = 0;     // always 3/4 of planner
  double equilibrium = 0;
};

SpectralWelfares spectral_welfares(const SpectralInstance& inst);

enum class Ranking { OligopolyBetter, MonopolyBetter, Tie };

// Eigen-expansion of the welfare gap between the fixed-profile equilibrium
// and the monopolist:
//   omega_eq - omega_mono = (1/8) sum_i w_i (psi . u_i)^2,
//   w_i = (l_i + 3 lbar)(l_i - lbar) / (l_i (l_i + lbar)^2).
// Eigenvalues above lambda_bar ("major" directions) contribute positively.
struct SpectralReport {
  Vec eigenvalues;  // descending
  Mat eigenvectors;
  int major_count = 0;  // how many eigenvalues exceed lambda_bar
  Vec weights;
  Vec projections_sq;  // (psi . u_i)^2
  SpectralOutputs outputs;
  SpectralWelfares welfares;
  Ranking verdict = Ranking::Tie;
  double identity_gap = 0;  // |direct welfare gap - weighted sum|
};

SpectralReport ranking_condition(const SpectralInstance& inst, double tie_tol = 1e-12);

// The scalar form of the same test for the concentrated market
// sigma = alpha (J - I) + (1 + alpha) I, psi = alpha + gamma: one major
// direction against the variance of gamma.
struct ConcentrationReport {
  double major_side = 0;     // (n-1)(4+(n+3)a)(a + outer/n)^2 / ((1+na)(2+(n+1)a)^2)
  double variance_side = 0;  // (4+3a) Var[gamma] / (2+a)^2
  Ranking verdict = Ranking::Tie;
  // Parameter-free sufficient check and the degenerate-variance shortcut.
  bool advisory_polynomial = false;
  bool advisory_zero_variance = false;
};

ConcentrationReport concentration_ranking(int n, double alpha, const Vec& gamma,
                                          double tie_tol = 1e-12);

// Embeds a concentrated market into a SpectralInstance.
SpectralInstance concentration_embedding(int n, double alpha, const Vec& gamma);

const char* ranking_name(Ranking r);

}  // namespace hedonic
