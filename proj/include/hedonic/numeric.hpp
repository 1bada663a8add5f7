#pragma once

#include "hedonic/types.hpp"

namespace hedonic {

// Largest eigenvalue magnitude of |W| (entrywise absolute value), by power
// iteration. For the symmetric couplings used here this dominates rho(W),
// so it is a safe gate for Neumann convergence.
double spectral_radius_abs(const Mat& w, int max_iter = 200, double tol = 1e-12);

inline int sgn(double v) { return (v > 0) - (v < 0); }

// max_i |q_i| and sum_i |q_i| in one pass; q is expected nonnegative.
struct NormPair {
  double inf = 0;
  double one = 0;
};
NormPair abs_norms(const Vec& q);

}  // namespace hedonic
