#include "hedonic/numeric.hpp"

#include <cmath>

namespace hedonic {

double spectral_radius_abs(const Mat& w, int max_iter, double tol) {
  const auto n = w.rows();
  if (n == 0) return 0;
  Mat a = w.cwiseAbs();
  if (a.maxCoeff() == 0) return 0;
  Vec v = Vec::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0;
  for (int it = 0; it < max_iter; ++it) {
    Vec next = a * v;
    double norm = next.norm();
    if (norm == 0) return 0;
    next /= norm;
    double estimate = next.dot(a * next);
    // |A| is nonnegative, so Perron-Frobenius makes the dominant eigenpair
    // nonnegative and the Rayleigh quotient monotone enough to gate on.
    if (std::abs(estimate - lambda) <= tol * std::max(1.0, std::abs(estimate))) {
      return estimate;
    }
    lambda = estimate;
    v = next;
  }
  return lambda;
}

NormPair abs_norms(const Vec& q) {
  NormPair out;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    double a = std::abs(q[i]);
    out.one += a;
    if (a > out.inf) out.inf = a;
  }
  return out;
}

}  // namespace hedonic
