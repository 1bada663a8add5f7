#include "hedonic/eig.hpp"

#include "hedonic/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace hedonic {

EigenDecomposition jacobi_eigen(const Mat& symmetric, int max_sweeps) {
  const int n = static_cast<int>(symmetric.rows());
  Mat a = 0.5 * (symmetric + symmetric.transpose());
  Mat v = Mat::Identity(n, n);

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double stop = 1e-12 * scale;

  int sweeps = 0;
  for (; sweeps < max_sweeps; ++sweeps) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= stop * 1e-3) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * apq);
        // Stable tangent of the smaller rotation angle.
        double t = sgn(theta) == 0
                       ? 1.0
                       : sgn(theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1);
        double s = t * c;

        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values = Vec(n);
  out.vectors = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweeps;
  return out;
}

}  // namespace hedonic
