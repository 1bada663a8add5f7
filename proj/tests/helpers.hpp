#pragma once

#include "hedonic/benchmarks.hpp"
#include "hedonic/geometry.hpp"
#include "hedonic/model.hpp"
#include "hedonic/types.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace testutil {

using hedonic::Mat;
using hedonic::MarketInstance;
using hedonic::Vec;

inline std::mt19937_64 rng_for(unsigned long long seed) { return std::mt19937_64(seed); }

inline Vec random_unit(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(m);
  double norm = 0;
  do {
    for (int i = 0; i < m; ++i) v[i] = gauss(rng);
    norm = v.norm();
  } while (norm < 1e-6);
  return v / norm;
}

inline MarketInstance make_market(int n, int m, double alpha, Vec beta, Vec gamma) {
  MarketInstance inst;
  inst.n = n;
  inst.m = m;
  inst.alpha = alpha;
  inst.beta = std::move(beta);
  inst.gamma = std::move(gamma);
  return inst;
}

// Two firms, two characteristics, alpha 1, beta on the second axis, values
// (2, sqrt 3). Small enough to do everything by hand, irrational enough to
// catch transposed formulas.
inline MarketInstance example_market() {
  Vec beta(2);
  beta << 0, 1;
  Vec gamma(2);
  gamma << 2, std::sqrt(3.0);
  return make_market(2, 2, 1.0, beta, gamma);
}

inline MarketInstance random_instance(std::mt19937_64& rng, int n_lo = 2, int n_hi = 6,
                                      int m_lo = 2, int m_hi = 4) {
  std::uniform_int_distribution<int> pick_n(n_lo, n_hi), pick_m(m_lo, m_hi);
  std::uniform_real_distribution<double> pick_alpha(0.2, 3.0), pick_gamma(0.05, 4.0);
  int n = pick_n(rng), m = pick_m(rng);
  Vec gamma(n);
  for (int i = 0; i < n; ++i) gamma[i] = pick_gamma(rng);
  return make_market(n, m, pick_alpha(rng), random_unit(rng, m), gamma);
}

// Lopsided enough that the closed forms stay off their existence boundaries:
// inner radius <= 1 and outer radius >= 2 + alpha.
inline MarketInstance overlap_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(2, 6), pick_m(2, 4);
  std::uniform_real_distribution<double> pick_alpha(0.2, 2.0), jitter(0.0, 1.0);
  for (;;) {
    int n = pick_n(rng), m = pick_m(rng);
    double alpha = pick_alpha(rng);
    double base = (2 + alpha) / n + 0.2 * jitter(rng);
    Vec gamma(n);
    for (int i = 0; i < n; ++i) gamma[i] = base * (0.8 + 0.4 * jitter(rng));
    auto d = hedonic::donut_radii(gamma);
    if (d.inner <= 1.0 && d.outer >= 2 + alpha)
      return make_market(n, m, alpha, random_unit(rng, m), gamma);
  }
}

// Outer radius strictly below 1.
inline MarketInstance concentrated_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(2, 6), pick_m(2, 4);
  std::uniform_real_distribution<double> pick_alpha(0.2, 3.0), jitter(0.0, 1.0);
  int n = pick_n(rng), m = pick_m(rng);
  Vec gamma(n);
  for (int i = 0; i < n; ++i) gamma[i] = (0.05 + 0.9 * jitter(rng)) / n;
  return make_market(n, m, pick_alpha(rng), random_unit(rng, m), gamma);
}

// Hill-climbing search over outputs for the best total surplus, with the
// aggregate norm clamped optimally for each candidate. Independent of the
// closed-form benchmark code paths.
inline double planner_search(const MarketInstance& inst, int iters,
                             unsigned long long seed) {
  auto value = [&](const Vec& q) {
    auto d = hedonic::donut_radii(q);
    double rho = std::min(std::max(1.0, d.inner), d.outer);
    return inst.alpha * (rho - 0.5 * rho * rho) + inst.gamma.dot(q) - 0.5 * q.squaredNorm();
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Vec best_q = inst.gamma;
  double best = value(best_q);
  for (int restart = 0; restart < 4; ++restart) {
    Vec q = inst.gamma;
    if (restart > 0)
      for (int i = 0; i < inst.n; ++i) q[i] = std::max(0.0, inst.gamma[i] * 2 * unif(rng));
    double cur = value(q);
    double step = 0.5;
    for (int it = 0; it < iters; ++it) {
      Vec probe = q;
      for (int i = 0; i < inst.n; ++i)
        probe[i] = std::max(0.0, q[i] + step * gauss(rng));
      double v = value(probe);
      if (v > cur) {
        cur = v;
        q = probe;
      } else {
        step *= 0.995;
        if (step < 1e-8) step = 1e-8;
      }
    }
    if (cur > best) {
      best = cur;
      best_q = q;
    }
  }
  return best;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
