#include "hedonic/extensions.hpp"

#include "hedonic/model.hpp"
#include "hedonic/numeric.hpp"
#include "hedonic/welfare.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <random>

namespace hedonic {

namespace {
constexpr double kSlack = 1e-12;
}

Vec bonacich(const Mat& w, double delta, const Vec& z) {
  if (w.rows() != w.cols() || w.rows() != z.size())
    throw validation_error("coupling matrix must be square and match z");
  // Exact passthrough keeps the uncoupled case bit-identical to closed forms.
  if (delta == 0 || w.size() == 0 || w.cwiseAbs().maxCoeff() == 0) return z;
  if (spectral_radius_abs(delta * w) >= 1)
    throw validation_error("coupling too strong: spectral radius of delta W reaches 1");
  Mat system = Mat::Identity(w.rows(), w.rows()) - delta * w;
  return system.partialPivLu().solve(z);
}

Vec bonacich_series(const Mat& w, double delta, const Vec& z, int terms) {
  Vec acc = z;
  Vec power = z;
  for (int t = 1; t <= terms; ++t) {
    power = delta * (w * power);
    acc += power;
  }
  return acc;
}

NetworkOutputs network_outputs(const MarketInstance& inst) {
  if (!inst.network) throw validation_error("instance has no network couplings");
  const Mat& w = *inst.network;
  const double level = 2 + inst.alpha;

  NetworkOutputs out;
  out.q_planner = bonacich(w, 1.0, inst.gamma);
  out.q_monopoly = bonacich(w, 1.0, Vec(inst.gamma / 2));
  out.q_equilibrium = bonacich(w, 1 / level, Vec(inst.gamma / level));

  auto dp = donut_radii(out.q_planner);
  out.planner_interior = dp.inner <= 1 + kSlack && dp.outer >= 1 - kSlack;
  auto dm = donut_radii(out.q_monopoly);
  out.monopoly_interior = dm.inner <= 0.5 + kSlack && dm.outer >= 0.5 - kSlack;
  auto de = donut_radii(out.q_equilibrium);
  out.equilibrium_exists = de.inner <= 1 + kSlack && de.outer >= 1 - kSlack;
  return out;
}

BestResponse network_best_response(const MarketInstance& inst, int i,
                                   const CharProfile& profile, const Vec& q) {
  if (!inst.network) throw validation_error("instance has no network couplings");
  BestResponse br = best_response(inst, i, profile, q);
  double coupled = inst.network->row(i).dot(q);
  br.output = (inst.alpha * br.delta + inst.gamma[i] + coupled) / (2 * (1 + inst.alpha));
  return br;
}

double ownership_welfare_closed_form(const MarketInstance& inst, double kappa) {
  const double a = inst.alpha;
  const double u = 2 + a * (1 - kappa);
  const double g = inst.gamma.squaredNorm();
  return a * (1 + 2 * kappa) / (2 * (1 + kappa) * (1 + kappa)) +
         g * (3 + 2 * a * (1 - kappa)) / (2 * u * u);
}

std::optional<OwnershipEquilibrium> ownership_equilibrium(const MarketInstance& inst,
                                                          double kappa, bool mirror) {
  if (kappa < 0 || kappa > 1)
    throw validation_error("symmetric internalization weight must lie in [0, 1]");
  if (inst.n < 2 || inst.m < 2) return std::nullopt;

  const double u = 2 + inst.alpha * (1 - kappa);
  const double pivot = u / (1 + kappa);
  auto d = donut_radii(inst.gamma);
  const double slack = kSlack * std::max(1.0, d.outer);
  if (d.inner > pivot + slack || d.outer < pivot - slack) return std::nullopt;

  OwnershipEquilibrium eq;
  eq.kappa = kappa;
  eq.aggregate_target = inst.beta / (1 + kappa);
  Vec q = inst.gamma / u;
  CharProfile p = construct_profile(q, eq.aggregate_target, mirror);
  eq.allocation = Allocation::make(std::move(p), std::move(q));
  eq.cosine = weighted_cosine(inst.gamma, eq.allocation.profile);
  eq.welfare_closed_form = ownership_welfare_closed_form(inst, kappa);
  eq.welfare_direct = total_surplus(inst, eq.allocation);
  eq.boundary = std::abs(d.inner - pivot) <= slack || std::abs(d.outer - pivot) <= slack;
  return eq;
}

BestResponse ownership_best_response(const MarketInstance& inst, const Mat& k, int i,
                                     const CharProfile& profile, const Vec& q) {
  if (k.rows() != inst.n || k.cols() != inst.n)
    throw validation_error("internalization matrix must be n x n");
  BestResponse br;
  // Rival outputs are inflated by the internalization weights before the
  // residual ideal direction is formed.
  Vec weighted = Vec::Zero(inst.m);
  for (int j = 0; j < inst.n; ++j) {
    if (j == i) continue;
    weighted += (1 + k(i, j)) * q[j] * profile.columns.col(j);
  }
  Vec residual = inst.beta - weighted;
  br.delta = residual.norm();
  if (br.delta <= 1e-14) {
    br.arbitrary_direction = true;
    br.direction = profile.columns.col(i);
    br.delta = 0;
  } else {
    br.direction = residual / br.delta;
  }
  br.output = (inst.alpha * br.delta + inst.gamma[i]) / (2 * (1 + inst.alpha));
  return br;
}

InfeasibilityReport first_best_infeasibility_check(const MarketInstance& inst,
                                                   std::optional<Mat> k, int trials,
                                                   unsigned long long seed) {
  auto d = donut_radii(inst.gamma);
  if (d.inner > 1 + kSlack || d.outer < 1 - kSlack)
    throw validation_error("first-best aggregate is not reachable for this gamma");

  Allocation first_best =
      Allocation::make(construct_profile(inst.gamma, inst.beta), inst.gamma);
  const Mat& a_cols = first_best.profile.columns;

  auto residual_for = [&](const Mat& weights) {
    double worst_floor = 0;
    for (int i = 0; i < inst.n; ++i) {
      Vec weighted = Vec::Zero(inst.m);
      for (int j = 0; j < inst.n; ++j)
        weighted += (1 + weights(i, j)) * inst.gamma[j] * a_cols.col(j);
      Vec rhs = inst.alpha * (inst.beta - weighted);
      Vec lhs = inst.gamma[i] * a_cols.col(i);  // (2 q_i - gamma_i) a_i at q = gamma
      worst_floor = std::max(worst_floor, (lhs - rhs).norm());
    }
    return worst_floor;
  };

  InfeasibilityReport report;
  report.min_residual = std::numeric_limits<double>::infinity();

  if (k) {
    report.trials = 1;
    report.min_residual = residual_for(*k);
    return report;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int done = 0;
  // Symmetric grid first, then random correlation-style PSD matrices.
  int grid = std::min(trials, 11);
  for (int t = 0; t < grid; ++t) {
    double kv = grid == 1 ? 0.0 : static_cast<double>(t) / (grid - 1);
    Mat w = Mat::Constant(inst.n, inst.n, kv);
    w.diagonal().setOnes();
    report.min_residual = std::min(report.min_residual, residual_for(w));
    ++done;
  }
  while (done < trials) {
    Mat b(inst.n, std::max(2, inst.n));
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) = unif(rng);
    Mat g = b * b.transpose();
    Mat w(inst.n, inst.n);
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.n; ++j)
        w(i, j) = g(i, j) / std::sqrt(g(i, i) * g(j, j));
    report.min_residual = std::min(report.min_residual, residual_for(w));
    ++done;
  }
  report.trials = done;
  return report;
}

SlopeReport ownership_welfare_slope(const MarketInstance& inst, double kappa, double step) {
  if (kappa - step < 0 || kappa + step > 1)
    throw validation_error("kappa must sit at least one step inside [0, 1]");
  for (double kv : {kappa - step, kappa, kappa + step}) {
    const double pivot = (2 + inst.alpha * (1 - kv)) / (1 + kv);
    auto d = donut_radii(inst.gamma);
    if (d.inner > pivot + kSlack || d.outer < pivot - kSlack)
      throw validation_error("equilibrium must exist on both sides of kappa");
  }

  SlopeReport report;
  const double a = inst.alpha;
  const double u = 2 + a * (1 - kappa);
  report.threshold =
      std::sqrt(kappa * u / ((1 + kappa) * (1 + a * (1 - kappa)))) * u / (1 + kappa);
  double gnorm = inst.gamma.norm();
  report.condition_holds = gnorm > report.threshold;
  report.slope = (ownership_welfare_closed_form(inst, kappa + step) -
                  ownership_welfare_closed_form(inst, kappa - step)) /
                 (2 * step);
  bool near_threshold = std::abs(gnorm - report.threshold) <= 1e-8 * std::max(1.0, gnorm);
  report.agreement = near_threshold ? std::abs(report.slope) <= 1e-6
                                    : report.condition_holds == (report.slope > 0);
  return report;
}

}  // namespace hedonic
