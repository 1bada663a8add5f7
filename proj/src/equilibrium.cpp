#include "hedonic/equilibrium.hpp"

#include "hedonic/model.hpp"
#include "hedonic/numeric.hpp"

#include <cmath>
#include <random>

namespace hedonic {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Deterministic unit companion to v, orthogonal to it; the same pivot rule
// the profile constructor uses.
Vec companion_direction(const Vec& v) {
  const int m = static_cast<int>(v.size());
  Vec e2;
  if (m == 2) {
    e2 = Vec(2);
    e2[0] = -v[1];
    e2[1] = v[0];
    return e2;
  }
  int pivot = 0;
  for (int j = 1; j < m; ++j)
    if (std::abs(v[j]) < std::abs(v[pivot])) pivot = j;
  e2 = Vec::Zero(m);
  e2[pivot] = 1;
  e2 -= v[pivot] * v;
  e2.normalize();
  return e2;
}

void fill_condition_residuals(const MarketInstance& inst, const Allocation& alloc,
                              double& floor_violation, double& alignment) {
  floor_violation = 0;
  alignment = 0;
  const Vec gap = inst.beta - alloc.aggregate;
  for (int i = 0; i < inst.n; ++i) {
    floor_violation = std::max(
        floor_violation, inst.gamma[i] - 2 * (1 + inst.alpha) * alloc.output[i]);
    Vec lhs = ((2 + inst.alpha) * alloc.output[i] - inst.gamma[i]) *
              alloc.profile.columns.col(i);
    alignment = std::max(alignment, (lhs - inst.alpha * gap).norm());
  }
  floor_violation = std::max(floor_violation, 0.0);
}

EquilibriumRecord finish_record(const MarketInstance& inst, EquilibriumRecord r) {
  r.markups = (1 + inst.alpha) * r.allocation.output;
  r.profits = (1 + inst.alpha) * r.allocation.output.cwiseProduct(r.allocation.output);
  fill_condition_residuals(inst, r.allocation, r.output_floor_violation,
                           r.alignment_residual);
  return r;
}

}  // namespace

BestResponse best_response(const MarketInstance& inst, int i, const CharProfile& profile,
                           const Vec& q) {
  BestResponse br;
  Vec residual = inst.beta - (profile.columns * q - q[i] * profile.columns.col(i));
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

std::optional<EquilibriumRecord> differentiation_equilibrium(const MarketInstance& inst,
                                                             bool mirror) {
  if (inst.n < 2 || inst.m < 2) return std::nullopt;
  auto d = donut_radii(inst.gamma);
  const double level = 2 + inst.alpha;
  const double slack = kSlack * std::max(1.0, d.outer);
  if (d.inner > level + slack || d.outer < level - slack) return std::nullopt;

  EquilibriumRecord r;
  r.kind = EquilibriumKind::Differentiation;
  Vec q = inst.gamma / level;
  CharProfile p = construct_profile(q, inst.beta, mirror);
  r.allocation = Allocation::make(std::move(p), std::move(q));
  r.boundary = std::abs(d.inner - level) <= slack || std::abs(d.outer - level) <= slack;
  return finish_record(inst, std::move(r));
}

std::optional<EquilibriumRecord> sign_vector_equilibrium(const MarketInstance& inst,
                                                         const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != inst.n)
    throw validation_error("sign vector length must equal n");
  bool any_plus = false;
  for (int s : sigma) {
    if (s != 1 && s != -1) throw validation_error("sign entries must be +-1");
    if (s == 1) any_plus = true;
  }
  if (!any_plus) return std::nullopt;

  const int n = inst.n;
  const double a = inst.alpha;
  const double level = 2 + a;
  const double big_d = 2 + (n + 1) * a;

  double sg = 0;
  for (int i = 0; i < n; ++i) sg += sigma[i] * inst.gamma[i];
  const double phi = a * (sg - level) / (level * big_d);

  Vec q(n);
  double margin = 0;  // most binding output-floor slack, negative = violated
  bool first = true;
  for (int i = 0; i < n; ++i) {
    q[i] = inst.gamma[i] / level - phi * sigma[i];
    double m_i = 2 * (1 + a) * q[i] - inst.gamma[i];
    if (first || m_i < margin) margin = m_i;
    first = false;
  }
  const double slack = kSlack * std::max(1.0, inst.gamma.maxCoeff());
  if (margin < -slack) return std::nullopt;

  EquilibriumRecord r;
  r.kind = EquilibriumKind::SignVector;
  r.sigma = sigma;
  r.phi = phi;
  r.boundary = std::abs(margin) <= slack;

  CharProfile p;
  p.columns = Mat(inst.m, n);
  for (int i = 0; i < n; ++i) p.columns.col(i) = sigma[i] * inst.beta;
  r.allocation = Allocation::make(std::move(p), std::move(q));
  return finish_record(inst, std::move(r));
}

std::vector<EquilibriumRecord> enumerate_equilibria(const MarketInstance& inst, bool mirror) {
  if (inst.n > 16) throw validation_error("sign-vector enumeration is capped at n = 16");
  std::vector<EquilibriumRecord> out;
  if (auto d = differentiation_equilibrium(inst, mirror)) out.push_back(std::move(*d));

  const unsigned total = 1u << inst.n;
  std::vector<int> sigma(inst.n);
  for (unsigned mask = 1; mask < total; ++mask) {
    for (int i = 0; i < inst.n; ++i)
      sigma[i] = (mask >> (inst.n - 1 - i)) & 1u ? 1 : -1;
    if (auto r = sign_vector_equilibrium(inst, sigma)) out.push_back(std::move(*r));
  }
  return out;
}

VerifyReport verify_equilibrium(const MarketInstance& inst, const Allocation& alloc,
                                const VerifyOptions& opts) {
  VerifyReport report;
  fill_condition_residuals(inst, alloc, report.output_floor_violation,
                           report.alignment_residual);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int m = inst.m;
  const double a = inst.alpha;
  Vec plane2 = m >= 2 ? companion_direction(inst.beta) : Vec();

  double worst = 0;
  for (int i = 0; i < inst.n; ++i) {
    const Vec residual =
        inst.beta - (alloc.aggregate - alloc.output[i] * alloc.profile.columns.col(i));
    const double base_profit = firm_profit(inst, alloc, i);

    auto try_direction = [&](const Vec& dir) {
      // Given the direction, the deviating output is the concave optimum.
      double lift = a * dir.dot(residual) + inst.gamma[i];
      double dev_q = std::max(0.0, lift / (2 * (1 + a)));
      double dev_profit = dev_q * lift - (1 + a) * dev_q * dev_q;
      worst = std::max(worst, dev_profit - base_profit);
    };

    // Exact best response first; sampling is insurance on top.
    double delta = residual.norm();
    if (delta > 1e-14) {
      try_direction(Vec(residual / delta));
    } else {
      try_direction(alloc.profile.columns.col(i));
    }

    if (m == 1) {
      Vec d(1);
      d[0] = 1;
      try_direction(d);
      d[0] = -1;
      try_direction(d);
      continue;
    }

    const int grid = opts.samples_per_firm / 2;
    for (int k = 0; k < grid; ++k) {
      double t = kTwoPi * k / grid;
      try_direction(Vec(std::cos(t) * inst.beta + std::sin(t) * plane2));
    }
    for (int k = 0; k < opts.samples_per_firm - grid; ++k) {
      Vec d(m);
      for (int j = 0; j < m; ++j) d[j] = gauss(rng);
      double norm = d.norm();
      if (norm < 1e-12) continue;
      try_direction(Vec(d / norm));
    }
  }
  report.worst_deviation_gain = worst;
  report.accepted = report.output_floor_violation <= opts.condition_tol &&
                    report.alignment_residual <= opts.condition_tol &&
                    report.worst_deviation_gain <= opts.deviation_tol;
  return report;
}

DynamicsResult best_response_dynamics(const MarketInstance& inst, const Allocation& start,
                                      const DynamicsOptions& opts) {
  DynamicsResult result;
  CharProfile profile = start.profile;
  Vec q = start.output;

  for (int round = 0; round < opts.max_rounds; ++round) {
    double move = 0;
    for (int i = 0; i < inst.n; ++i) {
      auto br = best_response(inst, i, profile, q);
      double new_q = (1 - opts.damping) * q[i] + opts.damping * br.output;
      move = std::max(move, std::abs(new_q - q[i]));
      if (!br.arbitrary_direction) {
        move = std::max(move, (br.direction - profile.columns.col(i)).cwiseAbs().maxCoeff());
        profile.columns.col(i) = br.direction;
      }
      q[i] = new_q;
    }
    result.trajectory.push_back(q);
    if (move <= opts.tol) {
      result.converged = true;
      break;
    }
  }

  result.final_allocation = Allocation::make(profile, q);
  if (!result.converged) return result;

  auto check = verify_equilibrium(inst, result.final_allocation, opts.verify);
  if (!check.accepted) return result;

  EquilibriumRecord r;
  r.allocation = result.final_allocation;

  bool on_axis = true;
  for (int i = 0; i < inst.n && on_axis; ++i)
    on_axis = std::abs(std::abs(profile.columns.col(i).dot(inst.beta)) - 1) <= 1e-8;
  if (on_axis) {
    r.kind = EquilibriumKind::SignVector;
    r.sigma.resize(inst.n);
    double phi_sum = 0;
    for (int i = 0; i < inst.n; ++i) {
      r.sigma[i] = profile.columns.col(i).dot(inst.beta) >= 0 ? 1 : -1;
      phi_sum += r.sigma[i] * (inst.gamma[i] / (2 + inst.alpha) - q[i]);
    }
    r.phi = phi_sum / inst.n;
  } else {
    r.kind = EquilibriumKind::Differentiation;
  }
  result.record = finish_record(inst, std::move(r));
  return result;
}

const char* kind_name(EquilibriumKind kind) {
  return kind == EquilibriumKind::SignVector ? "sign-vector" : "differentiation";
}

}  // namespace hedonic
