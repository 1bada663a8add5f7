#include "hedonic/benchmarks.hpp"

#include "hedonic/model.hpp"

#include <cmath>

namespace hedonic {

namespace {
constexpr double kSlack = 1e-12;
}

double conditional_rho(const Vec& q, RhoKind which) {
  auto d = donut_radii(q);
  double target = which == RhoKind::Planner ? 1.0 : 0.5;
  return std::min(std::max(target, d.inner), d.outer);
}

BenchmarkResult planner_optimum(const MarketInstance& inst, bool mirror) {
  const int n = inst.n;
  const double a = inst.alpha;
  auto d = donut_radii(inst.gamma);

  BenchmarkResult out;
  if (d.inner <= 1 + kSlack && d.outer >= 1 - kSlack) {
    // gamma itself can reach the ideal aggregate.
    out.regime = PlannerRegime::Differentiation;
    out.q = inst.gamma;
  } else if (d.outer < 1) {
    // Everyone expands by the same amount and piles onto beta.
    out.regime = PlannerRegime::Concentration;
    double bump = a * (1 - d.outer) / (1 + n * a);
    out.q = inst.gamma.array() + bump;
  } else {
    // Values are too lopsided for the aggregate to shrink to the ideal:
    // the top firm gives up share to everyone else and takes +beta alone.
    out.regime = PlannerRegime::DominantFirmPolarization;
    int top = 0;
    for (int i = 1; i < n; ++i)
      if (inst.gamma[i] > inst.gamma[top]) top = i;
    double shift = a * (d.inner - 1) / (1 + n * a);
    out.q = inst.gamma.array() + shift;
    out.q[top] = inst.gamma[top] - shift;
  }

  out.rho = conditional_rho(out.q, RhoKind::Planner);
  out.allocation = Allocation::make(construct_profile(out.q, out.rho * inst.beta, mirror), out.q);
  out.welfare = total_surplus(inst, out.allocation);
  return out;
}

BenchmarkResult monopoly_optimum(const MarketInstance& inst, bool mirror) {
  // Same profile family as the planner with outputs halved; the aggregate
  // clamp moves from 1 to 1/2, which is exactly the planner clamp halved.
  BenchmarkResult out = planner_optimum(inst, mirror);
  out.q *= 0.5;
  out.rho = conditional_rho(out.q, RhoKind::Monopolist);
  out.allocation = Allocation::make(construct_profile(out.q, out.rho * inst.beta, mirror), out.q);
  out.welfare = aggregate_profit(inst, out.allocation);
  return out;
}

const char* regime_name(PlannerRegime regime) {
  switch (regime) {
    case PlannerRegime::Concentration: return "concentration";
    case PlannerRegime::DominantFirmPolarization: return "dominant-firm-polarization";
    default: return "differentiation";
  }
}

}  // namespace hedonic
