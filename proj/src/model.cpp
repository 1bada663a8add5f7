#include "hedonic/model.hpp"

namespace hedonic {

DemandSystem demand_system(const MarketInstance& inst, const CharProfile& profile) {
  DemandSystem d;
  d.intercept = inst.alpha * (profile.columns.transpose() * inst.beta) + inst.gamma;
  d.sigma = inst.alpha * (profile.columns.transpose() * profile.columns) +
            Mat::Identity(inst.n, inst.n);
  return d;
}

double markup(const MarketInstance& inst, const Allocation& alloc, int i) {
  const Vec residual = inst.beta - (alloc.aggregate - alloc.output[i] * alloc.profile.columns.col(i));
  return inst.alpha * alloc.profile.columns.col(i).dot(residual) -
         (1 + inst.alpha) * alloc.output[i] + inst.gamma[i];
}

double firm_profit(const MarketInstance& inst, const Allocation& alloc, int i) {
  return markup(inst, alloc, i) * alloc.output[i];
}

double total_surplus(const MarketInstance& inst, const Allocation& alloc) {
  const Vec& x = alloc.aggregate;
  const Vec& q = alloc.output;
  return inst.alpha * (x.dot(inst.beta) - 0.5 * x.squaredNorm()) + q.dot(inst.gamma) -
         0.5 * q.squaredNorm();
}

double aggregate_profit(const MarketInstance& inst, const Allocation& alloc) {
  auto d = demand_system(inst, alloc.profile);
  return alloc.output.dot(d.intercept) - alloc.output.dot(d.sigma * alloc.output);
}

PriceReport price_report(const MarketInstance& inst, const Allocation& alloc) {
  PriceReport r;
  r.markups = Vec(inst.n);
  r.profits = Vec(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    r.markups[i] = markup(inst, alloc, i);
    r.profits[i] = r.markups[i] * alloc.output[i];
  }
  r.total_surplus = total_surplus(inst, alloc);
  r.aggregate_profit = r.profits.sum();
  return r;
}

}  // namespace hedonic
