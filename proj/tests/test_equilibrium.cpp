#include "hedonic/equilibrium.hpp"

#include "hedonic/model.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace hedonic;

namespace {

// Brute-force search over deviation directions and output levels through the
// markup/profit code path only; no best-response formulas involved.
double searched_best_profit(const MarketInstance& inst, const Allocation& alloc, int i,
                            unsigned long long seed) {
  auto rng = testutil::rng_for(seed);
  double best = -1e300;
  double q_hi = inst.gamma.maxCoeff() + inst.alpha + 1;

  const Vec others = alloc.aggregate - alloc.output[i] * alloc.profile.columns.col(i);
  auto probe_dir = [&](const Vec& dir) {
    Allocation trial = alloc;
    trial.profile.columns.col(i) = dir;
    for (int l = 0; l <= 400; ++l) {
      trial.output[i] = q_hi * l / 400.0;
      trial.aggregate = others + trial.output[i] * dir;
      best = std::max(best, firm_profit(inst, trial, i));
    }
  };

  const int angles = inst.m == 2 ? 720 : 0;
  for (int a = 0; a < angles; ++a) {
    double t = 2 * 3.14159265358979 * a / angles;
    Vec dir(2);
    dir << std::cos(t), std::sin(t);
    probe_dir(dir);
  }
  for (int a = 0; a < 200; ++a) probe_dir(testutil::random_unit(rng, inst.m));
  return best;
}

}  // namespace

TEST_CASE("best response dominates a brute-force search") {
  auto rng = testutil::rng_for(41);
  std::uniform_real_distribution<double> unif(0.1, 1.5);
  for (int trial = 0; trial < 6; ++trial) {
    auto inst = testutil::random_instance(rng, 2, 3, 2, 2);
    CharProfile p;
    p.columns = Mat(inst.m, inst.n);
    Vec q(inst.n);
    for (int i = 0; i < inst.n; ++i) {
      p.columns.col(i) = testutil::random_unit(rng, inst.m);
      q[i] = unif(rng);
    }

    auto br = best_response(inst, 0, p, q);
    Allocation at_br = Allocation::make(p, q);
    at_br.profile.columns.col(0) = br.direction;
    at_br.output[0] = br.output;
    at_br.aggregate = at_br.profile.columns * at_br.output;
    double br_profit = firm_profit(inst, at_br, 0);

    double searched = searched_best_profit(inst, Allocation::make(p, q), 0, 999 + trial);
    CHECK(br_profit >= searched - 1e-6);
    CHECK(searched >= br_profit - 5e-3);  // the grid should come close too
  }
}

TEST_CASE("best response handles a vanishing residual direction") {
  Vec beta(2);
  beta << 0, 1;
  Vec gamma(2);
  gamma << 1, 1;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  CharProfile p;
  p.columns = Mat(2, 2);
  p.columns.col(0) = beta;
  p.columns.col(1) = beta;
  Vec q(2);
  q << 0.5, 1.0;  // firm 1 alone already delivers beta to firm 0's rivals? no:
  // firm 0 sees beta - q_1 a_1 = beta - beta = 0.
  auto br = best_response(inst, 0, p, q);
  CHECK(br.arbitrary_direction);
  CHECK(br.delta == 0);
  CHECK(br.output == doctest::Approx(gamma[0] / 4.0));
}

TEST_CASE("interior equilibrium on the worked example") {
  auto inst = testutil::example_market();
  auto rec = differentiation_equilibrium(inst);
  REQUIRE(rec.has_value());
  CHECK(rec->kind == EquilibriumKind::Differentiation);

  CHECK(rec->allocation.output[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(rec->allocation.output[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(testutil::max_abs_diff(rec->allocation.aggregate, inst.beta) <= 1e-9);

  double cosine =
      rec->allocation.profile.columns.col(0).dot(rec->allocation.profile.columns.col(1));
  CHECK(cosine == doctest::Approx(1.0 / (2 * std::sqrt(3.0))).epsilon(1e-9));

  CHECK(rec->markups[0] == doctest::Approx(2 * rec->allocation.output[0]).epsilon(1e-12));
  CHECK(rec->output_floor_violation <= 1e-12);
  CHECK(rec->alignment_residual <= 1e-9);
  CHECK_FALSE(rec->boundary);
}

TEST_CASE("interior equilibrium needs the aggregate inside the annulus") {
  Vec beta(2);
  beta << 1, 0;
  Vec gamma(2);
  gamma << 0.4, 0.4;  // outer radius 0.8 < 2 + alpha
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  CHECK_FALSE(differentiation_equilibrium(inst).has_value());

  Vec lop(2);
  lop << 9, 1;  // inner radius 8 > 2 + alpha
  inst.gamma = lop;
  CHECK_FALSE(differentiation_equilibrium(inst).has_value());
}

TEST_CASE("sign-vector records on the worked example") {
  auto inst = testutil::example_market();

  auto conc = sign_vector_equilibrium(inst, {1, 1});
  REQUIRE(conc.has_value());
  const double s3 = std::sqrt(3.0);
  CHECK(conc->phi == doctest::Approx((s3 - 1) / 15).epsilon(1e-12));
  CHECK(conc->allocation.output[0] ==
        doctest::Approx(11.0 / 15 - 1 / (5 * s3)).epsilon(1e-12));
  CHECK(conc->allocation.output[1] ==
        doctest::Approx(1.0 / 15 + 4 / (5 * s3)).epsilon(1e-12));

  CHECK_FALSE(sign_vector_equilibrium(inst, {1, -1}).has_value());
  CHECK_FALSE(sign_vector_equilibrium(inst, {-1, 1}).has_value());
  CHECK_FALSE(sign_vector_equilibrium(inst, {-1, -1}).has_value());
}

TEST_CASE("balanced polarization at symmetric values") {
  Vec beta(2);
  beta << 0, 1;
  Vec gamma(2);
  gamma << 4, 4;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);

  auto rec = sign_vector_equilibrium(inst, {1, -1});
  REQUIRE(rec.has_value());
  CHECK(rec->allocation.output[0] == doctest::Approx(4.0 / 3 + 0.2).epsilon(1e-12));
  CHECK(rec->allocation.output[1] == doctest::Approx(4.0 / 3 - 0.2).epsilon(1e-12));
  CHECK(rec->alignment_residual <= 1e-12);

  // At gamma = (4, 4) the all-plus record sits exactly on its floor.
  auto conc = sign_vector_equilibrium(inst, {1, 1});
  REQUIRE(conc.has_value());
  CHECK(conc->boundary);
  CHECK(conc->allocation.output[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("enumeration finds exactly the two worked-example records") {
  auto inst = testutil::example_market();
  auto records = enumerate_equilibria(inst);
  REQUIRE(records.size() == 2);
  CHECK(records[0].kind == EquilibriumKind::Differentiation);
  CHECK(records[1].kind == EquilibriumKind::SignVector);
  REQUIRE(records[1].sigma.size() == 2);
  CHECK(records[1].sigma[0] == 1);
  CHECK(records[1].sigma[1] == 1);
}

TEST_CASE("single-firm market has the lone concentration equilibrium") {
  Vec beta(2);
  beta << 1, 0;
  Vec gamma(1);
  gamma << 1.7;
  auto inst = testutil::make_market(1, 2, 0.9, beta, gamma);
  auto records = enumerate_equilibria(inst);
  REQUIRE(records.size() == 1);
  CHECK(records[0].kind == EquilibriumKind::SignVector);
  CHECK(records[0].sigma == std::vector<int>{1});
  CHECK(records[0].allocation.output[0] ==
        doctest::Approx((1.7 + 0.9) / (2 * 1.9)).epsilon(1e-12));
}

TEST_CASE("verification accepts enumerated records and rejects corrupted ones") {
  auto rng = testutil::rng_for(42);
  int accepted = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = testutil::random_instance(rng, 2, 5, 2, 4);
    auto records = enumerate_equilibria(inst);
    for (const auto& r : records) {
      VerifyOptions opts;
      opts.seed = 7;
      auto report = verify_equilibrium(inst, r.allocation, opts);
      CHECK(report.accepted);
      CHECK(report.worst_deviation_gain <= 1e-6);
      ++accepted;
    }
    if (!records.empty()) {
      Allocation bad = records[0].allocation;
      bad.output[0] += 0.25;
      bad.aggregate = bad.profile.columns * bad.output;
      auto report = verify_equilibrium(inst, bad, {});
      CHECK_FALSE(report.accepted);
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("best-response dynamics settles onto an enumerated record") {
  auto inst = testutil::example_market();
  auto records = enumerate_equilibria(inst);
  REQUIRE_FALSE(records.empty());

  // Kick the interior equilibrium and let the sweep pull it back.
  Allocation start = records[0].allocation;
  start.output[0] += 0.05;
  start.output[1] -= 0.03;
  Mat rot(2, 2);
  double t = 0.2;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  start.profile.columns.col(0) = rot * start.profile.columns.col(0);
  start.aggregate = start.profile.columns * start.output;

  for (double damping : {1.0, 0.5}) {
    DynamicsOptions opts;
    opts.damping = damping;
    opts.verify.seed = 3;
    auto result = best_response_dynamics(inst, start, opts);
    REQUIRE(result.converged);
    REQUIRE(result.record.has_value());

    bool matched = false;
    for (const auto& r : records) {
      if (r.kind != result.record->kind) continue;
      if (testutil::max_abs_diff(r.allocation.output, result.record->allocation.output) > 1e-6)
        continue;
      Mat ga = r.allocation.profile.columns.transpose() * r.allocation.profile.columns;
      Mat gb = result.record->allocation.profile.columns.transpose() *
               result.record->allocation.profile.columns;
      if ((ga - gb).cwiseAbs().maxCoeff() <= 1e-6) matched = true;
    }
    CHECK(matched);
  }
}
