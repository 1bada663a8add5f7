#include "hedonic/welfare.hpp"

#include "hedonic/benchmarks.hpp"
#include "hedonic/model.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace hedonic;

TEST_CASE("variance of the standalone values") {
  Vec g(4);
  g << 1, 1, 1, 1;
  CHECK(gamma_variance(g) == doctest::Approx(0.0));
  Vec h(2);
  h << 1, 3;
  CHECK(gamma_variance(h) == doctest::Approx(1.0));
}

TEST_CASE("weighted alignment matches its closed form on constructed profiles") {
  auto rng = testutil::rng_for(51);
  std::uniform_real_distribution<double> unif(0.2, 1.2);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 4;
    Vec gamma(n);
    for (int i = 0; i < n; ++i) gamma[i] = 0.3 + 2 * unif(rng);
    double d = unif(rng);
    Vec q = d * gamma;
    auto radii = donut_radii(q);
    double c = radii.inner + (radii.outer - radii.inner) * unif(rng) / 1.2;
    Vec beta = testutil::random_unit(rng, 3);
    auto profile = construct_profile(q, Vec(c * beta));
    CHECK(weighted_cosine(gamma, profile) ==
          doctest::Approx(weighted_cosine_closed_form(c, d, gamma, n)).epsilon(1e-9));
  }
}

TEST_CASE("monopoly beats the interior equilibrium on the worked example") {
  auto inst = testutil::example_market();
  auto c = compare_mono_vs_diff(inst);
  CHECK(c.prediction_made);
  CHECK(c.predicted_sign == 1);
  CHECK(c.left_welfare == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(c.right_welfare == doctest::Approx(22.0 / 9).epsilon(1e-12));
  CHECK(c.observed_sign == 1);
  CHECK(c.agreement);
  CHECK(c.notes.empty());
}

TEST_CASE("diffuse values push the comparison the other way") {
  // Nine firms with small, equal values: the norm of gamma falls below the
  // cutoff (2 + alpha) / sqrt(4 + 3 alpha) while the outer radius stays
  // above 2 + alpha.
  int n = 9;
  Vec gamma = Vec::Constant(n, 0.367);
  Vec beta(2);
  beta << 1, 0;
  auto inst = testutil::make_market(n, 2, 1.0, beta, gamma);
  REQUIRE(donut_radii(gamma).outer >= 3.0);
  REQUIRE(gamma.norm() < 3.0 / std::sqrt(7.0));

  auto c = compare_mono_vs_diff(inst);
  CHECK(c.predicted_sign == -1);
  CHECK(c.observed_sign == -1);
  CHECK(c.agreement);
}

TEST_CASE("comparison refuses parameters outside the overlap region") {
  Vec beta(2);
  beta << 1, 0;
  Vec gamma(2);
  gamma << 0.3, 0.3;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  CHECK_THROWS_AS(compare_mono_vs_diff(inst), validation_error);
}

TEST_CASE("interior vs sign-vector comparison on the worked example") {
  auto inst = testutil::example_market();
  auto c = compare_diff_vs_sigma(inst, {1, 1});
  // sigma . gamma = 2 + sqrt 3 > 2 + alpha = 3, so the interior one wins.
  CHECK(c.prediction_made);
  CHECK(c.predicted_sign == 1);
  CHECK(c.observed_sign == 1);
  CHECK(c.agreement);
}

TEST_CASE("low sign-weighted values also favor the interior equilibrium") {
  Vec beta(2);
  beta << 0, 1;
  Vec gamma(2);
  gamma << 2.5, 2.3;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  auto c = compare_diff_vs_sigma(inst, {1, -1});
  // sigma . gamma = 0.2 sits below the lower cutoff 3/11.
  CHECK(c.prediction_made);
  CHECK(c.predicted_sign == 1);
  CHECK(c.agreement);
}

TEST_CASE("middle region makes no claim but records the observation") {
  Vec beta(2);
  beta << 0, 1;
  Vec gamma(2);
  gamma << 3.0, 2.0;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  // sigma . gamma = 1: between 3/11 and 3.
  auto c = compare_diff_vs_sigma(inst, {1, -1});
  CHECK_FALSE(c.prediction_made);
  CHECK(c.agreement);
}

TEST_CASE("concentration vs monopoly under small values") {
  Vec beta(2);
  beta << 1, 0;
  Vec gamma(2);
  gamma << 0.3, 0.3;
  auto inst = testutil::make_market(2, 2, 1.0, beta, gamma);
  auto c = compare_mono_vs_conc(inst);
  CHECK(c.prediction_made);
  // Zero variance: the concentrated equilibrium must win.
  CHECK(c.predicted_sign == -1);
  CHECK(c.observed_sign == -1);
  CHECK(c.agreement);

  Vec big(2);
  big << 2, 2;
  inst.gamma = big;
  CHECK_THROWS_AS(compare_mono_vs_conc(inst), validation_error);
}

TEST_CASE("symmetric table cells at hand-checked points") {
  auto row = symmetric_welfare_row(2, 1.0, 2.0);
  CHECK(row.omega_planner == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(row.omega_monopoly == doctest::Approx(3.375).epsilon(1e-12));
  REQUIRE(row.omega_diff.has_value());
  CHECK(*row.omega_diff == doctest::Approx(0.5 + 20.0 / 9).epsilon(1e-12));
  REQUIRE(row.omega_conc.has_value());
  CHECK(*row.omega_conc == doctest::Approx(2.52).epsilon(1e-12));
  CHECK_FALSE(row.omega_polar.has_value());  // needs gamma >= 2.4 here
  CHECK(row.q_monopoly == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(row.q_conc.has_value());
  CHECK(*row.q_conc == doctest::Approx(0.6).epsilon(1e-12));

  row = symmetric_welfare_row(2, 1.0, 3.0);
  REQUIRE(row.omega_polar.has_value());
  CHECK(*row.q_polar_high == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(*row.q_polar_low == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(*row.omega_polar == doctest::Approx(5.0 + 0.28).epsilon(1e-12));
  REQUIRE(row.omega_diff.has_value());
  CHECK(*row.omega_diff > *row.omega_polar);

  row = symmetric_welfare_row(2, 1.0, 0.25);
  CHECK(row.omega_planner == doctest::Approx(2 * 1.25 * 1.25 / 6).epsilon(1e-12));
  CHECK_FALSE(row.omega_diff.has_value());
  REQUIRE(row.omega_conc.has_value());
  CHECK(*row.omega_conc > row.omega_monopoly);
}

TEST_CASE("table cells agree with direct surplus at the implied allocations") {
  for (double gamma : {0.2, 0.6, 1.0, 1.7, 2.5, 3.4, 4.5}) {
    auto row = symmetric_welfare_row(2, 1.0, gamma);
    Vec beta(2);
    beta << 1, 0;
    auto inst = testutil::make_market(2, 2, 1.0, beta, Vec(Vec::Constant(2, gamma)));

    auto plan = planner_optimum(inst);
    CHECK(row.omega_planner == doctest::Approx(plan.welfare).epsilon(1e-10));
    auto mono = monopoly_optimum(inst);
    CHECK(row.omega_monopoly ==
          doctest::Approx(total_surplus(inst, mono.allocation)).epsilon(1e-10));

    auto diff = differentiation_equilibrium(inst);
    CHECK(diff.has_value() == row.omega_diff.has_value());
    if (diff)
      CHECK(*row.omega_diff ==
            doctest::Approx(total_surplus(inst, diff->allocation)).epsilon(1e-10));

    auto conc = sign_vector_equilibrium(inst, {1, 1});
    CHECK(conc.has_value() == row.omega_conc.has_value());
    if (conc)
      CHECK(*row.omega_conc ==
            doctest::Approx(total_surplus(inst, conc->allocation)).epsilon(1e-10));

    auto polar = sign_vector_equilibrium(inst, {1, -1});
    CHECK(polar.has_value() == row.omega_polar.has_value());
    if (polar) {
      CHECK(*row.omega_polar ==
            doctest::Approx(total_surplus(inst, polar->allocation)).epsilon(1e-10));
      CHECK(*row.q_polar_high ==
            doctest::Approx(polar->allocation.output[0]).epsilon(1e-12));
      CHECK(*row.q_polar_low ==
            doctest::Approx(polar->allocation.output[1]).epsilon(1e-12));
    }
  }
}
