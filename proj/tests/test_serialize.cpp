#include "hedonic/serialize.hpp"

#include "hedonic/equilibrium.hpp"
#include "hedonic/spectral.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace hedonic;

TEST_CASE("vectors and matrices survive the round trip") {
  Vec v(3);
  v << 0.25, -1.5, 1.0 / 3;
  CHECK(testutil::max_abs_diff(vec_from_json(to_json(v), "v"), v) == 0.0);

  Mat m(2, 3);
  m << 1, 2, 3, 4, 5, 1e-17;
  CHECK(testutil::max_abs_diff(mat_from_json(to_json(m), "m"), m) == 0.0);
}

TEST_CASE("instances round trip including optional couplings") {
  auto inst = testutil::example_market();
  Mat w(2, 2);
  w << 0, 0.2, 0.2, 0;
  inst.network = w;
  Mat k(2, 2);
  k << 1, 0.5, 0.5, 1;
  inst.ownership = k;

  auto back = instance_from_json(to_json(inst));
  CHECK(back.n == inst.n);
  CHECK(back.m == inst.m);
  CHECK(back.alpha == inst.alpha);
  CHECK(testutil::max_abs_diff(back.beta, inst.beta) == 0.0);
  CHECK(testutil::max_abs_diff(back.gamma, inst.gamma) == 0.0);
  REQUIRE(back.network.has_value());
  CHECK(testutil::max_abs_diff(*back.network, w) == 0.0);
  REQUIRE(back.ownership.has_value());
  CHECK(testutil::max_abs_diff(*back.ownership, k) == 0.0);
}

TEST_CASE("sizes are inferred from the vectors when absent") {
  json j{{"alpha", 1.0}, {"beta", {0.0, 1.0}}, {"gamma", {2.0, 1.5, 0.5}}};
  auto inst = instance_from_json(j);
  CHECK(inst.n == 3);
  CHECK(inst.m == 2);
}

TEST_CASE("malformed instances are rejected with a validation error") {
  CHECK_THROWS_AS(load_instance("not json at all", true), validation_error);
  CHECK_THROWS_AS(load_instance("/nonexistent/path/instance.json", false),
                  validation_error);
  CHECK_THROWS_AS(instance_from_json(json::array()), validation_error);
  CHECK_THROWS_AS(instance_from_json(json{{"alpha", 1.0}, {"beta", {0.0, 1.0}}}),
                  validation_error);
  // Present but wrong: beta off the unit sphere, a string in gamma.
  CHECK_THROWS_AS(
      instance_from_json(json{{"alpha", 1.0}, {"beta", {0.0, 0.9}}, {"gamma", {1.0}}}),
      validation_error);
  CHECK_THROWS_AS(
      instance_from_json(json{{"alpha", 1.0}, {"beta", {0.0, 1.0}}, {"gamma", {"x"}}}),
      validation_error);
}

TEST_CASE("equilibrium records serialize their kind-specific fields") {
  auto inst = testutil::example_market();
  auto records = enumerate_equilibria(inst);
  REQUIRE(records.size() == 2);

  json interior = to_json(records[0]);
  CHECK(interior["kind"] == "differentiation");
  CHECK_FALSE(interior.contains("sigma"));
  CHECK_FALSE(interior.contains("phi"));

  json aligned = to_json(records[1]);
  CHECK(aligned["kind"] == "sign-vector");
  REQUIRE(aligned.contains("sigma"));
  CHECK(aligned["sigma"] == json::array({1, 1}));
  CHECK(aligned["phi"].get<double>() ==
        doctest::Approx((std::sqrt(3.0) - 1) / 15).epsilon(1e-12));
}

TEST_CASE("reduced-market instances parse from psi and sigma") {
  Vec gamma(2);
  gamma << 2, std::sqrt(3.0);
  auto s = concentration_embedding(2, 1.0, gamma);
  json j{{"psi", to_json(s.psi)}, {"sigma", to_json(s.sigma)}};
  auto back = spectral_from_json(j);
  CHECK(testutil::max_abs_diff(back.psi, s.psi) == 0.0);
  CHECK(testutil::max_abs_diff(back.sigma, s.sigma) == 0.0);
  CHECK_THROWS_AS(spectral_from_json(json{{"psi", {1.0, 1.0}}}), validation_error);
}

TEST_CASE("csv fields use twelve significant digits in shortest form") {
  CHECK(csv_field(2.0) == "2");
  CHECK(csv_field(1.0 / 3) == "0.333333333333");
  CHECK(csv_field(-0.5) == "-0.5");
  CHECK(csv_field(1.25e-7) == "1.25e-07");
}
