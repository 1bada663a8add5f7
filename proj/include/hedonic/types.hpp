#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace hedonic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised on malformed input; the CLI maps it to exit code 2.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested object does not exist for the given parameters;
// the CLI maps it to exit code 3.
struct existence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Market primitives. gamma absorbs the intercept net of marginal cost, so
// neither is stored separately; every formula downstream is written in gamma.
struct MarketInstance {
  int n = 0;         // firms
  int m = 0;         // common characteristics
  double alpha = 0;  // utility weight on common characteristics, > 0
  Vec beta;          // ideal mix, length m, unit norm
  Vec gamma;         // standalone values, length n, strictly positive

  // Optional couplings across idiosyncratic characteristics (symmetric, zero
  // diagonal, spectral radius < 1) and profit internalization weights
  // (nonnegative entries, unit diagonal, PSD symmetric part).
  std::optional<Mat> network;
  std::optional<Mat> ownership;

  void validate(double tol = 1e-10) const;
};

// n unit columns of length m; column i is firm i's direction in
// characteristics space.
struct CharProfile {
  Mat columns;  // m x n

  int n_firms() const { return static_cast<int>(columns.cols()); }
  int dim() const { return static_cast<int>(columns.rows()); }
  void validate(double tol = 1e-10) const;
};

struct Allocation {
  CharProfile profile;
  Vec output;     // q, length n, nonnegative
  Vec aggregate;  // x = A q, cached

  static Allocation make(CharProfile profile, Vec output);
  void validate(double tol = 1e-10) const;
};

// Markups and profits per firm plus the surplus aggregates. Raw prices and
// the labor input are only observable up to the gamma absorption, so they
// are not reported.
struct PriceReport {
  Vec markups;
  Vec profits;
  double total_surplus = 0;
  double aggregate_profit = 0;
};

}  // namespace hedonic
