#include "hedonic/types.hpp"

#include "hedonic/eig.hpp"
#include "hedonic/numeric.hpp"

#include <cmath>
#include <utility>

namespace hedonic {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

}  // namespace

void MarketInstance::validate(double tol) const {
  require(n >= 1, "need at least one firm");
  require(m >= 1, "need at least one characteristic");
  require(alpha > 0, "alpha must be positive");
  require(beta.size() == m, "beta length must equal m");
  require(gamma.size() == n, "gamma length must equal n");
  require(std::abs(beta.norm() - 1.0) <= tol, "beta must have unit norm");
  for (int i = 0; i < n; ++i) require(gamma[i] > 0, "gamma must be strictly positive");

  if (network) {
    const Mat& w = *network;
    require(w.rows() == n && w.cols() == n, "network must be n x n");
    require((w - w.transpose()).cwiseAbs().maxCoeff() <= tol, "network must be symmetric");
    for (int i = 0; i < n; ++i)
      require(std::abs(w(i, i)) <= tol, "network diagonal must be zero");
    require(spectral_radius_abs(w) < 1.0, "network spectral radius must be below 1");
  }

  if (ownership) {
    const Mat& k = *ownership;
    require(k.rows() == n && k.cols() == n, "ownership must be n x n");
    for (int i = 0; i < n; ++i) {
      require(std::abs(k(i, i) - 1.0) <= tol, "ownership diagonal must be 1");
      for (int j = 0; j < n; ++j) require(k(i, j) >= -tol, "ownership weights must be nonnegative");
    }
    Mat sym = 0.5 * (k + k.transpose());
    auto eig = jacobi_eigen(sym);
    require(eig.values[eig.values.size() - 1] >= -tol * std::max(1.0, sym.cwiseAbs().maxCoeff()),
            "symmetrized ownership matrix must be PSD");
  }
}

void CharProfile::validate(double tol) const {
  if (columns.size() == 0) throw validation_error("profile is empty");
  for (int i = 0; i < n_firms(); ++i) {
    if (std::abs(columns.col(i).norm() - 1.0) > tol)
      throw validation_error("profile columns must have unit norm");
  }
}

Allocation Allocation::make(CharProfile profile, Vec output) {
  Allocation a;
  if (output.size() != profile.n_firms())
    throw validation_error("output length must match the profile");
  a.aggregate = profile.columns * output;
  a.profile = std::move(profile);
  a.output = std::move(output);
  return a;
}

void Allocation::validate(double tol) const {
  profile.validate(tol);
  if (output.size() != profile.n_firms())
    throw validation_error("output length must match the profile");
  for (Eigen::Index i = 0; i < output.size(); ++i) {
    if (output[i] < -tol) throw validation_error("outputs must be nonnegative");
  }
  if ((aggregate - profile.columns * output).cwiseAbs().maxCoeff() >
      tol * std::max(1.0, aggregate.cwiseAbs().maxCoeff()))
    throw validation_error("cached aggregate is stale");
}

}  // namespace hedonic
