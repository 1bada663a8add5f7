#include "hedonic/spectral.hpp"

#include "hedonic/welfare.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace hedonic {

void SpectralInstance::validate(double tol) const {
  const auto n = sigma.rows();
  if (n < 1) throw validation_error("need at least one product");
  if (sigma.cols() != n) throw validation_error("sigma must be square");
  if (psi.size() != n) throw validation_error("psi length must match sigma");
  for (Eigen::Index i = 0; i < n; ++i)
    if (psi[i] <= 0) throw validation_error("psi must be strictly positive");

  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw validation_error("sigma must be symmetric");
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(sigma(i, i) - sigma(0, 0)) > tol * scale)
      throw validation_error("sigma must have a constant diagonal");

  auto eig = jacobi_eigen(sigma);
  if (eig.values[n - 1] <= tol * scale)
    throw validation_error("sigma must be positive definite");
}

double SpectralInstance::lambda_bar() const { return sigma.diagonal().mean(); }

SpectralOutputs spectral_outputs(const SpectralInstance& inst) {
  SpectralOutputs out;
  out.q_planner = inst.sigma.ldlt().solve(inst.psi);
  out.q_monopoly = 0.5 * out.q_planner;
  Mat shifted = inst.sigma + inst.lambda_bar() * Mat::Identity(inst.sigma.rows(), inst.sigma.rows());
  out.q_equilibrium = shifted.ldlt().solve(inst.psi);
  return out;
}

double spectral_surplus(const SpectralInstance& inst, const Vec& q) {
  return inst.psi.dot(q) - 0.5 * q.dot(inst.sigma * q);
}

SpectralWelfares spectral_welfares(const SpectralInstance& inst) {
  auto q = spectral_outputs(inst);
  SpectralWelfares w;
  w.planner = spectral_surplus(inst, q.q_planner);
  w.monopoly = spectral_surplus(inst, q.q_monopoly);
  w.equilibrium = spectral_surplus(inst, q.q_equilibrium);
  return w;
}

SpectralReport ranking_condition(const SpectralInstance& inst, double tie_tol) {
  SpectralReport report;
  const auto n = inst.sigma.rows();
  const double lbar = inst.lambda_bar();

  auto eig = jacobi_eigen(inst.sigma);
  report.eigenvalues = eig.values;
  report.eigenvectors = eig.vectors;

  report.weights = Vec(n);
  report.projections_sq = Vec(n);
  const double scale = std::max(1.0, inst.sigma.cwiseAbs().maxCoeff());
  report.major_count = 0;
  double plus = 0, minus = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double l = eig.values[i];
    double p = eig.vectors.col(i).dot(inst.psi);
    report.projections_sq[i] = p * p;
    report.weights[i] = (l + 3 * lbar) * (l - lbar) / (l * (l + lbar) * (l + lbar));
    if (l > lbar + 1e-12 * scale) {
      ++report.major_count;
      plus += report.weights[i] * report.projections_sq[i];
    } else if (l < lbar - 1e-12 * scale) {
      minus += -report.weights[i] * report.projections_sq[i];
    }
  }

  report.outputs = spectral_outputs(inst);
  report.welfares = spectral_welfares(inst);

  double spectral_gap = 0.125 * report.weights.dot(report.projections_sq);
  double direct_gap = report.welfares.equilibrium - report.welfares.monopoly;
  report.identity_gap = std::abs(direct_gap - spectral_gap);

  double margin = plus - minus;
  report.verdict = margin > tie_tol ? Ranking::OligopolyBetter
                                    : (margin < -tie_tol ? Ranking::MonopolyBetter : Ranking::Tie);
  return report;
}

SpectralInstance concentration_embedding(int n, double alpha, const Vec& gamma) {
  if (gamma.size() != n) throw validation_error("gamma length must equal n");
  SpectralInstance s;
  s.sigma = alpha * Mat::Ones(n, n) + Mat::Identity(n, n);
  s.psi = gamma.array() + alpha;
  return s;
}

ConcentrationReport concentration_ranking(int n, double alpha, const Vec& gamma,
                                          double tie_tol) {
  if (n < 1 || gamma.size() != n) throw validation_error("gamma length must equal n");
  const double a = alpha;
  const double big_d = 2 + (n + 1) * a;
  const double outer = gamma.sum();

  ConcentrationReport report;
  if (n > 1) {
    double mean_lift = a + outer / n;
    report.major_side = (n - 1) * (4 + (n + 3) * a) * mean_lift * mean_lift /
                        ((1 + n * a) * big_d * big_d);
  }
  double var = gamma_variance(gamma);
  report.variance_side = (4 + 3 * a) * var / ((2 + a) * (2 + a));

  double margin = report.major_side - report.variance_side;
  report.verdict = margin > tie_tol ? Ranking::OligopolyBetter
                                    : (margin < -tie_tol ? Ranking::MonopolyBetter : Ranking::Tie);

  double f = a * a * n * n * (2 + a) * (2 + a) * (4 + (n + 3) * a);
  double g = (4 + 3 * a) * (1 + n * a) * big_d * big_d;
  report.advisory_polynomial = n > 1 && f > g;
  report.advisory_zero_variance =
      var <= 1e-14 * std::max(1.0, gamma.cwiseAbs().maxCoeff() * gamma.cwiseAbs().maxCoeff());
  return report;
}

const char* ranking_name(Ranking r) {
  switch (r) {
    case Ranking::OligopolyBetter: return "oligopoly-better";
    case Ranking::MonopolyBetter: return "monopoly-better";
    default: return "tie";
  }
}

}  // namespace hedonic
