#include "hedonic/geometry.hpp"

#include "hedonic/numeric.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <functional>

namespace hedonic {

DonutRadii donut_radii(const Vec& q) {
  auto norms = abs_norms(q);
  DonutRadii d;
  d.outer = norms.one;
  d.inner = std::max(0.0, 2 * norms.inf - norms.one);
  return d;
}

bool is_feasible(const Vec& q, const Vec& x, double slack) {
  auto d = donut_radii(q);
  double nx = x.norm();
  return nx >= d.inner - slack && nx <= d.outer + slack;
}

namespace {

// Exact signed-sum search for the one-dimensional case; the reachable set is
// discrete there, so the annulus test is only necessary, not sufficient.
bool sign_search(const Vec& q, const std::vector<double>& suffix, int i, double rem,
                 double tol, std::vector<int>& sigma) {
  if (i == static_cast<int>(sigma.size())) return std::abs(rem) <= tol;
  if (std::abs(rem) > suffix[i] + tol) return false;
  int first = rem >= 0 ? 1 : -1;
  for (int s : {first, -first}) {
    sigma[i] = s;
    if (sign_search(q, suffix, i + 1, rem - s * q[i], tol, sigma)) return true;
  }
  return false;
}

CharProfile construct_line(const Vec& q, double target) {
  const int n = static_cast<int>(q.size());
  std::vector<double> suffix(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + q[i];
  std::vector<int> sigma(n, 1);
  double tol = 1e-9 * std::max(1.0, std::abs(target));
  if (!sign_search(q, suffix, 0, target, tol, sigma))
    throw validation_error("no sign pattern reaches the requested aggregate");
  CharProfile p;
  p.columns = Mat(1, n);
  for (int i = 0; i < n; ++i) p.columns(0, i) = sigma[i];
  return p;
}

}  // namespace

CharProfile construct_profile(const Vec& q, const Vec& x, bool mirror) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(x.size());
  if (n < 1) throw validation_error("need at least one output");
  if (m < 1) throw validation_error("need at least one characteristic");
  for (int i = 0; i < n; ++i)
    if (q[i] < -1e-12) throw validation_error("outputs must be nonnegative");

  if (m == 1) return construct_line(q, x[0]);

  if (!is_feasible(q, x)) throw validation_error("aggregate outside the feasible annulus");

  // Work in the plane spanned by x and a deterministic companion direction.
  Vec e1, e2;
  double nx = x.norm();
  const double scale = std::max(1.0, abs_norms(q).one);
  if (nx <= 1e-14 * scale) {
    e1 = Vec::Zero(m);
    e1[0] = 1;
    nx = 0;
  } else {
    e1 = x / nx;
  }
  if (m == 2) {
    // Counterclockwise quarter turn keeps the construction rotation
    // equivariant in the plane.
    e2 = Vec(2);
    e2[0] = -e1[1];
    e2[1] = e1[0];
  } else {
    int pivot = 0;
    for (int j = 1; j < m; ++j)
      if (std::abs(e1[j]) < std::abs(e1[pivot])) pivot = j;
    e2 = Vec::Zero(m);
    e2[pivot] = 1;
    e2 -= e1[pivot] * e1;
    e2.normalize();
  }

  // Remaining target in (e1, e2) coordinates. Each step places one column so
  // that the leftover distance stays inside the annulus of the unprocessed
  // suffix; the midpoint of the admissible interval keeps clear of both walls.
  double tx = nx, ty = 0;
  const double qtiny = 1e-14 * std::max(1.0, abs_norms(q).inf);
  Mat plane(2, n);

  for (int i = 0; i < n; ++i) {
    double suffix_sum = 0, suffix_max = 0;
    for (int j = i + 1; j < n; ++j) {
      suffix_sum += q[j];
      if (q[j] > suffix_max) suffix_max = q[j];
    }
    double r_suf = std::max(0.0, 2 * suffix_max - suffix_sum);
    double tn = std::hypot(tx, ty);

    if (q[i] <= qtiny) {
      plane(0, i) = 1;
      plane(1, i) = 0;
      continue;
    }
    if (tn <= qtiny) {
      // Any direction yields the same leftover distance q_i; stay on e1.
      plane(0, i) = 1;
      plane(1, i) = 0;
      tx -= q[i];
      continue;
    }

    double lo = std::max(std::abs(tn - q[i]), r_suf);
    double hi = std::min(tn + q[i], suffix_sum);
    double d = 0.5 * (lo + hi);

    // Degenerate placements must be exact: sqrt(1 - cos^2) loses half the
    // digits near +-1, which would leak ~1e-8 into the closure. The last
    // column is always collinear with the leftover.
    double span = tn + q[i];
    double cos_t, sin_t;
    if (suffix_sum <= qtiny || d <= std::abs(tn - q[i]) + 1e-12 * span) {
      cos_t = 1;
      sin_t = 0;
    } else if (d >= span * (1 - 1e-12)) {
      cos_t = -1;
      sin_t = 0;
    } else {
      cos_t = (tn * tn + q[i] * q[i] - d * d) / (2 * q[i] * tn);
      cos_t = std::min(1.0, std::max(-1.0, cos_t));
      sin_t = std::sqrt(std::max(0.0, 1 - cos_t * cos_t));
    }

    double ux = tx / tn, uy = ty / tn;  // unit target
    double px = -uy, py = ux;           // its counterclockwise normal
    // Reflected twins across the target ray; the branch with the larger e2
    // coordinate is canonical, mirror picks the other one.
    double ax_p = cos_t * ux + sin_t * px, ay_p = cos_t * uy + sin_t * py;
    double ax_m = cos_t * ux - sin_t * px, ay_m = cos_t * uy - sin_t * py;
    bool take_plus = ay_p >= ay_m;
    if (mirror) take_plus = !take_plus;
    double ax = take_plus ? ax_p : ax_m;
    double ay = take_plus ? ay_p : ay_m;

    plane(0, i) = ax;
    plane(1, i) = ay;
    tx -= q[i] * ax;
    ty -= q[i] * ay;
  }

  if (std::hypot(tx, ty) > 1e-6 * scale)
    throw validation_error("profile construction failed to close the target");

  CharProfile out;
  out.columns = Mat(m, n);
  for (int i = 0; i < n; ++i) {
    Vec col = plane(0, i) * e1 + plane(1, i) * e2;
    col.normalize();
    out.columns.col(i) = col;
  }
  return out;
}

ProfilePattern classify_profile(const CharProfile& profile, double tol) {
  const int n = profile.n_firms();
  ProfilePattern out;

  Eigen::JacobiSVD<Mat> svd(profile.columns);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0;
  out.rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > 1e-8 * std::max(smax, 1.0)) ++out.rank;

  bool all_aligned = true;
  bool any_negative = false;
  for (int i = 0; i < n && all_aligned; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double c = profile.columns.col(i).dot(profile.columns.col(j));
      if (std::abs(std::abs(c) - 1) > tol) {
        all_aligned = false;
        break;
      }
      if (c < 0) any_negative = true;
    }
  }

  if (all_aligned && !any_negative) {
    out.tag = Pattern::Concentration;
    return out;
  }
  if (all_aligned) {
    out.tag = Pattern::Polarization;
    out.axis = profile.columns.col(0);
    out.sigma.resize(n);
    for (int i = 0; i < n; ++i)
      out.sigma[i] = profile.columns.col(i).dot(out.axis) >= 0 ? 1 : -1;
    return out;
  }
  out.tag = Pattern::Differentiation;
  return out;
}

const char* pattern_name(Pattern tag) {
  switch (tag) {
    case Pattern::Concentration: return "concentration";
    case Pattern::Polarization: return "polarization";
    default: return "differentiation";
  }
}

}  // namespace hedonic
