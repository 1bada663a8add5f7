#pragma once

#include "hedonic/types.hpp"

#include <vector>

namespace hedonic {

// The set of aggregates x reachable with unit columns at fixed outputs q is
// the annulus  inner <= |x| <= outer  with outer = sum q_i and
// inner = max(0 at n>1 collapse, 2 max q_i - sum q_i).
struct DonutRadii {
  double inner = 0;
  double outer = 0;
};

DonutRadii donut_radii(const Vec& q);

// Inclusive membership test with boundary slack.
bool is_feasible(const Vec& q, const Vec& x, double slack = 1e-12);

// Builds unit columns a_1..a_n with  A q = x  exactly (up to roundoff).
// The construction works in the plane spanned by x and a deterministic
// orthogonal companion direction, peeling one firm at a time while keeping
// the remaining suffix feasible. `mirror` flips the branch choice at every
// step, which reflects the profile across the x axis and leaves the Gram
// matrix unchanged. m = 1 falls back to an exact sign-pattern search.
// Throws validation_error when (q, x) is outside the annulus or m mismatches.
CharProfile construct_profile(const Vec& q, const Vec& x, bool mirror = false);

enum class Pattern { Concentration, Polarization, Differentiation };

struct ProfilePattern {
  Pattern tag = Pattern::Differentiation;
  // Polarization only: the shared axis and each firm's side of it.
  Vec axis;
  std::vector<int> sigma;
  int rank = 0;
};

// Concentration: all pairwise cosines within tol of +1. Polarization: all
// pairwise cosines within tol of +-1 with at least one -1. Anything else is
// differentiation. A single firm counts as concentration.
ProfilePattern classify_profile(const CharProfile& profile, double tol = 1e-8);

const char* pattern_name(Pattern tag);

}  // namespace hedonic
