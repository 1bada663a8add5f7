#pragma once

#include "hedonic/types.hpp"

namespace hedonic {

// Full symmetric eigendecomposition by cyclic Jacobi rotations.
// values are sorted descending; vectors holds the matching orthonormal
// eigenvectors as columns. Off-diagonal mass below
// 1e-12 * max(1, max|entry|) is treated as converged.
struct EigenDecomposition {
  Vec values;
  Mat vectors;
  int sweeps = 0;
};

EigenDecomposition jacobi_eigen(const Mat& symmetric, int max_sweeps = 100);

}  // namespace hedonic
