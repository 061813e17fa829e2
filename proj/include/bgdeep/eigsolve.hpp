#pragma once

#include <Eigen/Core>

#include "bgdeep/types.hpp"

namespace bgdeep {

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, l2-orthonormal
  int iterations = 0;       // 0 for the dense path
};

/// k smallest eigenpairs of a symmetric matrix. Small problems (or k close to
/// n) go through Eigen's dense solver; larger ones use Lanczos with full
/// reorthogonalization, whose only O(n^2) step is the row-parallel matvec
/// kernel, so results are identical for any thread count.
EigenPairs smallest_eigenpairs(const MatRM& sym, int k);

}  // namespace bgdeep
