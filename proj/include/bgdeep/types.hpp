#pragma once

#include <Eigen/Core>

namespace bgdeep {

// Row-major storage so that per-row kernels stream contiguously.
using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace bgdeep
