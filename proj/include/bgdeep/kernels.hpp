#pragma once

#include <vector>

#include <Eigen/Core>

#include "bgdeep/types.hpp"

namespace bgdeep::kernels {

using ConstMatRef = Eigen::Ref<const MatRM, 0, Eigen::OuterStride<>>;

// Hot inner loops of the pipeline. Each kernel exists twice: a serial
// reference in kernels::serial and an OpenMP version in kernels::omp with a
// bitwise-identical loop body (rows distributed across threads, per-row
// arithmetic order unchanged), so outputs do not depend on the thread count.
// The unqualified entry points dispatch to the OpenMP versions.

namespace serial {

/// out(i,j) = exp(-|pts.row(i) - pts.row(j)|^2 / denom). Symmetric, unit diagonal.
void gaussian_kernel_matrix(const ConstMatRef& pts, double denom, MatRM& out);

/// out(i,j) = exp(-|a.row(i) - b.row(j)|^2 / denom).
void gaussian_cross_matrix(const ConstMatRef& a, const ConstMatRef& b,
                           double denom, MatRM& out);

/// out = m * x, one contiguous row dot per entry.
void matvec(const ConstMatRef& m, const Eigen::VectorXd& x, Eigen::VectorXd& out);

/// Squared distances of all unordered pairs (i < j), fixed flat layout.
void pairwise_sqdist(const ConstMatRef& pts, std::vector<double>& out);

}  // namespace serial

namespace omp {

void gaussian_kernel_matrix(const ConstMatRef& pts, double denom, MatRM& out);
void gaussian_cross_matrix(const ConstMatRef& a, const ConstMatRef& b,
                           double denom, MatRM& out);
void matvec(const ConstMatRef& m, const Eigen::VectorXd& x, Eigen::VectorXd& out);
void pairwise_sqdist(const ConstMatRef& pts, std::vector<double>& out);

}  // namespace omp

inline void gaussian_kernel_matrix(const ConstMatRef& pts, double denom, MatRM& out) {
  omp::gaussian_kernel_matrix(pts, denom, out);
}
inline void gaussian_cross_matrix(const ConstMatRef& a, const ConstMatRef& b,
                                  double denom, MatRM& out) {
  omp::gaussian_cross_matrix(a, b, denom, out);
}
inline void matvec(const ConstMatRef& m, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  omp::matvec(m, x, out);
}
inline void pairwise_sqdist(const ConstMatRef& pts, std::vector<double>& out) {
  omp::pairwise_sqdist(pts, out);
}

}  // namespace bgdeep::kernels
