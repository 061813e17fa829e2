#include "bgdeep/kernels.hpp"

#include <cmath>

namespace bgdeep::kernels {

namespace serial {

void gaussian_kernel_matrix(const ConstMatRef& pts, double denom, MatRM& out) {
  const Eigen::Index n = pts.rows();
  out.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = std::exp(-(pts.row(i) - pts.row(j)).squaredNorm() / denom);
    }
  }
}

void gaussian_cross_matrix(const ConstMatRef& a, const ConstMatRef& b,
                           double denom, MatRM& out) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  out.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out(i, j) = std::exp(-(a.row(i) - b.row(j)).squaredNorm() / denom);
    }
  }
}

void matvec(const ConstMatRef& m, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  const Eigen::Index n = m.rows();
  out.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = m.row(i).dot(x);
  }
}

void pairwise_sqdist(const ConstMatRef& pts, std::vector<double>& out) {
  const Eigen::Index n = pts.rows();
  out.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    // flat offset of row i's pairs (i, i+1..n-1)
    std::size_t base = static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 - i;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out[base + j - 1] = (pts.row(i) - pts.row(j)).squaredNorm();
    }
  }
}

}  // namespace serial

namespace omp {

void gaussian_kernel_matrix(const ConstMatRef& pts, double denom, MatRM& out) {
  const Eigen::Index n = pts.rows();
  out.resize(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = std::exp(-(pts.row(i) - pts.row(j)).squaredNorm() / denom);
    }
  }
}

void gaussian_cross_matrix(const ConstMatRef& a, const ConstMatRef& b,
                           double denom, MatRM& out) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  out.resize(n, m);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out(i, j) = std::exp(-(a.row(i) - b.row(j)).squaredNorm() / denom);
    }
  }
}

void matvec(const ConstMatRef& m, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  const Eigen::Index n = m.rows();
  out.resize(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = m.row(i).dot(x);
  }
}

void pairwise_sqdist(const ConstMatRef& pts, std::vector<double>& out) {
  const Eigen::Index n = pts.rows();
  out.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t base = static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 - i;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out[base + j - 1] = (pts.row(i) - pts.row(j)).squaredNorm();
    }
  }
}

}  // namespace omp

}  // namespace bgdeep::kernels
