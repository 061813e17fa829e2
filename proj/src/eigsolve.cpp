#include "bgdeep/eigsolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "bgdeep/kernels.hpp"
#include "bgdeep/rng.hpp"

namespace bgdeep {

namespace {

constexpr int kDenseCutoff = 700;
constexpr double kResidualTol = 1e-12;  // relative to the spectral scale

Eigen::VectorXd deterministic_start(Eigen::Index n, std::uint64_t stream) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint64_t z = derive_seed(0x5DEECE66DULL + stream, static_cast<std::uint64_t>(i));
    v(i) = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  return v;
}

EigenPairs dense_smallest(const MatRM& sym, int k) {
  Eigen::MatrixXd a = sym;  // column-major copy for the solver
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecompose: dense solver failed");
  }
  EigenPairs out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  return out;
}

/// Lanczos with full (twice-iterated) reorthogonalization against the whole
/// basis. Ritz pairs are accepted once the classical residual bound
/// beta_m |u_m| drops below kResidualTol * |theta|_max for the k lowest pairs.
EigenPairs lanczos_smallest(const MatRM& sym, int k) {
  const Eigen::Index n = sym.rows();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(n, 8 * k + 80));

  Eigen::MatrixXd basis(n, m_max);
  Eigen::VectorXd alpha(m_max);
  Eigen::VectorXd beta(m_max);  // beta(j) couples columns j and j+1

  Eigen::VectorXd q = deterministic_start(n, 0);
  q.normalize();
  basis.col(0) = q;

  Eigen::VectorXd work(n);
  int m = 0;  // number of completed columns
  std::uint64_t restart_stream = 1;

  auto reorthogonalize = [&](Eigen::VectorXd& r, int cols) {
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd proj = basis.leftCols(cols).transpose() * r;
      r.noalias() -= basis.leftCols(cols) * proj;
    }
  };

  while (m < m_max) {
    kernels::matvec(sym, basis.col(m), work);
    alpha(m) = basis.col(m).dot(work);
    Eigen::VectorXd r = work - alpha(m) * basis.col(m);
    if (m > 0) r.noalias() -= beta(m - 1) * basis.col(m - 1);
    reorthogonalize(r, m + 1);
    const double b = r.norm();
    ++m;
    if (m == m_max) {
      beta(m - 1) = b;  // residual scale for the final bound check
      break;
    }

    if (b < 1e-13 * std::max(1.0, std::abs(alpha(0)))) {
      // invariant subspace hit; continue with a fresh deterministic direction
      Eigen::VectorXd fresh = deterministic_start(n, restart_stream++);
      reorthogonalize(fresh, m);
      const double fn = fresh.norm();
      if (fn < 1e-13) break;  // basis spans everything
      beta(m - 1) = 0.0;
      basis.col(m) = fresh / fn;
      continue;
    }
    beta(m - 1) = b;
    basis.col(m) = r / b;

    // periodic convergence check on the tridiagonal Ritz problem
    if (m >= std::min<int>(m_max, k + 16) && m % 16 == 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1));
      const double scale = std::max(std::abs(tri.eigenvalues()(0)),
                                    std::abs(tri.eigenvalues()(m - 1)));
      bool done = true;
      for (int i = 0; i < k; ++i) {
        const double bound = std::abs(beta(m - 1) * tri.eigenvectors()(m - 1, i));
        if (bound > kResidualTol * std::max(scale, 1e-300)) {
          done = false;
          break;
        }
      }
      if (done) {
        EigenPairs out;
        out.values = tri.eigenvalues().head(k);
        out.vectors = basis.leftCols(m) * tri.eigenvectors().leftCols(k);
        out.iterations = m;
        return out;
      }
    }
  }

  // final attempt with the full basis
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1));
  const double scale = std::max(std::abs(tri.eigenvalues()(0)),
                                std::abs(tri.eigenvalues()(m - 1)));
  for (int i = 0; i < k; ++i) {
    const double bound = std::abs(beta(m - 1) * tri.eigenvectors()(m - 1, i));
    if (m < static_cast<int>(sym.rows()) && bound > 1e-9 * std::max(scale, 1e-300)) {
      throw std::runtime_error("eigendecompose: Lanczos did not converge after " +
                               std::to_string(m) + " iterations");
    }
  }
  EigenPairs out;
  out.values = tri.eigenvalues().head(k);
  out.vectors = basis.leftCols(m) * tri.eigenvectors().leftCols(k);
  out.iterations = m;
  return out;
}

}  // namespace

EigenPairs smallest_eigenpairs(const MatRM& sym, int k) {
  const Eigen::Index n = sym.rows();
  if (n != sym.cols()) throw std::invalid_argument("smallest_eigenpairs: matrix not square");
  if (k < 1 || k > n) throw std::invalid_argument("smallest_eigenpairs: bad k");
  if (n <= kDenseCutoff || 4 * static_cast<Eigen::Index>(k) >= n) {
    return dense_smallest(sym, k);
  }
  return lanczos_smallest(sym, k);
}

}  // namespace bgdeep
