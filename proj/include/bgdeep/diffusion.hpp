#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "bgdeep/types.hpp"

namespace bgdeep {

/// All sample windows across all patients, treated as a point cloud in R^d.
/// Row i of `points` is point id i; metadata mapping ids back to
/// (patient, window) lives with the pipeline.
struct PointCloud {
  MatRM points;  // N x d
  Eigen::Index size() const { return points.rows(); }
};

enum class LaplacianMode {
  random_walk,   // L = I - D^-1 W, eigensolved as I - D^-1/2 W D^-1/2
  unnormalized,  // L = D - W (sign flipped from W - D for a nonnegative spectrum)
};

struct Laplacian {
  MatRM sym;                // symmetric operator handed to the eigensolver
  Eigen::VectorXd degrees;  // row sums of the weight matrix
  LaplacianMode mode = LaplacianMode::random_walk;
};

/// Eigenpairs of the graph Laplacian over the cloud, with eigenfunctions
/// normalized against the discrete measure `mu` (degree measure for
/// random_walk, uniform 1/N for unnormalized):
///   sum_i mu_i phi_j(i) phi_k(i) = delta_jk,  phi_0 == 1,  lambda_0 = 0.
/// This normalization is what makes the summability operator reproduce
/// constants exactly.
struct DiffusionModel {
  double epsilon = 0.0;
  LaplacianMode mode = LaplacianMode::random_walk;
  Eigen::VectorXd eigenvalues;  // ascending
  MatRM phi;                    // N x K, column k = phi_k over the cloud
  Eigen::VectorXd measure;      // mu_i, sums to 1
  int k() const { return static_cast<int>(eigenvalues.size()); }
};

/// Quadrature weights over a training subset: the minimum-norm solution of
///   sum_j W_j phi_k(x_j) = [k = 0],  k = 0 .. k_used-1,
/// for the largest k_used whose system stays well conditioned.
struct SummabilityWeights {
  std::vector<int> train_ids;
  Eigen::VectorXd weights;
  double lambda = 0.0;  // spectral cutoff fed to the filter h(lambda_k/lambda)
  int k_used = 0;
  double condition = 0.0;
};

/// W_ij = exp(-|y_i - y_j|^2 / epsilon).
MatRM build_weight_matrix(const PointCloud& cloud, double epsilon);

/// Median squared pairwise distance over a uniform subsample of <= 2000
/// points (upper median for even pair counts). Errors on an all-identical
/// cloud.
double choose_epsilon(const PointCloud& cloud, std::uint64_t seed);

Laplacian build_laplacian(const MatRM& weights, LaplacianMode mode);

/// k_max smallest eigenpairs, back-transformed and rescaled to the
/// DiffusionModel normalization; sign fixed so each eigenvector's first
/// nonzero component is positive.
DiffusionModel eigendecompose(const Laplacian& laplacian, double epsilon, int k_max);

SummabilityWeights solve_summability_weights(const DiffusionModel& model,
                                             std::span<const int> train_ids,
                                             double kappa_max);

/// sigma_lambda(h; f, x) = sum_j W_j f(x_j) sum_{k<k_used} h(lambda_k/lambda)
/// phi_k(x) phi_k(x_j), evaluated at one point or over the whole cloud.
double evaluate_sigma(const DiffusionModel& model, const SummabilityWeights& sw,
                      std::span<const double> targets, int point_id);
Eigen::VectorXd evaluate_sigma_all(const DiffusionModel& model,
                                   const SummabilityWeights& sw,
                                   std::span<const double> targets);

}  // namespace bgdeep
