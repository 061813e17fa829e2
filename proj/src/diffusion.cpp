#include "bgdeep/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bgdeep/eigsolve.hpp"
#include "bgdeep/kernels.hpp"
#include "bgdeep/legendre.hpp"
#include "bgdeep/rng.hpp"

namespace bgdeep {

MatRM build_weight_matrix(const PointCloud& cloud, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("build_weight_matrix: epsilon must be > 0");
  MatRM w;
  kernels::gaussian_kernel_matrix(cloud.points, epsilon, w);
  return w;
}

double choose_epsilon(const PointCloud& cloud, std::uint64_t seed) {
  const Eigen::Index n = cloud.size();
  if (n < 2) throw std::invalid_argument("choose_epsilon: need at least 2 points");

  constexpr Eigen::Index kSubsampleCap = 2000;
  std::vector<double> dists;
  if (n <= kSubsampleCap) {
    kernels::pairwise_sqdist(cloud.points, dists);
  } else {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0u);
    Rng rng(derive_seed(seed, 0xE75ULL));
    rng.shuffle(idx);
    MatRM sub(kSubsampleCap, cloud.points.cols());
    for (Eigen::Index i = 0; i < kSubsampleCap; ++i) {
      sub.row(i) = cloud.points.row(idx[static_cast<std::size_t>(i)]);
    }
    kernels::pairwise_sqdist(sub, dists);
  }

  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  const double median = dists[mid];
  if (median <= 0.0) throw std::runtime_error("choose_epsilon: degenerate cloud");
  return median;
}

Laplacian build_laplacian(const MatRM& weights, LaplacianMode mode) {
  const Eigen::Index n = weights.rows();
  if (n != weights.cols()) throw std::invalid_argument("build_laplacian: matrix not square");

  Laplacian lap;
  lap.mode = mode;
  lap.degrees = weights.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lap.degrees(i) > 0.0)) throw std::runtime_error("build_laplacian: zero row sum");
  }

  if (mode == LaplacianMode::random_walk) {
    const Eigen::VectorXd dinv_sqrt = lap.degrees.array().rsqrt();
    lap.sym = -weights;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        lap.sym(i, j) *= dinv_sqrt(i) * dinv_sqrt(j);
      }
    }
    lap.sym.diagonal().array() += 1.0;
  } else {
    lap.sym = -weights;
    lap.sym.diagonal() += lap.degrees;
  }
  return lap;
}

DiffusionModel eigendecompose(const Laplacian& laplacian, double epsilon, int k_max) {
  const Eigen::Index n = laplacian.sym.rows();
  if (k_max < 1 || k_max > n) throw std::invalid_argument("eigendecompose: bad k_max");

  EigenPairs pairs = smallest_eigenpairs(laplacian.sym, k_max);

  DiffusionModel model;
  model.epsilon = epsilon;
  model.mode = laplacian.mode;
  model.eigenvalues = pairs.values;
  model.phi.resize(n, k_max);

  if (laplacian.mode == LaplacianMode::random_walk) {
    const double total_degree = laplacian.degrees.sum();
    const Eigen::VectorXd back = (total_degree / laplacian.degrees.array()).sqrt();
    for (int k = 0; k < k_max; ++k) {
      model.phi.col(k) = pairs.vectors.col(k).cwiseProduct(back);
    }
    model.measure = laplacian.degrees / total_degree;
  } else {
    const double root_n = std::sqrt(static_cast<double>(n));
    for (int k = 0; k < k_max; ++k) {
      model.phi.col(k) = pairs.vectors.col(k) * root_n;
    }
    model.measure = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  }

  // deterministic sign: first component of nontrivial magnitude is positive
  for (int k = 0; k < k_max; ++k) {
    const double threshold = 1e-12 * model.phi.col(k).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = model.phi(i, k);
      if (std::abs(v) > threshold) {
        if (v < 0.0) model.phi.col(k) = -model.phi.col(k);
        break;
      }
    }
  }
  return model;
}

SummabilityWeights solve_summability_weights(const DiffusionModel& model,
                                             std::span<const int> train_ids,
                                             double kappa_max) {
  if (train_ids.empty()) {
    throw std::invalid_argument("solve_summability_weights: empty training set");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(train_ids.size());
  const int k_total = model.k();
  constexpr double kResidualTol = 1e-8;

  // phi rows restricted to the training subset, built once
  MatRM phi_train(m, k_total);
  for (Eigen::Index j = 0; j < m; ++j) {
    phi_train.row(j) = model.phi.row(train_ids[static_cast<std::size_t>(j)]);
  }

  SummabilityWeights best;
  bool have_best = false;
  for (int k_used = 1; k_used <= k_total; ++k_used) {
    const Eigen::MatrixXd a = phi_train.leftCols(k_used).transpose();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k_used);
    b(0) = 1.0;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    const Eigen::VectorXd w = svd.solve(b);
    const double residual = (a * w - b).norm();
    if (cond > kappa_max || residual > kResidualTol) break;

    best.weights = w;
    best.k_used = k_used;
    best.condition = cond;
    have_best = true;
  }
  if (!have_best) {
    throw std::runtime_error("solve_summability_weights: system ill-posed at k_used=1");
  }

  best.train_ids.assign(train_ids.begin(), train_ids.end());
  if (best.k_used < k_total) {
    best.lambda = 0.5 * (model.eigenvalues(best.k_used - 1) + model.eigenvalues(best.k_used));
  } else {
    best.lambda = 2.0 * model.eigenvalues(k_total - 1);
  }
  if (best.lambda <= 0.0) best.lambda = 1.0;  // only when the resolved spectrum is {0}
  return best;
}

namespace {

Eigen::VectorXd filtered_coefficients(const DiffusionModel& model,
                                      const SummabilityWeights& sw,
                                      std::span<const double> targets) {
  if (targets.size() != sw.train_ids.size()) {
    throw std::invalid_argument("evaluate_sigma: targets misaligned with train_ids");
  }
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(sw.k_used);
  for (int k = 0; k < sw.k_used; ++k) {
    const double filter = smooth_cutoff(model.eigenvalues(k) / sw.lambda);
    if (filter == 0.0) continue;
    double acc = 0.0;
    for (std::size_t j = 0; j < sw.train_ids.size(); ++j) {
      acc += sw.weights(static_cast<Eigen::Index>(j)) * targets[j] *
             model.phi(sw.train_ids[j], k);
    }
    coef(k) = filter * acc;
  }
  return coef;
}

}  // namespace

double evaluate_sigma(const DiffusionModel& model, const SummabilityWeights& sw,
                      std::span<const double> targets, int point_id) {
  if (point_id < 0 || point_id >= model.phi.rows()) {
    throw std::invalid_argument("evaluate_sigma: point_id outside the cloud");
  }
  const Eigen::VectorXd coef = filtered_coefficients(model, sw, targets);
  return model.phi.row(point_id).head(sw.k_used).dot(coef);
}

Eigen::VectorXd evaluate_sigma_all(const DiffusionModel& model,
                                   const SummabilityWeights& sw,
                                   std::span<const double> targets) {
  const Eigen::VectorXd coef = filtered_coefficients(model, sw, targets);
  Eigen::VectorXd out;
  kernels::matvec(model.phi.leftCols(sw.k_used), coef, out);
  return out;
}

}  // namespace bgdeep
