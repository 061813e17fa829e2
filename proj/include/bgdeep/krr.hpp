#pragma once

#include <Eigen/Core>

#include "bgdeep/types.hpp"

namespace bgdeep {

/// Tikhonov-regularized kernel least squares with the Gaussian kernel
/// K(x, x') = exp(-|x - x'|^2 / (2 sigma^2)); coefficients solve
/// (K + gamma M I) c = y with M the number of training pairs (the M factor
/// follows the regularized least-squares formulation and can be disabled).
struct KrrModel {
  MatRM train_x;
  Eigen::VectorXd coef;
  double sigma = 0.0;
  double gamma = 0.0;
};

KrrModel krr_fit(const MatRM& train_x, const Eigen::VectorXd& targets, double sigma,
                 double gamma, bool scale_by_m = true);

double krr_predict(const KrrModel& model, const Eigen::RowVectorXd& x);

Eigen::VectorXd krr_predict_all(const KrrModel& model, const MatRM& points);

}  // namespace bgdeep
