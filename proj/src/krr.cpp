#include "bgdeep/krr.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "bgdeep/kernels.hpp"

namespace bgdeep {

KrrModel krr_fit(const MatRM& train_x, const Eigen::VectorXd& targets, double sigma,
                 double gamma, bool scale_by_m) {
  const Eigen::Index m = train_x.rows();
  if (m < 1) throw std::invalid_argument("krr_fit: need at least one training pair");
  if (targets.size() != m) throw std::invalid_argument("krr_fit: targets misaligned");
  if (sigma <= 0.0 || gamma <= 0.0) {
    throw std::invalid_argument("krr_fit: sigma and gamma must be > 0");
  }

  MatRM gram;
  kernels::gaussian_kernel_matrix(train_x, 2.0 * sigma * sigma, gram);
  Eigen::MatrixXd system = gram;
  system.diagonal().array() += scale_by_m ? gamma * static_cast<double>(m) : gamma;

  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("krr_fit: Cholesky factorization failed");
  }

  KrrModel model;
  model.train_x = train_x;
  model.coef = llt.solve(targets);
  model.sigma = sigma;
  model.gamma = gamma;
  return model;
}

double krr_predict(const KrrModel& model, const Eigen::RowVectorXd& x) {
  const double denom = 2.0 * model.sigma * model.sigma;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < model.train_x.rows(); ++i) {
    sum += model.coef(i) *
           std::exp(-(x - model.train_x.row(i)).squaredNorm() / denom);
  }
  return sum;
}

Eigen::VectorXd krr_predict_all(const KrrModel& model, const MatRM& points) {
  MatRM cross;
  kernels::gaussian_cross_matrix(points, model.train_x, 2.0 * model.sigma * model.sigma,
                                 cross);
  Eigen::VectorXd out;
  kernels::matvec(cross, model.coef, out);
  return out;
}

}  // namespace bgdeep
