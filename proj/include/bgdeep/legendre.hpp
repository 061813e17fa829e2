#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bgdeep {

/// P_k(x) by the three-term recursion
///   k P_k(x) = (2k-1) x P_{k-1}(x) - (k-1) P_{k-2}(x),  P_0 = 1, P_1 = x.
/// Numerically stable on [-1,1] for the degrees used here (k <= 64).
double legendre_eval(int k, double x);

/// P_0(x) .. P_{kmax}(x) in one pass of the recursion.
void legendre_all(int kmax, double x, std::vector<double>& out);

/// Even C^inf cutoff: h(t) = 1 for |t| <= 1/2, 0 for |t| >= 1, and the
/// exp(-1/x) partition-of-unity ratio in between. Values in [0,1], monotone
/// nonincreasing on [1/2, 1].
double smooth_cutoff(double t);

/// Differentiation kernel
///   K_n(h; x) = 1/2 sum_{k=0}^{n-1} h(k/n) k (k+1/2) (k+1) P_k(x).
double diff_kernel(int n, double x);

/// Sample times mapped affinely onto [-1,1] with the last time pinned at +1.
/// `scale` converts a derivative in node coordinates to per-minute units:
/// f'(t_last) = scale * f'(1).
struct NodeMap {
  Eigen::VectorXd nodes;
  double scale = 0.0;
};
NodeMap map_window_times(std::span<const double> times_minutes);

/// Interval quadrature: weights w_j with
///   sum_j w_j P_k(t_j) = 2 [k = 0]   for all 0 <= k < 2n,
/// solved in minimum-norm least squares for ascending candidate degrees n.
/// The degree kept is the last one whose system has condition <= kappa_max
/// and residual <= 1e-8 (search stops at the first inadmissible n).
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int degree = 0;        // n
  double condition = 0;  // of the selected system
};
QuadratureRule solve_quadrature(const Eigen::VectorXd& nodes, double kappa_max);

/// Derivative at the right endpoint:  value = scale * sum_j w_j y_j K_n(h; t_j).
struct DerivativeEstimate {
  double value = 0.0;  // mg/dL per minute after rescaling
  int degree_used = 0;
};
DerivativeEstimate estimate_derivative(std::span<const double> values,
                                       const QuadratureRule& rule, double scale);

/// last reading + horizon * estimated derivative.
double linear_predict(std::span<const double> values,
                      std::span<const double> times_minutes,
                      double horizon_minutes, double kappa_max);

/// Rules are immutable once solved; windows sharing a node geometry (the
/// common case: uniform 5-minute grids) reuse one rule. Safe for concurrent
/// lookups.
class QuadratureCache {
 public:
  explicit QuadratureCache(double kappa_max) : kappa_max_(kappa_max) {}
  const QuadratureRule& get(const Eigen::VectorXd& nodes);

 private:
  double kappa_max_;
  std::mutex mutex_;
  std::map<std::vector<double>, std::unique_ptr<QuadratureRule>> rules_;
};

}  // namespace bgdeep
