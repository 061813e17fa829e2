#include "bgdeep/legendre.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

namespace bgdeep {

double legendre_eval(int k, double x) {
  if (k < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (k == 0) return 1.0;
  if (k == 1) return x;
  double pkm2 = 1.0;
  double pkm1 = x;
  for (int i = 2; i <= k; ++i) {
    const double pk = ((2.0 * i - 1.0) * x * pkm1 - (i - 1.0) * pkm2) / i;
    pkm2 = pkm1;
    pkm1 = pk;
  }
  return pkm1;
}

void legendre_all(int kmax, double x, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(kmax) + 1);
  out[0] = 1.0;
  if (kmax == 0) return;
  out[1] = x;
  for (int i = 2; i <= kmax; ++i) {
    out[i] = ((2.0 * i - 1.0) * x * out[i - 1] - (i - 1.0) * out[i - 2]) / i;
  }
}

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double smooth_cutoff(double t) {
  const double u = std::abs(t);
  if (u <= 0.5) return 1.0;
  if (u >= 1.0) return 0.0;
  const double v = 2.0 * u - 1.0;  // in (0,1)
  const double a = bump(1.0 - v);
  const double b = bump(v);
  return a / (a + b);
}

double diff_kernel(int n, double x) {
  if (n < 1) throw std::invalid_argument("diff_kernel: degree must be >= 1");
  std::vector<double> p;
  legendre_all(n - 1, x, p);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double hk = smooth_cutoff(static_cast<double>(k) / n);
    sum += hk * k * (k + 0.5) * (k + 1.0) * p[k];
  }
  return 0.5 * sum;
}

NodeMap map_window_times(std::span<const double> times_minutes) {
  const std::size_t d = times_minutes.size();
  if (d < 2) throw std::invalid_argument("map_window_times: need at least 2 times");
  for (std::size_t i = 1; i < d; ++i) {
    if (!(times_minutes[i] > times_minutes[i - 1])) {
      throw std::invalid_argument("map_window_times: times must be strictly increasing");
    }
  }
  const double span = times_minutes[d - 1] - times_minutes[0];
  NodeMap m;
  m.nodes.resize(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    m.nodes(static_cast<Eigen::Index>(i)) =
        2.0 * (times_minutes[i] - times_minutes[0]) / span - 1.0;
  }
  m.nodes(static_cast<Eigen::Index>(d) - 1) = 1.0;  // pin endpoint exactly
  m.scale = 2.0 / span;
  return m;
}

QuadratureRule solve_quadrature(const Eigen::VectorXd& nodes, double kappa_max) {
  const Eigen::Index d = nodes.size();
  if (d < 2) throw std::invalid_argument("solve_quadrature: need at least 2 nodes");
  constexpr double kResidualTol = 1e-8;

  QuadratureRule best;
  bool have_best = false;
  // 2n exactness conditions with d free weights; degrees above d cannot add
  // exactness on fixed nodes, so d bounds the search.
  const int n_cap = static_cast<int>(d);
  for (int n = 1; n <= n_cap; ++n) {
    Eigen::MatrixXd a(2 * n, d);
    std::vector<double> p;
    for (Eigen::Index j = 0; j < d; ++j) {
      legendre_all(2 * n - 1, nodes(j), p);
      for (int k = 0; k < 2 * n; ++k) a(k, j) = p[k];
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * n);
    b(0) = 2.0;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    const Eigen::VectorXd w = svd.solve(b);  // minimum-norm least squares
    const double residual = (a * w - b).norm();

    if (cond > kappa_max || residual > kResidualTol) break;
    best.nodes = nodes;
    best.weights = w;
    best.degree = n;
    best.condition = cond;
    have_best = true;
  }
  if (!have_best) throw std::runtime_error("solve_quadrature: nodes too degenerate");
  return best;
}

DerivativeEstimate estimate_derivative(std::span<const double> values,
                                       const QuadratureRule& rule, double scale) {
  if (static_cast<Eigen::Index>(values.size()) != rule.nodes.size()) {
    throw std::invalid_argument("estimate_derivative: values/nodes length mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
    sum += rule.weights(j) * values[static_cast<std::size_t>(j)] *
           diff_kernel(rule.degree, rule.nodes(j));
  }
  return DerivativeEstimate{scale * sum, rule.degree};
}

double linear_predict(std::span<const double> values,
                      std::span<const double> times_minutes,
                      double horizon_minutes, double kappa_max) {
  if (values.size() != times_minutes.size()) {
    throw std::invalid_argument("linear_predict: values/times length mismatch");
  }
  const NodeMap map = map_window_times(times_minutes);
  const QuadratureRule rule = solve_quadrature(map.nodes, kappa_max);
  const DerivativeEstimate deriv = estimate_derivative(values, rule, map.scale);
  return values.back() + horizon_minutes * deriv.value;
}

const QuadratureRule& QuadratureCache::get(const Eigen::VectorXd& nodes) {
  std::vector<double> key(nodes.data(), nodes.data() + nodes.size());
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = rules_.find(key);
  if (it == rules_.end()) {
    auto rule = std::make_unique<QuadratureRule>(solve_quadrature(nodes, kappa_max_));
    it = rules_.emplace(std::move(key), std::move(rule)).first;
  }
  return *it->second;
}

}  // namespace bgdeep
