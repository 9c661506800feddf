#include "pcrank/priority.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pcrank/errors.hpp"

namespace pcrank {

EvmResult evm(const PCMatrix& c, const EvmOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("EVM tolerance must be positive");
  if (opts.max_iter < 1) throw DomainError("EVM max_iter must be at least 1");

  const std::size_t n = c.order();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  double residual = 0.0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    double w_sum = 0.0;
    double y_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = c.row(i);
      double acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) acc += row[r] * w[r];
      y[i] = acc;
      y_sum += acc;
      w_sum += w[i];
    }
    const double lambda = y_sum / w_sum;

    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(y[i] - lambda * w[i]));
    }
    if (residual <= opts.tol) {
      return EvmResult{PriorityVector(w), lambda, iter, residual};
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] / y_sum;
  }
  throw ConvergenceError("power iteration did not converge after " +
                             std::to_string(opts.max_iter) +
                             " iterations (residual " + std::to_string(residual) +
                             ")",
                         residual, opts.max_iter);
}

PriorityVector gmm(const PCMatrix& c) {
  const std::size_t n = c.order();
  std::vector<double> log_means(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (double v : c.row(i)) acc += std::log(v);
    log_means[i] = acc / static_cast<double>(n);
  }
  const double shift = *std::max_element(log_means.begin(), log_means.end());
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(log_means[i] - shift);
  return PriorityVector(std::move(w));
}

}  // namespace pcrank
