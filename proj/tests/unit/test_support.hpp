#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pcrank/matrix.hpp"

namespace pcrank::testing {

// 4x4 worked example used across the suites.
inline PCMatrix example_matrix() {
  const std::vector<double> upper = {0.5, 2.0, 5.0, 4.0, 4.0, 5.0};
  return build_matrix(upper, 4);
}

// Reciprocal matrix with log-uniform upper entries in [1/spread, spread].
inline PCMatrix random_reciprocal(std::size_t n, std::mt19937_64& rng, double spread = 9.0) {
  std::uniform_real_distribution<double> u(-std::log(spread), std::log(spread));
  std::vector<double> upper(upper_triangle_size(n));
  for (double& v : upper) v = std::exp(u(rng));
  return build_matrix(upper, n);
}

inline PriorityVector random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> w(n);
  for (double& v : w) v = u(rng);
  return PriorityVector(w);
}

// Slight multiplicative noise on a consistent matrix: guaranteed inconsistent
// well above 1e-7 while staying close to consistency.
inline PCMatrix noisy_induced(const PriorityVector& w, double log_noise, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-log_noise, log_noise);
  std::vector<double> upper;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) upper.push_back(w[i] / w[j] * std::exp(u(rng)));
  return build_matrix(upper, w.size());
}

}  // namespace pcrank::testing
