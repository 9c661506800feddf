#include "pcrank/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "pcrank/errors.hpp"

namespace pcrank {

namespace {

void require_same_order(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ShapeError("order mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Shared pass over a pair given the ordered products p(i, j) = x_ij * y_ji.
template <typename Product>
CompatibilityReport accumulate(std::size_t n, Product&& p) {
  double total = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double worst = 1.0;  // diagonal terms
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double forward = p(i, j);
      const double backward = p(j, i);
      total += forward + backward;
      upper += std::max(forward, backward);
      lower += std::min(forward, backward);
      worst = std::max({worst, forward, backward});
    }
  }
  const double nd = static_cast<double>(n);
  const double pairs = nd * (nd - 1.0) / 2.0;
  return CompatibilityReport{(total + nd) / (nd * nd), lower / pairs, upper / pairs, worst};
}

}  // namespace

double comp_matrices(const PCMatrix& c1, const PCMatrix& c2) {
  require_same_order(c1.order(), c2.order());
  const std::size_t n = c1.order();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) total += c1(i, j) * c2(j, i);
  }
  return total / static_cast<double>(n * n);
}

double comp_upper_matrices(const PCMatrix& c1, const PCMatrix& c2) {
  return compatibility(c1, c2).comp_upper;
}

double comp_lower_matrices(const PCMatrix& c1, const PCMatrix& c2) {
  return compatibility(c1, c2).comp_lower;
}

double comp_max_matrices(const PCMatrix& c1, const PCMatrix& c2) {
  return compatibility(c1, c2).comp_max;
}

CompatibilityReport compatibility(const PCMatrix& c1, const PCMatrix& c2) {
  require_same_order(c1.order(), c2.order());
  return accumulate(c1.order(),
                    [&](std::size_t i, std::size_t j) { return c1(i, j) * c2(j, i); });
}

BetaGrid beta_grid(const PriorityVector& w1, const PriorityVector& w2) {
  require_same_order(w1.size(), w2.size());
  const std::size_t n = w1.size();
  std::vector<double> values(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double b = (w1[i] / w1[j]) * (w2[j] / w2[i]);
      values[i * n + j] = b;
      values[j * n + i] = 1.0 / b;
    }
  }
  return BetaGrid(n, std::move(values));
}

CompatibilityReport comp_vectors(const PriorityVector& w1, const PriorityVector& w2) {
  require_same_order(w1.size(), w2.size());
  const CompatibilityReport report = accumulate(w1.size(), [&](std::size_t i, std::size_t j) {
    return (w1[i] / w1[j]) * (w2[j] / w2[i]);
  });
#ifndef NDEBUG
  const CompatibilityReport direct = compatibility(induced_matrix(w1), induced_matrix(w2));
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  assert(close(report.comp, direct.comp) && close(report.comp_lower, direct.comp_lower) &&
         close(report.comp_upper, direct.comp_upper) && close(report.comp_max, direct.comp_max));
#endif
  return report;
}

double manhattan(std::span<const double> w1, std::span<const double> w2) {
  require_same_order(w1.size(), w2.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w1.size(); ++i) total += std::abs(w1[i] - w2[i]);
  return total;
}

double chebyshev(std::span<const double> w1, std::span<const double> w2) {
  require_same_order(w1.size(), w2.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < w1.size(); ++i) worst = std::max(worst, std::abs(w1[i] - w2[i]));
  return worst;
}

double manhattan(const PriorityVector& w1, const PriorityVector& w2) {
  return manhattan(w1.weights(), w2.weights());
}

double chebyshev(const PriorityVector& w1, const PriorityVector& w2) {
  return chebyshev(w1.weights(), w2.weights());
}

std::size_t kendall_distance(const PriorityVector& w1, const PriorityVector& w2) {
  require_same_order(w1.size(), w2.size());
  const std::size_t n = w1.size();
  // a ranks ahead of b (a < b) unless b's weight is strictly larger.
  auto ahead = [](const PriorityVector& w, std::size_t a, std::size_t b) { return !(w[b] > w[a]); };
  std::size_t discordant = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (ahead(w1, a, b) != ahead(w2, a, b)) ++discordant;
    }
  }
  return discordant;
}

}  // namespace pcrank
