#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcrank/matrix.hpp"

namespace pcrank {

// All four compatibility indices of a pair. For any pair of reciprocal
// matrices comp_lower <= comp <= comp_upper <= comp_max.
struct CompatibilityReport {
  double comp;
  double comp_lower;
  double comp_upper;
  double comp_max;
};

// Cross ratios beta_ij = (w1_i / w1_j) * (w2_j / w2_i).
class BetaGrid {
 public:
  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

 private:
  friend BetaGrid beta_grid(const PriorityVector&, const PriorityVector&);
  BetaGrid(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {}

  std::size_t n_;
  std::vector<double> values_;
};

// Matrix indices; every one throws ShapeError on an order mismatch.

// (1/n^2) sum_ij c1_ij * c2_ji
double comp_matrices(const PCMatrix& c1, const PCMatrix& c2);
// 2/(n(n-1)) sum_{i<j} max{c1_ij c2_ji, c1_ji c2_ij}
double comp_upper_matrices(const PCMatrix& c1, const PCMatrix& c2);
// 2/(n(n-1)) sum_{i<j} min{c1_ij c2_ji, c1_ji c2_ij}
double comp_lower_matrices(const PCMatrix& c1, const PCMatrix& c2);
// max_ij c1_ij * c2_ji
double comp_max_matrices(const PCMatrix& c1, const PCMatrix& c2);
// The four indices above in one pass.
CompatibilityReport compatibility(const PCMatrix& c1, const PCMatrix& c2);

BetaGrid beta_grid(const PriorityVector& w1, const PriorityVector& w2);

// Compatibility of the consistent matrices induced by w1 and w2, evaluated
// through the cross ratios without materializing either matrix.
CompatibilityReport comp_vectors(const PriorityVector& w1, const PriorityVector& w2);

double manhattan(const PriorityVector& w1, const PriorityVector& w2);
double chebyshev(const PriorityVector& w1, const PriorityVector& w2);
// Same distances over raw, unnormalized vectors (e.g. published rounded
// values that do not sum to exactly 1).
double manhattan(std::span<const double> w1, std::span<const double> w2);
double chebyshev(std::span<const double> w1, std::span<const double> w2);

// Kendall tau distance (count of discordant pairs) between the orderings by
// descending weight. Exactly equal weights are ordered by alternative index.
std::size_t kendall_distance(const PriorityVector& w1, const PriorityVector& w2);

}  // namespace pcrank
