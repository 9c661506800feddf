#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcrank {

// Relative tolerance used for ratio comparisons; 0 < rel < 1.
struct Tolerance {
  explicit Tolerance(double rel);
  double rel;
};

// Positive weights over n alternatives, normalized to sum 1.
class PriorityVector {
 public:
  // Normalizes `raw` to sum 1. Throws DomainError on empty input or on any
  // non-positive / non-finite component.
  explicit PriorityVector(std::vector<double> raw);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  auto begin() const noexcept { return weights_.begin(); }
  auto end() const noexcept { return weights_.end(); }

 private:
  std::vector<double> weights_;
};

// Square positive reciprocal matrix of comparison ratios.
//
// Only the strict upper triangle is ever supplied; the diagonal is 1 and the
// lower triangle holds the reciprocals, so c(j,i) == 1.0 / c(i,j) bit for bit.
class PCMatrix {
 public:
  // Upper triangle in row-major order: c12, c13, ..., c1n, c23, ..., c(n-1)n.
  static PCMatrix from_upper(std::span<const double> upper, std::size_t n);

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * n_, n_);
  }
  std::vector<double> upper_triangle() const;

  // Relabels alternatives: result(a, b) == (*this)(perm[a], perm[b]).
  PCMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const PCMatrix&, const PCMatrix&) = default;

 private:
  PCMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {}

  std::size_t n_;
  std::vector<double> entries_;
};

std::size_t upper_triangle_size(std::size_t n) noexcept;

// Throws ShapeError when the entry count is not n(n-1)/2 or n < 2, and
// DomainError for a non-positive or non-finite entry.
PCMatrix build_matrix(std::span<const double> upper, std::size_t n);

// Reads the text matrix format: '#' comment lines, one row per line,
// whitespace separated entries, each a decimal literal or an integer fraction
// "p/q". Accepts a full n x n matrix or the strict upper triangle written as
// rows of n-1, n-2, ..., 1 entries.
//
// Full matrices must be reciprocal within 1e-6 (relative) and have a unit
// diagonal; they are then rebuilt from their upper triangle.
PCMatrix parse_matrix(std::string_view text);
PCMatrix parse_matrix(std::istream& in);
PCMatrix read_matrix_file(const std::string& path);

// Full matrix, 17 significant digits, each row LF-terminated.
std::string serialize_matrix(const PCMatrix& c);

// True iff |c_ij c_jk c_ki - 1| <= tol.rel for all i, j, k.
bool is_consistent(const PCMatrix& c, Tolerance tol);

// The consistent matrix with c_ij = w_i / w_j.
PCMatrix induced_matrix(const PriorityVector& w);

}  // namespace pcrank
