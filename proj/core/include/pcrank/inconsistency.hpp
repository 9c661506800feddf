#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pcrank/matrix.hpp"
#include "pcrank/priority.hpp"

namespace pcrank {

// A triad of distinct alternatives (0-based) with its local Koczkodaj value,
// comparing c_ij against the path c_ik * c_kj.
struct Triad {
  std::size_t i;
  std::size_t k;
  std::size_t j;
  double local_ki;
};

// Random consistency index RI(n) per matrix order.
class RITable {
 public:
  RITable() = default;
  explicit RITable(std::map<std::size_t, double> values);

  // Commonly published AHP values for n = 3..10.
  static RITable defaults();

  // Parses "n = value" lines; blank lines and '#' comments are ignored.
  static RITable parse(std::string_view text);
  static RITable load(const std::string& path);

  bool contains(std::size_t n) const { return values_.count(n) != 0; }
  // Throws LookupError when n is missing.
  double at(std::size_t n) const;
  const std::map<std::size_t, double>& values() const noexcept { return values_; }

 private:
  std::map<std::size_t, double> values_;
};

struct InconsistencyReport {
  double lambda_max;
  double ci;
  std::optional<double> cr;           // absent when RI(n) is unknown
  std::optional<double> ki;           // absent when n == 2
  std::optional<Triad> worst_triad;   // absent when n == 2
};

// (lambda_max - n) / (n - 1) with lambda_max from evm(). Values in
// [-1e-9, 0) caused by rounding are reported as 0.
double saaty_ci(const PCMatrix& c, const EvmOptions& opts = {});
double saaty_ci_from_lambda(double lambda_max, std::size_t n);

double consistency_ratio(const PCMatrix& c, const RITable& ri,
                         const EvmOptions& opts = {});

// Uniformly random reciprocal matrix over the discrete scale
// {1/9, ..., 1/2, 1, 2, ..., 9}, one independent draw per upper entry.
PCMatrix random_saaty_matrix(std::size_t n, std::uint64_t seed);

// Mean CI over `samples` random_saaty_matrix draws; sample s uses seed
// derive_seed(seed, s). Requires n >= 3 and samples >= 1.
double estimate_ri(std::size_t n, std::size_t samples, std::uint64_t seed,
                   const EvmOptions& opts = {});

// min{|1 - c_ij/(c_ik c_kj)|, |1 - c_ik c_kj/c_ij|}; 0-based indices.
double koczkodaj_local(const PCMatrix& c, std::size_t i, std::size_t k, std::size_t j);

// Maximum local value over all triads (requires n > 2). Reciprocity makes the
// local value independent of the triad's orientation, so each unordered
// triple a < b < c is scanned once as (i, k, j) = (a, b, c). The returned
// triad is the lexicographically first maximizer.
Triad koczkodaj_ki(const PCMatrix& c);

// Everything above for one matrix.
InconsistencyReport analyze_inconsistency(const PCMatrix& c,
                                          const RITable& ri = RITable::defaults(),
                                          const EvmOptions& opts = {});

}  // namespace pcrank
