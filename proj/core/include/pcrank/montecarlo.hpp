#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pcrank/matrix.hpp"
#include "pcrank/priority.hpp"

namespace pcrank {

enum class WeightMode { uniform01, loguniform_scale };
enum class FactorMode { uniform, loguniform };

std::string_view to_string(WeightMode m);
std::string_view to_string(FactorMode m);
// Throw ArgumentError on unknown names. "loguniform" is accepted as an alias
// for loguniform_scale.
WeightMode parse_weight_mode(std::string_view s);
FactorMode parse_factor_mode(std::string_view s);

struct GeneratorConfig {
  std::size_t n = 4;
  double d = 1.0;
  WeightMode weight_mode = WeightMode::uniform01;
  FactorMode factor_mode = FactorMode::uniform;
  bool clamp_to_scale = false;  // clamp disturbed entries to [1/9, 9]
};

struct ExperimentConfig {
  std::size_t n = 4;
  std::vector<double> d_grid = default_d_grid();
  std::size_t samples_per_d = 200;
  std::uint64_t master_seed = 1;
  GeneratorConfig generator;  // n and d are taken from the fields above

  // 1.0, 1.25, ..., 10.0
  static std::vector<double> default_d_grid();
  // lo, lo + step, ... up to hi inclusive (within step * 1e-9).
  static std::vector<double> make_grid(double lo, double hi, double step);

  // Throws ArgumentError / DomainError describing the first invalid field.
  void validate() const;
};

// Flat "key = value" text: n, d_grid (comma separated) or d_min/d_max/d_step,
// samples_per_d, master_seed, weight_mode, factor_mode, clamp.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRecord {
  double d;
  std::size_t d_index;
  std::size_t sample_index;
  std::uint64_t seed;
  double ci;
  double cr;  // NaN when RI(n) is not tabulated
  double ki;
  double kappa;
  double md;
  double cheb;
  std::size_t kendall;
  double comp;
  double comp_lower;
  double comp_upper;
  double comp_max;
  bool chain_ok;
  bool md_ok;
  bool cheb_ok;
  bool mean_ok;
  bool lemma1_ok;
  bool converged;  // false: EVM failed; metrics are NaN and flags false
  double slack_compat_low;
  double slack_compat_high;
  double slack_md_high;
  double slack_cheb_high;
  double md_high;
  double compat_high;
};

// n >= 2 positive draws, normalized: uniform on (0, 1] or log-uniform on
// [1/9, 9].
PriorityVector random_weight_vector(std::size_t n, WeightMode mode, std::uint64_t seed);

// Multiplies each upper entry of `c` by an independent r in [1/d, d]
// (uniform, or exp(uniform on [-ln d, ln d])), optionally clamps the product
// to [1/9, 9], and rebuilds the lower triangle. d == 1 returns `c` unchanged.
PCMatrix disturb(const PCMatrix& c, double d, FactorMode mode, bool clamp,
                 std::uint64_t seed);

// One experiment matrix: weights from derive_seed(seed, 0), disturbance from
// derive_seed(seed, 1).
PCMatrix generate_matrix(const GeneratorConfig& cfg, std::uint64_t seed);

// Seed of sample `sample_index` at grid position `d_index`.
std::uint64_t sample_seed(std::uint64_t master_seed, std::size_t d_index,
                          std::size_t sample_index);

// Evaluates one generated matrix end to end.
ExperimentRecord evaluate_sample(const GeneratorConfig& gen, std::size_t d_index,
                                 std::size_t sample_index, std::uint64_t seed,
                                 const EvmOptions& opts = {});

// Records ordered by (d_index, sample_index). `threads` == 0 picks the
// hardware concurrency; the output does not depend on it.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg,
                                             unsigned threads = 1,
                                             const EvmOptions& opts = {});

struct DSummary {
  double d;
  std::size_t count;  // converged samples
  double mean_md, max_md;
  double mean_cheb, max_cheb;
  double mean_comp_upper, max_comp_upper;
  double mean_ci, mean_ki;
  double max_md_over_bound;  // largest md / md_high; small means a loose bound
};

struct ExperimentSummary {
  std::vector<DSummary> per_d;  // grid order
  std::size_t total;
  std::size_t nonconverged;
  std::size_t violations;  // converged rows with any flag false
  double min_slack_compat_low;
  double min_slack_compat_high;
  double min_slack_md_high;
  double min_slack_cheb_high;
  double max_md_over_bound;
  double spearman_d_mean_ki;
  double max_md_at_unit_d;  // max md over rows with d == 1; NaN if none
};

// Throws ArgumentError on empty input.
ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// CSV with the "# pcrank-experiment v1" header line and the fixed column row.
void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<ExperimentRecord>& records);
std::string to_csv(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& records);

void write_summary(std::ostream& out, const ExperimentSummary& summary);

}  // namespace pcrank
