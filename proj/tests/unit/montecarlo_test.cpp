#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcrank/errors.hpp"
#include "pcrank/inconsistency.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/random.hpp"

namespace pcrank {
namespace {

PCMatrix ones(std::size_t n) {
  const std::vector<double> upper(upper_triangle_size(n), 1.0);
  return build_matrix(upper, n);
}

// Kolmogorov-Smirnov statistic of `xs` against the CDF `cdf`.
template <typename Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    worst = std::max({worst, std::abs(f - i / m), std::abs((i + 1) / m - f)});
  }
  return worst;
}

std::vector<double> disturbance_draws(FactorMode mode, double d) {
  // 1000 matrices of order 15 give 105000 independent factors.
  std::vector<double> draws;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::vector<double> up = disturb(ones(15), d, mode, false, derive_seed(7, s)).upper_triangle();
    draws.insert(draws.end(), up.begin(), up.end());
  }
  return draws;
}

TEST(RandomWeights, DeterministicAndNormalized) {
  for (WeightMode mode : {WeightMode::uniform01, WeightMode::loguniform_scale}) {
    const PriorityVector a = random_weight_vector(7, mode, 99);
    const PriorityVector b = random_weight_vector(7, mode, 99);
    const PriorityVector c = random_weight_vector(7, mode, 100);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    EXPECT_FALSE(std::equal(a.begin(), a.end(), c.begin()));
    double sum = 0.0;
    for (double w : a) {
      EXPECT_GT(w, 0.0);
      sum += w;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_THROW(random_weight_vector(1, WeightMode::uniform01, 1), DomainError);
}

TEST(RandomWeights, EmpiricalMeanIsOneOverN) {
  const std::size_t n = 5;
  const int draws = 20000;
  std::vector<double> first(draws);
  for (int s = 0; s < draws; ++s) first[s] = random_weight_vector(n, WeightMode::uniform01, derive_seed(5, s))[0];
  double mean = 0.0;
  for (double x : first) mean += x;
  mean /= draws;
  double var = 0.0;
  for (double x : first) var += (x - mean) * (x - mean);
  var /= draws - 1;
  EXPECT_NEAR(mean, 1.0 / n, 3.0 * std::sqrt(var / draws));
}

TEST(Disturb, UnitDisturbanceLeavesMatrixUnchanged) {
  const PCMatrix c = induced_matrix(random_weight_vector(6, WeightMode::uniform01, 3));
  EXPECT_EQ(disturb(c, 1.0, FactorMode::uniform, false, 11), c);
  EXPECT_EQ(disturb(c, 1.0, FactorMode::loguniform, true, 11), c);
  EXPECT_THROW(disturb(c, 0.5, FactorMode::uniform, false, 11), DomainError);
}

TEST(Disturb, ResultIsReciprocalAndInRange) {
  const PCMatrix c = disturb(ones(8), 3.0, FactorMode::uniform, false, 12);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(c(i, i), 1.0);
    for (std::size_t j = i + 1; j < 8; ++j) {
      EXPECT_EQ(c(j, i), 1.0 / c(i, j));
      EXPECT_GE(c(j, i), 1.0 / 3.0 - 1e-15);
      EXPECT_GE(c(i, j), 1.0 / 3.0 - 1e-15);
      EXPECT_LE(c(i, j), 3.0 + 1e-15);
    }
  }
}

TEST(Disturb, ClampKeepsSaatyRange) {
  const PCMatrix base = induced_matrix(PriorityVector({0.9, 0.05, 0.05}));
  const PCMatrix c = disturb(base, 9.0, FactorMode::uniform, true, 13);
  for (double v : c.upper_triangle()) {
    EXPECT_GE(v, 1.0 / 9.0);
    EXPECT_LE(v, 9.0);
  }
}

TEST(Disturb, LogUniformFactorsPassKolmogorovSmirnov) {
  const double d = 4.0;
  const std::vector<double> draws = disturbance_draws(FactorMode::loguniform, d);
  ASSERT_GE(draws.size(), 100000u);
  const double ln_d = std::log(d);
  const double stat = ks_statistic(draws, [&](double x) { return (std::log(x) + ln_d) / (2.0 * ln_d); });
  // Critical value at the 0.01 level.
  EXPECT_LT(stat, 1.628 / std::sqrt(static_cast<double>(draws.size())));
}

TEST(Disturb, UniformFactorsPassKolmogorovSmirnov) {
  const double d = 4.0;
  const std::vector<double> draws = disturbance_draws(FactorMode::uniform, d);
  const double stat = ks_statistic(draws, [&](double x) { return (x - 1.0 / d) / (d - 1.0 / d); });
  EXPECT_LT(stat, 1.628 / std::sqrt(static_cast<double>(draws.size())));
}

TEST(GenerateMatrix, DeterministicPerSeed) {
  GeneratorConfig cfg;
  cfg.n = 6;
  cfg.d = 5.0;
  EXPECT_EQ(generate_matrix(cfg, 77), generate_matrix(cfg, 77));
  EXPECT_NE(generate_matrix(cfg, 77), generate_matrix(cfg, 78));
  EXPECT_NE(sample_seed(1, 0, 0), sample_seed(1, 0, 1));
  EXPECT_NE(sample_seed(1, 0, 1), sample_seed(1, 1, 0));
}

TEST(Experiment, UnitDisturbanceGivesConsistentMatrices) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.d_grid = {1.0};
  cfg.samples_per_d = 50;
  for (const ExperimentRecord& r : run_experiment(cfg)) {
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.ki, 1e-9);
    EXPECT_LE(r.md, 1e-7);
    EXPECT_EQ(r.kendall, 0u);
  }
}

TEST(Experiment, IdenticalAcrossRunsAndThreadCounts) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.d_grid = ExperimentConfig::make_grid(1.0, 6.0, 0.5);
  cfg.samples_per_d = 20;
  cfg.master_seed = 2024;
  const std::string one = to_csv(cfg, run_experiment(cfg, 1));
  EXPECT_EQ(one, to_csv(cfg, run_experiment(cfg, 1)));
  EXPECT_EQ(one, to_csv(cfg, run_experiment(cfg, 3)));
  EXPECT_EQ(one, to_csv(cfg, run_experiment(cfg, 0)));
  cfg.master_seed = 2025;
  EXPECT_NE(one, to_csv(cfg, run_experiment(cfg, 1)));
}

TEST(Experiment, NoViolationsAndInconsistencyGrowsWithD) {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.samples_per_d = 60;
  const std::vector<ExperimentRecord> records = run_experiment(cfg);
  ASSERT_EQ(records.size(), cfg.d_grid.size() * cfg.samples_per_d);
  for (std::size_t k = 0; k < records.size(); ++k) {
    EXPECT_EQ(records[k].d_index, k / cfg.samples_per_d);
    EXPECT_EQ(records[k].sample_index, k % cfg.samples_per_d);
  }
  const ExperimentSummary s = summarize(records);
  EXPECT_EQ(s.total, records.size());
  EXPECT_EQ(s.nonconverged, 0u);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GE(s.min_slack_compat_high, -1e-9);
  EXPECT_GE(s.min_slack_md_high, -1e-9);
  EXPECT_GT(s.spearman_d_mean_ki, 0.9);
  EXPECT_LE(s.max_md_at_unit_d, 1e-7);
  EXPECT_EQ(s.per_d.size(), cfg.d_grid.size());
}

TEST(Summary, RejectsEmptyInput) {
  EXPECT_THROW(summarize({}), ArgumentError);
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {1, 3, 2}), 0.5);
  // Ties take average ranks: x ranks 1.5,1.5,3 vs 1,2,3.
  EXPECT_NEAR(spearman({1, 1, 2}, {1, 2, 3}), 0.8660254037844386, 1e-12);
  EXPECT_THROW(spearman({1}, {1}), ArgumentError);
  EXPECT_THROW(spearman({1, 2}, {1, 2, 3}), ShapeError);
}

TEST(Config, Defaults) {
  const ExperimentConfig cfg;
  ASSERT_EQ(cfg.d_grid.size(), 37u);
  EXPECT_DOUBLE_EQ(cfg.d_grid.front(), 1.0);
  EXPECT_DOUBLE_EQ(cfg.d_grid[1], 1.25);
  EXPECT_DOUBLE_EQ(cfg.d_grid.back(), 10.0);
  EXPECT_EQ(cfg.samples_per_d, 200u);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesKeys) {
  const ExperimentConfig cfg = parse_experiment_config(
      "# comment\n"
      "n = 6\n"
      "samples = 10\n"
      "seed = 42\n"
      "factor_mode = loguniform\n"
      "weight_mode = loguniform\n"
      "clamp = true\n"
      "d_min = 1\n"
      "d_max = 2\n"
      "d_step = 0.5\n");
  EXPECT_EQ(cfg.n, 6u);
  EXPECT_EQ(cfg.samples_per_d, 10u);
  EXPECT_EQ(cfg.master_seed, 42u);
  EXPECT_EQ(cfg.generator.factor_mode, FactorMode::loguniform);
  EXPECT_EQ(cfg.generator.weight_mode, WeightMode::loguniform_scale);
  EXPECT_TRUE(cfg.generator.clamp_to_scale);
  EXPECT_EQ(cfg.d_grid, (std::vector<double>{1.0, 1.5, 2.0}));

  const ExperimentConfig listed = parse_experiment_config("d_grid = 1, 3, 9\n");
  EXPECT_EQ(listed.d_grid, (std::vector<double>{1.0, 3.0, 9.0}));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_experiment_config("n 4\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("colour = red\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("n = four\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("d_grid = 1,2\nd_max = 3\n"), ArgumentError);
  EXPECT_THROW(parse_experiment_config("factor_mode = gaussian\n"), ArgumentError);
  EXPECT_THROW(parse_experiment_config("n = 2\n"), DomainError);
  EXPECT_THROW(parse_experiment_config("d_grid = 0.5, 2\n"), DomainError);
  EXPECT_THROW(load_experiment_config("/nonexistent/pcrank.cfg"), std::ios_base::failure);
}

TEST(Csv, HeaderAndColumns) {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.d_grid = {1.0, 2.0};
  cfg.samples_per_d = 3;
  cfg.master_seed = 9;
  const std::string csv = to_csv(cfg, run_experiment(cfg));
  std::istringstream in(csv);
  std::string header, columns, row;
  std::getline(in, header);
  std::getline(in, columns);
  EXPECT_EQ(header, "# pcrank-experiment v1; n=3; factor_mode=uniform; weight_mode=uniform01; clamp=0; master_seed=9");
  EXPECT_EQ(columns.rfind("d,sample,seed,ci,cr,ki,kappa,md,cheb,kendall,comp,comp_lower,comp_upper,comp_max,", 0), 0u);
  const auto ncols = std::count(columns.begin(), columns.end(), ',');
  int rows = 0;
  while (std::getline(in, row)) {
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), ncols);
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}

}  // namespace
}  // namespace pcrank
