// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Tolerances and time limits are fixed here and never loosened.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pcrank/bounds.hpp"
#include "pcrank/inconsistency.hpp"
#include "pcrank/matrix.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/priority.hpp"
#include "pcrank/random.hpp"
#include "pcrank/similarity.hpp"

namespace {

using namespace pcrank;
using Clock = std::chrono::steady_clock;

constexpr double kExampleTol = 5e-4;
constexpr double kConsistentTol = 1e-9;
constexpr double kOracleTol = 1e-8;
constexpr double kUnitDMdTol = 1e-7;
constexpr double kSpearmanMin = 0.95;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

PCMatrix example_matrix() {
  const std::vector<double> upper = {0.5, 2.0, 5.0, 4.0, 4.0, 5.0};
  return build_matrix(upper, 4);
}

Outcome example_rankings() {
  const PCMatrix c = example_matrix();
  const auto t0 = Clock::now();
  const EvmResult ev = evm(c);
  const PriorityVector gm = gmm(c);
  const double elapsed = seconds_since(t0);

  const double want_ev[] = {0.282, 0.474, 0.179, 0.065};
  const double want_gm[] = {0.294, 0.468, 0.175, 0.062};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(ev.weights[i] - want_ev[i]));
    worst = std::max(worst, std::abs(gm[i] - want_gm[i]));
  }
  return {worst <= kExampleTol && elapsed < 1e-3,
          fmt("max deviation %.2e", worst) + fmt(", %.1f us", elapsed * 1e6)};
}

Outcome consistent_agreement() {
  const auto t0 = Clock::now();
  double worst_w = 0.0, worst_ki = 0.0, worst_ci = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::size_t n = 3 + s % 6;
    const PriorityVector w = random_weight_vector(n, WeightMode::uniform01, derive_seed(101, s));
    const PCMatrix c = induced_matrix(w);
    const PriorityVector ev = evm(c).weights;
    const PriorityVector gm = gmm(c);
    for (std::size_t i = 0; i < n; ++i) worst_w = std::max(worst_w, std::abs(ev[i] - gm[i]));
    worst_ki = std::max(worst_ki, koczkodaj_ki(c).local_ki);
    worst_ci = std::max(worst_ci, std::abs(saaty_ci(c)));
  }
  const double elapsed = seconds_since(t0);
  const bool ok = worst_w <= kConsistentTol && worst_ki <= kConsistentTol &&
                  worst_ci <= kConsistentTol && elapsed < 10.0;
  return {ok, fmt("max |ev-gm| %.2e", worst_w) + fmt(", max KI %.2e", worst_ki) +
                  fmt(", max CI %.2e", worst_ci) + fmt(", %.2f s", elapsed)};
}

Outcome eigen_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-std::log(9.0), std::log(9.0));
  double worst_lambda = 0.0, worst_vec = 0.0;
  for (int s = 0; s < 500; ++s) {
    const std::size_t n = 3 + s % 2;
    std::vector<double> upper(upper_triangle_size(n));
    for (double& v : upper) v = std::exp(u(rng));
    const PCMatrix c = build_matrix(upper, n);
    const EvmResult ev = evm(c);
    const oracle::EigenPair ref = oracle::perron_pair(c);
    worst_lambda = std::max(worst_lambda, std::abs(ev.lambda_max - ref.lambda));
    for (std::size_t i = 0; i < n; ++i) worst_vec = std::max(worst_vec, std::abs(ev.weights[i] - ref.vector[i]));
  }
  const double elapsed = seconds_since(t0);
  return {worst_lambda <= kOracleTol && worst_vec <= kOracleTol && elapsed < 10.0,
          fmt("max |dlambda| %.2e", worst_lambda) + fmt(", max |dw| %.2e", worst_vec) +
              fmt(", %.2f s", elapsed)};
}

// Generated corpus shared by the chain and distance criteria: d over
// 1.0..10.0 step 0.25, n over 3..8, both factor modes.
struct Corpus {
  std::vector<BoundCheckReport> reports;
  std::vector<char> ratio_ok;
  double seconds = 0.0;
};

Corpus build_corpus() {
  Corpus corpus;
  const auto t0 = Clock::now();
  const std::vector<double> grid = ExperimentConfig::default_d_grid();
  const std::size_t per_cell = 50;
  std::uint64_t index = 0;
  for (std::size_t n = 3; n <= 8; ++n) {
    for (double d : grid) {
      for (std::size_t s = 0; s < per_cell; ++s, ++index) {
        GeneratorConfig gen;
        gen.n = n;
        gen.d = d;
        gen.factor_mode = s % 2 ? FactorMode::loguniform : FactorMode::uniform;
        gen.weight_mode = s % 4 < 2 ? WeightMode::uniform01 : WeightMode::loguniform_scale;
        const PCMatrix c = generate_matrix(gen, derive_seed(303, index));
        const BoundEnvelope env = envelope(c);
        const PriorityVector ev = evm(c).weights;
        const PriorityVector gm = gmm(c);
        corpus.reports.push_back(check_bounds(env, ev, gm));
        corpus.ratio_ok.push_back(lemma1_check(env, ev, gm) ? 1 : 0);
      }
    }
  }
  corpus.seconds = seconds_since(t0);
  return corpus;
}

Outcome compatibility_chain(const Corpus& corpus) {
  std::size_t violations = 0;
  double min_slack = INFINITY;
  for (const BoundCheckReport& r : corpus.reports) {
    violations += r.chain_ok ? 0 : 1;
    min_slack = std::min({min_slack, r.slack.compat_low, r.slack.chain, r.slack.compat_high});
  }
  const bool ok = corpus.reports.size() >= 10000 && violations == 0 && corpus.seconds < 120.0;
  return {ok, std::to_string(corpus.reports.size()) + " matrices, " + std::to_string(violations) +
                  " violations" + fmt(", min slack %.2e", min_slack) + fmt(", %.2f s", corpus.seconds)};
}

Outcome distance_bounds(const Corpus& corpus) {
  std::size_t md = 0, mean = 0, cheb = 0, ratio = 0;
  for (std::size_t k = 0; k < corpus.reports.size(); ++k) {
    const BoundCheckReport& r = corpus.reports[k];
    md += r.md_ok ? 0 : 1;
    mean += r.mean_ok ? 0 : 1;
    cheb += r.cheb_ok ? 0 : 1;
    ratio += corpus.ratio_ok[k] ? 0 : 1;
  }
  const bool ok = corpus.reports.size() >= 10000 && md + mean + cheb + ratio == 0;
  return {ok, "violations: manhattan " + std::to_string(md) + ", mean " + std::to_string(mean) +
                  ", chebyshev " + std::to_string(cheb) + ", ratio " + std::to_string(ratio)};
}

ExperimentConfig desk_experiment() {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.generator.n = 4;
  cfg.d_grid = ExperimentConfig::make_grid(1.0, 10.0, 0.25);
  cfg.samples_per_d = 200;
  cfg.master_seed = 20240101;
  return cfg;
}

std::string experiment_csv;

Outcome desk_reproduction() {
  const ExperimentConfig cfg = desk_experiment();
  const auto t0 = Clock::now();
  const std::vector<ExperimentRecord> records = run_experiment(cfg, 1);
  experiment_csv = to_csv(cfg, records);
  const ExperimentSummary s = summarize(records);
  const double elapsed = seconds_since(t0);
  const bool ok = s.total == 37 * 200 && s.nonconverged == 0 && s.violations == 0 &&
                  s.spearman_d_mean_ki > kSpearmanMin && s.max_md_at_unit_d <= kUnitDMdTol &&
                  elapsed < 300.0;
  return {ok, std::to_string(s.total) + " rows, " + std::to_string(s.violations) + " violations, " +
                  std::to_string(s.nonconverged) + " nonconverged" +
                  fmt(", spearman %.4f", s.spearman_d_mean_ki) +
                  fmt(", max MD at d=1 %.2e", s.max_md_at_unit_d) + fmt(", %.2f s", elapsed)};
}

Outcome index_ordering() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-std::log(9.0), std::log(9.0));
  auto random_matrix = [&](std::size_t n) {
    std::vector<double> upper(upper_triangle_size(n));
    for (double& v : upper) v = std::exp(u(rng));
    return build_matrix(upper, n);
  };
  std::size_t violations = 0;
  for (int s = 0; s < 10000; ++s) {
    const std::size_t n = 3 + s % 6;
    const PCMatrix a = random_matrix(n);
    const PCMatrix b = random_matrix(n);
    const CompatibilityReport r = compatibility(a, b);
    const double comp = comp_matrices(a, b);
    const bool ok = r.comp_lower <= comp + bound_tolerance(comp) &&
                    comp <= r.comp_upper + bound_tolerance(r.comp_upper) &&
                    r.comp_upper <= r.comp_max + bound_tolerance(r.comp_max);
    violations += ok ? 0 : 1;
  }
  return {violations == 0, "10000 pairs, " + std::to_string(violations) + " violations"};
}

Outcome determinism() {
  const ExperimentConfig cfg = desk_experiment();
  const std::string again = to_csv(cfg, run_experiment(cfg, 1));
  const std::string threaded = to_csv(cfg, run_experiment(cfg, 4));
  const bool ok = !experiment_csv.empty() && again == experiment_csv && threaded == experiment_csv;
  return {ok, std::to_string(experiment_csv.size()) + " bytes; repeat " +
                  (again == experiment_csv ? "identical" : "differs") + ", 4 threads " +
                  (threaded == experiment_csv ? "identical" : "differs")};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  report(1, "example-rankings", example_rankings);
  report(2, "consistent-agreement", consistent_agreement);
  report(3, "eigen-oracle", eigen_oracle);
  Corpus corpus;
  try {
    corpus = build_corpus();
  } catch (const std::exception& e) {
    std::printf("corpus generation failed: %s\n", e.what());
  }
  report(4, "compatibility-chain", [&] { return compatibility_chain(corpus); });
  report(5, "distance-bounds", [&] { return distance_bounds(corpus); });
  report(6, "desk-experiment", desk_reproduction);
  report(7, "index-ordering", index_ordering);
  report(8, "determinism", determinism);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
