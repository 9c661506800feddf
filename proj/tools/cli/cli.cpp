#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "pcrank/bounds.hpp"
#include "pcrank/errors.hpp"
#include "pcrank/format.hpp"
#include "pcrank/inconsistency.hpp"
#include "pcrank/matrix.hpp"
#include "pcrank/montecarlo.hpp"
#include "pcrank/priority.hpp"
#include "pcrank/similarity.hpp"

namespace pcrank::cli {

namespace {

using nlohmann::json;

// Human-readable numbers: fixed, 6 decimals, locale independent.
std::string fx(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::string vec_text(const PriorityVector& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += fx(w[i]);
  }
  return s + "]";
}

json vec_json(const PriorityVector& w) { return json(std::vector<double>(w.begin(), w.end())); }

const char* ok(bool b) { return b ? "ok" : "VIOLATED"; }

json bounds_json(const BoundCheckReport& r, bool ratio_ok) {
  json j = json::parse(to_json(r));
  j["lemma1_ok"] = ratio_ok;
  return j;
}

void print_bounds_text(std::ostream& out, const BoundCheckReport& r, bool ratio_ok) {
  const BoundEnvelope& e = r.envelope;
  const ObservedDistances& o = r.observed;
  out << "bounds (kappa = 1 - KI = " << fx(e.kappa) << ")"
      << (e.uninformative ? "  [uninformative: kappa < 1e-6]" : "") << '\n';
  out << "  compatibility chain  " << fx(e.compat_low) << " <= " << fx(o.comp_lower) << " <= "
      << fx(o.comp) << " <= " << fx(o.comp_upper) << " <= " << fx(o.comp_max) << " <= "
      << fx(e.compat_high) << "  " << ok(r.chain_ok) << '\n';
  out << "  manhattan            " << fx(e.md_low) << " <= " << fx(o.md) << " <= "
      << fx(e.md_high) << "  " << ok(r.md_ok) << '\n';
  out << "  mean distance        " << fx(e.mean_low) << " <= " << fx(o.mean_md) << " <= "
      << fx(e.mean_high) << "  " << ok(r.mean_ok) << '\n';
  out << "  chebyshev            " << fx(o.cheb) << " <= " << fx(e.cheb_high) << "  "
      << ok(r.cheb_ok) << '\n';
  out << "  ratio w_ev/w_gm      within [" << fx(e.compat_low) << ", " << fx(e.compat_high)
      << "]  " << ok(ratio_ok) << '\n';
}

int cmd_rank(const std::string& path, const std::string& method, bool as_json,
             std::ostream& out) {
  const PCMatrix c = read_matrix_file(path);
  const std::size_t n = c.order();
  const bool want_ev = method != "gmm";
  const bool want_gm = method != "evm";

  std::optional<EvmResult> ev;
  std::optional<PriorityVector> gm;
  if (want_ev) ev = evm(c);
  if (want_gm) gm = gmm(c);

  std::optional<BoundCheckReport> report;
  bool ratio_ok = false;
  if (ev && gm && n > 2) {
    const BoundEnvelope env = envelope(c);
    report = check_bounds(env, ev->weights, *gm);
    ratio_ok = lemma1_check(env, ev->weights, *gm);
  }

  if (as_json) {
    json j;
    j["n"] = n;
    j["method"] = method;
    if (ev) {
      j["evm"] = {{"weights", vec_json(ev->weights)},
                  {"lambda_max", ev->lambda_max},
                  {"iterations", ev->iterations},
                  {"residual", ev->residual}};
    }
    if (gm) j["gmm"] = {{"weights", vec_json(*gm)}};
    if (ev && gm) {
      const CompatibilityReport cr = comp_vectors(ev->weights, *gm);
      j["distances"] = {{"md", manhattan(ev->weights, *gm)},
                        {"cheb", chebyshev(ev->weights, *gm)},
                        {"kendall", kendall_distance(ev->weights, *gm)},
                        {"comp", cr.comp},
                        {"comp_lower", cr.comp_lower},
                        {"comp_upper", cr.comp_upper},
                        {"comp_max", cr.comp_max}};
      j["bounds"] = report ? bounds_json(*report, ratio_ok) : json(nullptr);
    }
    out << j.dump(2) << '\n';
    return kOk;
  }

  if (ev && gm) {
    out << "alternative  evm        gmm\n";
    for (std::size_t i = 0; i < n; ++i) {
      out << std::left << std::setw(13) << ("a" + std::to_string(i + 1)) << fx(ev->weights[i])
          << "   " << fx((*gm)[i]) << '\n';
    }
    out << "lambda_max: " << fx(ev->lambda_max) << '\n';
    const CompatibilityReport cr = comp_vectors(ev->weights, *gm);
    out << "manhattan: " << fx(manhattan(ev->weights, *gm)) << '\n'
        << "chebyshev: " << fx(chebyshev(ev->weights, *gm)) << '\n'
        << "kendall: " << kendall_distance(ev->weights, *gm) << '\n'
        << "comp: " << fx(cr.comp) << "  comp_lower: " << fx(cr.comp_lower)
        << "  comp_upper: " << fx(cr.comp_upper) << "  comp_max: " << fx(cr.comp_max) << '\n';
    if (report) {
      print_bounds_text(out, *report, ratio_ok);
    } else {
      out << "bounds: undefined (n<=2)\n";
    }
  } else if (ev) {
    out << "evm: " << vec_text(ev->weights) << '\n'
        << "lambda_max: " << fx(ev->lambda_max) << '\n';
  } else {
    out << "gmm: " << vec_text(*gm) << '\n';
  }
  return kOk;
}

int cmd_check(const std::string& path, const std::string& ri_path, bool as_json,
              std::ostream& out) {
  const PCMatrix c = read_matrix_file(path);
  const RITable ri = ri_path.empty() ? RITable::defaults() : RITable::load(ri_path);
  const InconsistencyReport rep = analyze_inconsistency(c, ri);
  const std::optional<bool> acceptable =
      rep.cr ? std::optional<bool>(*rep.cr <= 0.1) : std::nullopt;

  if (as_json) {
    json j;
    j["n"] = c.order();
    j["lambda_max"] = rep.lambda_max;
    j["ci"] = rep.ci;
    j["cr"] = rep.cr ? json(*rep.cr) : json(nullptr);
    j["acceptable"] = acceptable ? json(*acceptable) : json(nullptr);
    j["ki"] = rep.ki ? json(*rep.ki) : json(nullptr);
    if (rep.worst_triad) {
      const Triad& t = *rep.worst_triad;
      j["worst_triad"] = {{"i", t.i + 1}, {"k", t.k + 1}, {"j", t.j + 1}, {"local_ki", t.local_ki}};
    } else {
      j["worst_triad"] = nullptr;
    }
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << "n: " << c.order() << '\n'
      << "lambda_max: " << fx(rep.lambda_max) << '\n'
      << "CI: " << fx(rep.ci) << '\n';
  if (rep.cr) {
    out << "CR: " << fx(*rep.cr) << " (" << (*rep.cr <= 0.1 ? "acceptable" : "not acceptable")
        << ", threshold 0.1)\n";
  } else {
    out << "CR: undefined (no RI for n=" << c.order() << ")\n";
  }
  if (rep.ki) {
    const Triad& t = *rep.worst_triad;
    out << "KI: " << fx(*rep.ki) << '\n'
        << "worst triad (i,k,j): (" << t.i + 1 << "," << t.k + 1 << "," << t.j + 1 << ")\n";
  } else {
    out << "KI: undefined (n<=2)\n";
  }
  return kOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, bool as_json,
                std::ostream& out) {
  const PCMatrix a = read_matrix_file(path_a);
  const PCMatrix b = read_matrix_file(path_b);
  const CompatibilityReport r = compatibility(a, b);
  const double comp = comp_matrices(a, b);
  auto le = [](double x, double y) { return x <= y + 1e-12 * std::max(1.0, std::abs(y)); };
  const bool chain = le(r.comp_lower, comp) && le(comp, r.comp_upper) && le(r.comp_upper, r.comp_max);

  if (as_json) {
    json j = {{"n", a.order()},
              {"comp", comp},
              {"comp_lower", r.comp_lower},
              {"comp_upper", r.comp_upper},
              {"comp_max", r.comp_max},
              {"chain_ok", chain}};
    out << j.dump(2) << '\n';
  } else {
    out << "comp: " << fx(comp) << '\n'
        << "comp_lower: " << fx(r.comp_lower) << '\n'
        << "comp_upper: " << fx(r.comp_upper) << '\n'
        << "comp_max: " << fx(r.comp_max) << '\n'
        << "ordering comp_lower <= comp <= comp_upper <= comp_max: " << ok(chain) << '\n';
  }
  return chain ? kOk : kNumericalError;
}

int cmd_gen(const GeneratorConfig& cfg, std::uint64_t seed, std::ostream& out) {
  if (cfg.n < 3) throw DomainError("n must be at least 3");
  out << serialize_matrix(generate_matrix(cfg, seed));
  return kOk;
}

struct ExperimentFlags {
  std::string config_path;
  std::string output_path;
  std::size_t n = 4;
  double d_min = 1.0;
  double d_max = 10.0;
  double d_step = 0.25;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::string factor_mode = "uniform";
  std::string weight_mode = "uniform01";
  bool clamp = false;
  unsigned threads = 1;
};

int cmd_experiment(const ExperimentFlags& f, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    cfg = load_experiment_config(f.config_path);
  } else {
    cfg.n = f.n;
    cfg.d_grid = ExperimentConfig::make_grid(f.d_min, f.d_max, f.d_step);
    cfg.samples_per_d = f.samples;
    cfg.master_seed = f.seed;
    cfg.generator.factor_mode = parse_factor_mode(f.factor_mode);
    cfg.generator.weight_mode = parse_weight_mode(f.weight_mode);
    cfg.generator.clamp_to_scale = f.clamp;
    cfg.generator.n = cfg.n;
    cfg.validate();
  }

  const std::vector<ExperimentRecord> records = run_experiment(cfg, f.threads);
  if (f.output_path.empty() || f.output_path == "-") {
    write_csv(out, cfg, records);
  } else {
    std::ofstream file(f.output_path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot write '" + f.output_path + "'");
    write_csv(file, cfg, records);
    if (!file) throw std::ios_base::failure("write to '" + f.output_path + "' failed");
  }
  const ExperimentSummary summary = summarize(records);
  write_summary(err, summary);
  return summary.violations == 0 ? kOk : kNumericalError;
}

int cmd_estimate_ri(std::size_t n, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  out << "RI(" << n << ") ~= " << fx(estimate_ri(n, samples, seed)) << "  (" << samples
      << " samples, seed " << seed << ")\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Priority vectors, inconsistency and EVM/GMM divergence bounds for "
               "pairwise comparison matrices",
               "pcrank"};
  app.require_subcommand(1);

  std::string matrix_path, method = "both", ri_path, path_a, path_b;
  bool as_json = false;

  auto* rank = app.add_subcommand("rank", "Derive priority vectors (EVM, GMM or both)");
  rank->add_option("-m,--matrix", matrix_path, "Matrix file")->required();
  rank->add_option("--method", method, "evm, gmm or both")
      ->check(CLI::IsMember({"evm", "gmm", "both"}));
  rank->add_flag("--json", as_json, "Full-precision JSON output");

  auto* check = app.add_subcommand("check", "Report CI, CR and Koczkodaj's KI");
  check->add_option("-m,--matrix", matrix_path, "Matrix file")->required();
  check->add_option("--ri", ri_path, "RI table file ('n = value' lines)");
  check->add_flag("--json", as_json, "Full-precision JSON output");

  auto* compare = app.add_subcommand("compare", "Compatibility indices of two matrices");
  compare->add_option("-a", path_a, "First matrix file")->required();
  compare->add_option("-b", path_b, "Second matrix file")->required();
  compare->add_flag("--json", as_json, "Full-precision JSON output");

  GeneratorConfig gen;
  std::uint64_t gen_seed = 0;
  std::string gen_factor = "uniform", gen_weight = "uniform01";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a disturbed consistent matrix");
  gen_cmd->add_option("-n", gen.n, "Matrix order (>= 3)")->required();
  gen_cmd->add_option("-d", gen.d, "Disturbance level (>= 1)")->required();
  gen_cmd->add_option("--seed", gen_seed, "Random seed")->required();
  gen_cmd->add_option("--factor-mode", gen_factor, "uniform or loguniform")
      ->check(CLI::IsMember({"uniform", "loguniform"}));
  gen_cmd->add_option("--weight-mode", gen_weight, "uniform01 or loguniform")
      ->check(CLI::IsMember({"uniform01", "loguniform", "loguniform_scale"}));
  gen_cmd->add_flag("--clamp", gen.clamp_to_scale, "Clamp entries to [1/9, 9]");

  ExperimentFlags ex;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo bound verification run");
  auto* cfg_opt = experiment->add_option("--config", ex.config_path, "key=value config file");
  const std::vector<CLI::Option*> ex_flags = {
      experiment->add_option("-n", ex.n, "Matrix order (>= 3)"),
      experiment->add_option("--d-min", ex.d_min, "First disturbance level"),
      experiment->add_option("--d-max", ex.d_max, "Last disturbance level"),
      experiment->add_option("--d-step", ex.d_step, "Grid step"),
      experiment->add_option("--samples", ex.samples, "Samples per disturbance level"),
      experiment->add_option("--seed", ex.seed, "Master seed"),
      experiment->add_option("--factor-mode", ex.factor_mode, "uniform or loguniform")
          ->check(CLI::IsMember({"uniform", "loguniform"})),
      experiment->add_option("--weight-mode", ex.weight_mode, "uniform01 or loguniform")
          ->check(CLI::IsMember({"uniform01", "loguniform", "loguniform_scale"})),
      experiment->add_flag("--clamp", ex.clamp, "Clamp entries to [1/9, 9]")};
  for (CLI::Option* opt : ex_flags) opt->excludes(cfg_opt);
  experiment->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");
  experiment->add_option("-o,--output", ex.output_path, "CSV output file (default stdout)");

  std::size_t ri_n = 0, ri_samples = 0;
  std::uint64_t ri_seed = 0;
  auto* est = app.add_subcommand("estimate-ri", "Estimate RI(n) from random Saaty-scale matrices");
  est->add_option("-n", ri_n, "Matrix order (>= 3)")->required();
  est->add_option("--samples", ri_samples, "Number of random matrices")->required();
  est->add_option("--seed", ri_seed, "Random seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*rank) return cmd_rank(matrix_path, method, as_json, out);
    if (*check) return cmd_check(matrix_path, ri_path, as_json, out);
    if (*compare) return cmd_compare(path_a, path_b, as_json, out);
    if (*gen_cmd) {
      gen.factor_mode = parse_factor_mode(gen_factor);
      gen.weight_mode = parse_weight_mode(gen_weight);
      return cmd_gen(gen, gen_seed, out);
    }
    if (*experiment) return cmd_experiment(ex, out, err);
    if (*est) return cmd_estimate_ri(ri_n, ri_samples, ri_seed, out);
  } catch (const ConvergenceError& e) {
    err << "pcrank: numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "pcrank: " << e.what() << '\n';
    return kInputError;
  } catch (const std::ios_base::failure& e) {
    err << "pcrank: " << e.what() << '\n';
    return kIoError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pcrank");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pcrank::cli
