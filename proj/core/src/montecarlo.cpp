#include "pcrank/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "pcrank/bounds.hpp"
#include "pcrank/errors.hpp"
#include "pcrank/format.hpp"
#include "pcrank/inconsistency.hpp"
#include "pcrank/random.hpp"
#include "pcrank/similarity.hpp"

namespace pcrank {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kScaleMin = 1.0 / 9.0;
constexpr double kScaleMax = 9.0;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no, std::string_view key) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("invalid value '" + std::string(s) + "' for " + std::string(key),
                     line_no, 1);
  }
  return value;
}

bool parse_bool(std::string_view s, std::size_t line_no) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ParseError("invalid boolean '" + std::string(s) + "'", line_no, 1);
}

}  // namespace

std::string_view to_string(WeightMode m) {
  return m == WeightMode::uniform01 ? "uniform01" : "loguniform_scale";
}

std::string_view to_string(FactorMode m) {
  return m == FactorMode::uniform ? "uniform" : "loguniform";
}

WeightMode parse_weight_mode(std::string_view s) {
  if (s == "uniform01") return WeightMode::uniform01;
  if (s == "loguniform_scale" || s == "loguniform") return WeightMode::loguniform_scale;
  throw ArgumentError("unknown weight mode '" + std::string(s) + "'");
}

FactorMode parse_factor_mode(std::string_view s) {
  if (s == "uniform") return FactorMode::uniform;
  if (s == "loguniform") return FactorMode::loguniform;
  throw ArgumentError("unknown factor mode '" + std::string(s) + "'");
}

std::vector<double> ExperimentConfig::default_d_grid() { return make_grid(1.0, 10.0, 0.25); }

std::vector<double> ExperimentConfig::make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw ArgumentError("invalid d grid range");
  }
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

void ExperimentConfig::validate() const {
  if (n < 3) throw DomainError("experiment order n must be at least 3");
  if (d_grid.empty()) throw ArgumentError("d grid must not be empty");
  for (double d : d_grid) {
    if (!(d >= 1.0) || !std::isfinite(d)) throw DomainError("every d must be finite and >= 1");
  }
  if (samples_per_d < 1) throw ArgumentError("samples_per_d must be at least 1");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  double d_min = 1.0, d_max = 10.0, d_step = 0.25;
  bool range_given = false;
  bool grid_given = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, 1);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));

    if (key == "n") {
      cfg.n = parse_number<std::size_t>(val, line_no, key);
    } else if (key == "samples_per_d" || key == "samples") {
      cfg.samples_per_d = parse_number<std::size_t>(val, line_no, key);
    } else if (key == "master_seed" || key == "seed") {
      cfg.master_seed = parse_number<std::uint64_t>(val, line_no, key);
    } else if (key == "weight_mode") {
      cfg.generator.weight_mode = parse_weight_mode(val);
    } else if (key == "factor_mode") {
      cfg.generator.factor_mode = parse_factor_mode(val);
    } else if (key == "clamp" || key == "clamp_to_scale") {
      cfg.generator.clamp_to_scale = parse_bool(val, line_no);
    } else if (key == "d_min") {
      d_min = parse_number<double>(val, line_no, key);
      range_given = true;
    } else if (key == "d_max") {
      d_max = parse_number<double>(val, line_no, key);
      range_given = true;
    } else if (key == "d_step") {
      d_step = parse_number<double>(val, line_no, key);
      range_given = true;
    } else if (key == "d_grid") {
      cfg.d_grid.clear();
      std::string_view rest = val;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        cfg.d_grid.push_back(parse_number<double>(trim(rest.substr(0, comma)), line_no, key));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      grid_given = true;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, 1);
    }
  }
  if (grid_given && range_given) {
    throw ArgumentError("give either d_grid or d_min/d_max/d_step, not both");
  }
  if (range_given) cfg.d_grid = ExperimentConfig::make_grid(d_min, d_max, d_step);
  cfg.generator.n = cfg.n;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_experiment_config(text);
}

PriorityVector random_weight_vector(std::size_t n, WeightMode mode, std::uint64_t seed) {
  if (n < 2) throw DomainError("weight vector needs n >= 2");
  Engine eng(seed);
  std::vector<double> w(n);
  const double log_lo = std::log(kScaleMin);
  const double log_hi = std::log(kScaleMax);
  for (double& x : w) {
    x = mode == WeightMode::uniform01 ? uniform01_open_low(eng)
                                      : std::exp(uniform_real(eng, log_lo, log_hi));
  }
  return PriorityVector(std::move(w));
}

PCMatrix disturb(const PCMatrix& c, double d, FactorMode mode, bool clamp,
                 std::uint64_t seed) {
  if (!(d >= 1.0) || !std::isfinite(d)) throw DomainError("disturbance d must be >= 1");
  if (d == 1.0) return c;
  Engine eng(seed);
  const double log_d = std::log(d);
  std::vector<double> upper = c.upper_triangle();
  for (double& v : upper) {
    const double r = mode == FactorMode::uniform ? uniform_real(eng, 1.0 / d, d)
                                                 : std::exp(uniform_real(eng, -log_d, log_d));
    v *= r;
    if (clamp) v = std::clamp(v, kScaleMin, kScaleMax);
  }
  return PCMatrix::from_upper(upper, c.order());
}

PCMatrix generate_matrix(const GeneratorConfig& cfg, std::uint64_t seed) {
  const PriorityVector w = random_weight_vector(cfg.n, cfg.weight_mode, derive_seed(seed, 0));
  return disturb(induced_matrix(w), cfg.d, cfg.factor_mode, cfg.clamp_to_scale,
                 derive_seed(seed, 1));
}

std::uint64_t sample_seed(std::uint64_t master_seed, std::size_t d_index,
                          std::size_t sample_index) {
  return derive_seed(master_seed, d_index, sample_index);
}

ExperimentRecord evaluate_sample(const GeneratorConfig& gen, std::size_t d_index,
                                 std::size_t sample_index, std::uint64_t seed,
                                 const EvmOptions& opts) {
  ExperimentRecord rec{};
  rec.d = gen.d;
  rec.d_index = d_index;
  rec.sample_index = sample_index;
  rec.seed = seed;

  const PCMatrix c = generate_matrix(gen, seed);
  const std::size_t n = c.order();
  const Triad worst = koczkodaj_ki(c);
  rec.ki = worst.local_ki;
  const BoundEnvelope env = envelope_from_ki(rec.ki, n);
  rec.kappa = env.kappa;
  rec.md_high = env.md_high;
  rec.compat_high = env.compat_high;

  std::optional<EvmResult> ev;
  try {
    ev = evm(c, opts);
  } catch (const ConvergenceError&) {
    rec.converged = false;
    rec.ci = rec.cr = rec.md = rec.cheb = kNaN;
    rec.comp = rec.comp_lower = rec.comp_upper = rec.comp_max = kNaN;
    rec.slack_compat_low = rec.slack_compat_high = kNaN;
    rec.slack_md_high = rec.slack_cheb_high = kNaN;
    return rec;
  }
  rec.converged = true;
  const PriorityVector w_gm = gmm(c);

  rec.ci = saaty_ci_from_lambda(ev->lambda_max, n);
  const RITable ri = RITable::defaults();
  rec.cr = ri.contains(n) ? rec.ci / ri.at(n) : kNaN;

  const BoundCheckReport report = check_bounds(env, ev->weights, w_gm);
  rec.md = report.observed.md;
  rec.cheb = report.observed.cheb;
  rec.comp = report.observed.comp;
  rec.comp_lower = report.observed.comp_lower;
  rec.comp_upper = report.observed.comp_upper;
  rec.comp_max = report.observed.comp_max;
  rec.chain_ok = report.chain_ok;
  rec.md_ok = report.md_ok;
  rec.cheb_ok = report.cheb_ok;
  rec.mean_ok = report.mean_ok;
  rec.lemma1_ok = lemma1_check(env, ev->weights, w_gm);
  rec.kendall = kendall_distance(ev->weights, w_gm);
  rec.slack_compat_low = report.slack.compat_low;
  rec.slack_compat_high = report.slack.compat_high;
  rec.slack_md_high = report.slack.md_high;
  rec.slack_cheb_high = report.slack.cheb_high;
  return rec;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg, unsigned threads,
                                             const EvmOptions& opts) {
  cfg.validate();
  const std::size_t per_d = cfg.samples_per_d;
  const std::size_t total = cfg.d_grid.size() * per_d;
  std::vector<ExperimentRecord> records(total);

  auto work = [&](std::size_t idx) {
    const std::size_t d_index = idx / per_d;
    const std::size_t s = idx % per_d;
    GeneratorConfig gen = cfg.generator;
    gen.n = cfg.n;
    gen.d = cfg.d_grid[d_index];
    records[idx] = evaluate_sample(gen, d_index, s, sample_seed(cfg.master_seed, d_index, s), opts);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || total < 2) {
    for (std::size_t idx = 0; idx < total; ++idx) work(idx);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) work(idx);
    });
  }
  for (auto& th : pool) th.join();
  return records;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("spearman: length mismatch");
  if (x.size() < 2) throw ArgumentError("spearman needs at least two points");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double nd = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / nd;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / nd;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw ArgumentError("cannot summarize an empty record list");
  ExperimentSummary s{};
  s.total = records.size();
  s.min_slack_compat_low = s.min_slack_compat_high = std::numeric_limits<double>::infinity();
  s.min_slack_md_high = s.min_slack_cheb_high = std::numeric_limits<double>::infinity();
  s.max_md_at_unit_d = kNaN;

  // Records arrive in (d_index, sample) order; group by d_index.
  std::size_t current = std::numeric_limits<std::size_t>::max();
  for (const ExperimentRecord& r : records) {
    if (s.per_d.empty() || r.d_index != current) {
      current = r.d_index;
      s.per_d.push_back(DSummary{r.d, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    }
    if (!r.converged) {
      ++s.nonconverged;
      continue;
    }
    if (!(r.chain_ok && r.md_ok && r.cheb_ok && r.mean_ok && r.lemma1_ok)) ++s.violations;

    DSummary& g = s.per_d.back();
    ++g.count;
    g.mean_md += r.md;
    g.mean_cheb += r.cheb;
    g.mean_comp_upper += r.comp_upper;
    g.mean_ci += r.ci;
    g.mean_ki += r.ki;
    g.max_md = std::max(g.max_md, r.md);
    g.max_cheb = std::max(g.max_cheb, r.cheb);
    g.max_comp_upper = std::max(g.max_comp_upper, r.comp_upper);
    if (r.md_high > 0.0) g.max_md_over_bound = std::max(g.max_md_over_bound, r.md / r.md_high);

    s.min_slack_compat_low = std::min(s.min_slack_compat_low, r.slack_compat_low);
    s.min_slack_compat_high = std::min(s.min_slack_compat_high, r.slack_compat_high);
    s.min_slack_md_high = std::min(s.min_slack_md_high, r.slack_md_high);
    s.min_slack_cheb_high = std::min(s.min_slack_cheb_high, r.slack_cheb_high);
    if (r.d == 1.0) {
      s.max_md_at_unit_d = std::isnan(s.max_md_at_unit_d) ? r.md : std::max(s.max_md_at_unit_d, r.md);
    }
  }

  std::vector<double> ds, kis;
  for (DSummary& g : s.per_d) {
    if (g.count == 0) {
      g.mean_md = g.mean_cheb = g.mean_comp_upper = g.mean_ci = g.mean_ki = kNaN;
      continue;
    }
    const double c = static_cast<double>(g.count);
    g.mean_md /= c;
    g.mean_cheb /= c;
    g.mean_comp_upper /= c;
    g.mean_ci /= c;
    g.mean_ki /= c;
    s.max_md_over_bound = std::max(s.max_md_over_bound, g.max_md_over_bound);
    ds.push_back(g.d);
    kis.push_back(g.mean_ki);
  }
  s.spearman_d_mean_ki = ds.size() >= 2 ? spearman(ds, kis) : kNaN;
  return s;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<ExperimentRecord>& records) {
  out << "# pcrank-experiment v1; n=" << cfg.n
      << "; factor_mode=" << to_string(cfg.generator.factor_mode)
      << "; weight_mode=" << to_string(cfg.generator.weight_mode)
      << "; clamp=" << (cfg.generator.clamp_to_scale ? 1 : 0)
      << "; master_seed=" << cfg.master_seed << '\n';
  out << "d,sample,seed,ci,cr,ki,kappa,md,cheb,kendall,comp,comp_lower,comp_upper,comp_max,"
         "chain_ok,md_ok,cheb_ok,mean_ok\n";
  std::string line;
  for (const ExperimentRecord& r : records) {
    line.clear();
    auto num = [&](double v) {
      line += format_double(v);
      line += ',';
    };
    num(r.d);
    line += std::to_string(r.sample_index) + ',' + std::to_string(r.seed) + ',';
    num(r.ci);
    num(r.cr);
    num(r.ki);
    num(r.kappa);
    num(r.md);
    num(r.cheb);
    line += std::to_string(r.kendall) + ',';
    num(r.comp);
    num(r.comp_lower);
    num(r.comp_upper);
    num(r.comp_max);
    line += r.chain_ok ? "1," : "0,";
    line += r.md_ok ? "1," : "0,";
    line += r.cheb_ok ? "1," : "0,";
    line += r.mean_ok ? "1\n" : "0\n";
    out << line;
  }
}

std::string to_csv(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  write_csv(os, cfg, records);
  return os.str();
}

void write_summary(std::ostream& out, const ExperimentSummary& s) {
  auto fixed = [](double v) {
    if (std::isnan(v)) return std::string("nan");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
  };
  out << "d,count,mean_ci,mean_ki,mean_md,max_md,mean_cheb,max_cheb,mean_comp_upper,"
         "max_comp_upper,max_md_over_bound\n";
  for (const DSummary& g : s.per_d) {
    out << fixed(g.d) << ',' << g.count << ',' << fixed(g.mean_ci) << ',' << fixed(g.mean_ki)
        << ',' << fixed(g.mean_md) << ',' << fixed(g.max_md) << ',' << fixed(g.mean_cheb) << ','
        << fixed(g.max_cheb) << ',' << fixed(g.mean_comp_upper) << ','
        << fixed(g.max_comp_upper) << ',' << fixed(g.max_md_over_bound) << '\n';
  }
  out << "samples: " << s.total << '\n'
      << "nonconverged: " << s.nonconverged << '\n'
      << "bound violations: " << s.violations << '\n'
      << "min slack (compat low / compat high / md high / cheb high): "
      << format_double(s.min_slack_compat_low) << " / " << format_double(s.min_slack_compat_high)
      << " / " << format_double(s.min_slack_md_high) << " / "
      << format_double(s.min_slack_cheb_high) << '\n'
      << "max md / md bound: " << fixed(s.max_md_over_bound) << '\n'
      << "spearman(d, mean ki): " << fixed(s.spearman_d_mean_ki) << '\n'
      << "max md at d=1: " << format_double(s.max_md_at_unit_d) << '\n';
}

}  // namespace pcrank
