#include "pcrank/inconsistency.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

#include "pcrank/errors.hpp"
#include "pcrank/random.hpp"

namespace pcrank {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

constexpr std::array<double, 17> kSaatyScale = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};

}  // namespace

RITable::RITable(std::map<std::size_t, double> values) : values_(std::move(values)) {
  for (const auto& [n, v] : values_) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw DomainError("RI(" + std::to_string(n) + ") must be positive");
    }
  }
}

RITable RITable::defaults() {
  return RITable({{3, 0.58}, {4, 0.90}, {5, 1.12}, {6, 1.24},
                  {7, 1.32}, {8, 1.41}, {9, 1.45}, {10, 1.49}});
}

RITable RITable::parse(std::string_view text) {
  std::map<std::size_t, double> values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'n = value'", line_no, 1);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    std::size_t n = 0;
    double v = 0.0;
    auto k = std::from_chars(key.data(), key.data() + key.size(), n);
    if (key.empty() || k.ec != std::errc() || k.ptr != key.data() + key.size()) {
      throw ParseError("invalid order '" + std::string(key) + "'", line_no, 1);
    }
    auto r = std::from_chars(val.data(), val.data() + val.size(), v);
    if (val.empty() || r.ec != std::errc() || r.ptr != val.data() + val.size()) {
      throw ParseError("invalid RI value '" + std::string(val) + "'", line_no, eq + 2);
    }
    values[n] = v;
  }
  return RITable(std::move(values));
}

RITable RITable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open RI table '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text);
}

double RITable::at(std::size_t n) const {
  const auto it = values_.find(n);
  if (it == values_.end()) {
    throw LookupError("no random consistency index for n=" + std::to_string(n));
  }
  return it->second;
}

double saaty_ci_from_lambda(double lambda_max, std::size_t n) {
  const double nd = static_cast<double>(n);
  double ci = (lambda_max - nd) / (nd - 1.0);
  if (ci < 0.0 && ci >= -1e-9) ci = 0.0;
  return ci;
}

double saaty_ci(const PCMatrix& c, const EvmOptions& opts) {
  return saaty_ci_from_lambda(evm(c, opts).lambda_max, c.order());
}

double consistency_ratio(const PCMatrix& c, const RITable& ri, const EvmOptions& opts) {
  const double index = ri.at(c.order());
  return saaty_ci(c, opts) / index;
}

PCMatrix random_saaty_matrix(std::size_t n, std::uint64_t seed) {
  Engine eng(seed);
  std::vector<double> upper(upper_triangle_size(n));
  for (double& v : upper) v = kSaatyScale[uniform_index(eng, kSaatyScale.size())];
  return PCMatrix::from_upper(upper, n);
}

double estimate_ri(std::size_t n, std::size_t samples, std::uint64_t seed,
                   const EvmOptions& opts) {
  if (n < 3) throw DomainError("RI is undefined for n < 3 (CI is identically 0)");
  if (samples < 1) throw ArgumentError("estimate_ri needs at least one sample");
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    sum += saaty_ci(random_saaty_matrix(n, derive_seed(seed, s)), opts);
  }
  return sum / static_cast<double>(samples);
}

double koczkodaj_local(const PCMatrix& c, std::size_t i, std::size_t k, std::size_t j) {
  const std::size_t n = c.order();
  if (i >= n || k >= n || j >= n) throw ArgumentError("triad index out of range");
  if (i == k || k == j || i == j) throw ArgumentError("triad indices must be distinct");
  const double path = c(i, k) * c(k, j);
  const double direct = c(i, j);
  return std::min(std::abs(1.0 - direct / path), std::abs(1.0 - path / direct));
}

Triad koczkodaj_ki(const PCMatrix& c) {
  const std::size_t n = c.order();
  if (n <= 2) throw DomainError("Koczkodaj's index requires n > 2");
  Triad best{0, 1, 2, -1.0};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t d = b + 1; d < n; ++d) {
        const double v = koczkodaj_local(c, a, b, d);
        if (v > best.local_ki) best = Triad{a, b, d, v};
      }
    }
  }
  return best;
}

InconsistencyReport analyze_inconsistency(const PCMatrix& c, const RITable& ri,
                                          const EvmOptions& opts) {
  const std::size_t n = c.order();
  InconsistencyReport report{};
  report.lambda_max = evm(c, opts).lambda_max;
  report.ci = saaty_ci_from_lambda(report.lambda_max, n);
  if (ri.contains(n)) report.cr = report.ci / ri.at(n);
  if (n > 2) {
    const Triad worst = koczkodaj_ki(c);
    report.ki = worst.local_ki;
    report.worst_triad = worst;
  }
  return report;
}

}  // namespace pcrank
