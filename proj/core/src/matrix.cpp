#include "pcrank/matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "pcrank/errors.hpp"
#include "pcrank/format.hpp"

namespace pcrank {

namespace {

constexpr double kParseReciprocityTol = 1e-6;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::vector<Token> tokens;
  std::size_t number;  // 1-based
};

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f';
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    Line line{{}, line_no};
    std::size_t i = 0;
    while (i < raw.size() && is_space(raw[i])) ++i;
    if (i < raw.size() && raw[i] == '#') continue;
    while (i < raw.size()) {
      if (is_space(raw[i])) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
  }
  return lines;
}

double parse_entry(const Token& tok, std::size_t line_no) {
  std::string_view s = tok.text;
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("invalid number '" + std::string(s) + "'", line_no,
                       tok.column);
    }
    return value;
  }

  auto parse_int = [&](std::string_view part, std::size_t offset) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ParseError("invalid fraction '" + std::string(s) + "'", line_no,
                       tok.column + offset);
    }
    return v;
  };
  const long long num = parse_int(s.substr(0, slash), 0);
  const long long den = parse_int(s.substr(slash + 1), slash + 1);
  if (den == 0) {
    throw ParseError("zero denominator in '" + std::string(s) + "'", line_no,
                     tok.column + slash + 1);
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Tolerance::Tolerance(double r) : rel(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("tolerance must lie in (0, 1)");
  }
}

PriorityVector::PriorityVector(std::vector<double> raw) : weights_(std::move(raw)) {
  if (weights_.empty()) throw DomainError("priority vector must not be empty");
  for (double w : weights_) {
    if (!positive_finite(w)) {
      throw DomainError("priority weights must be positive and finite");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!std::isfinite(total)) throw DomainError("priority weights overflow");
  for (double& w : weights_) w /= total;
}

std::size_t upper_triangle_size(std::size_t n) noexcept {
  return n < 2 ? 0 : n * (n - 1) / 2;
}

PCMatrix PCMatrix::from_upper(std::span<const double> upper, std::size_t n) {
  if (n < 2) throw ShapeError("matrix order must be at least 2");
  if (upper.size() != upper_triangle_size(n)) {
    throw ShapeError("expected " + std::to_string(upper_triangle_size(n)) +
                     " upper-triangle entries for n=" + std::to_string(n) +
                     ", got " + std::to_string(upper.size()));
  }
  std::vector<double> entries(n * n, 1.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double c = upper[k];
      if (!positive_finite(c)) {
        throw DomainError("entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) +
                          ") must be positive and finite");
      }
      const double r = 1.0 / c;
      if (!positive_finite(r)) {
        throw DomainError("reciprocal of entry (" + std::to_string(i + 1) +
                          "," + std::to_string(j + 1) + ") is not finite");
      }
      entries[i * n + j] = c;
      entries[j * n + i] = r;
    }
  }
  return PCMatrix(n, std::move(entries));
}

std::vector<double> PCMatrix::upper_triangle() const {
  std::vector<double> out;
  out.reserve(upper_triangle_size(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

PCMatrix PCMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw ShapeError("permutation length must equal order");
  std::vector<bool> seen(n_, false);
  for (std::size_t p : perm) {
    if (p >= n_ || seen[p]) throw ArgumentError("not a permutation");
    seen[p] = true;
  }
  std::vector<double> upper;
  upper.reserve(upper_triangle_size(n_));
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) upper.push_back((*this)(perm[a], perm[b]));
  }
  return from_upper(upper, n_);
}

PCMatrix build_matrix(std::span<const double> upper, std::size_t n) {
  return PCMatrix::from_upper(upper, n);
}

PCMatrix parse_matrix(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("no matrix rows found", 1, 1);

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  for (const Line& line : lines) {
    std::vector<double> row;
    row.reserve(line.tokens.size());
    for (const Token& tok : line.tokens) row.push_back(parse_entry(tok, line.number));
    rows.push_back(std::move(row));
  }

  const std::size_t m = rows.size();
  bool full = m >= 2;
  for (const auto& row : rows) full = full && row.size() == m;

  bool upper_form = !full;
  for (std::size_t r = 0; upper_form && r < m; ++r) {
    upper_form = rows[r].size() == m - r;
  }

  if (upper_form) {
    std::vector<double> upper;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (!positive_finite(rows[r][c])) {
          throw ValidationError("entry must be positive and finite", r + 1,
                                r + c + 2);
        }
        upper.push_back(rows[r][c]);
      }
    }
    return PCMatrix::from_upper(upper, m + 1);
  }

  if (!full) {
    // Name the first row whose length breaks the full-matrix shape.
    const std::size_t expected = lines.front().tokens.size();
    for (std::size_t r = 0; r < m; ++r) {
      if (rows[r].size() != expected || rows[r].size() != m) {
        const Line& line = lines[r];
        const std::size_t col = rows[r].size() > m
                                    ? line.tokens[m].column
                                    : (line.tokens.back().column +
                                       line.tokens.back().text.size());
        throw ParseError("row has " + std::to_string(rows[r].size()) +
                             " entries; expected a square matrix or an upper "
                             "triangle",
                         line.number, col);
      }
    }
    throw ParseError("matrix is not square", lines.front().number, 1);
  }

  const std::size_t n = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!positive_finite(rows[i][j])) {
        throw ValidationError("entry must be positive and finite", i + 1, j + 1);
      }
    }
    if (std::abs(rows[i][i] - 1.0) > kParseReciprocityTol) {
      throw ValidationError("diagonal entry must be 1", i + 1, i + 1);
    }
  }
  std::vector<double> upper;
  upper.reserve(upper_triangle_size(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double product = rows[i][j] * rows[j][i];
      if (std::abs(product - 1.0) > kParseReciprocityTol) {
        throw ValidationError("not reciprocal to entry (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ")",
                              j + 1, i + 1);
      }
      upper.push_back(rows[i][j]);
    }
  }
  return PCMatrix::from_upper(upper, n);
}

PCMatrix parse_matrix(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_matrix(std::string_view(text));
}

PCMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open matrix file '" + path + "'");
  return parse_matrix(in);
}

std::string serialize_matrix(const PCMatrix& c) {
  std::string out;
  const std::size_t n = c.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += format_double(c(i, j));
    }
    out += '\n';
  }
  return out;
}

bool is_consistent(const PCMatrix& c, Tolerance tol) {
  const std::size_t n = c.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(c(i, j) * c(j, k) * c(k, i) - 1.0) > tol.rel) return false;
      }
    }
  }
  return true;
}

PCMatrix induced_matrix(const PriorityVector& w) {
  const std::size_t n = w.size();
  std::vector<double> upper;
  upper.reserve(upper_triangle_size(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) upper.push_back(w[i] / w[j]);
  }
  return PCMatrix::from_upper(upper, n);
}

}  // namespace pcrank
