#include "pcrank/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "pcrank/errors.hpp"
#include "pcrank/format.hpp"
#include "pcrank/inconsistency.hpp"
#include "pcrank/similarity.hpp"

namespace pcrank {

namespace {

constexpr double kCheckTol = 1e-9;
constexpr double kKappaFloor = 1e-6;
constexpr double kCap = 1e12;

bool le(double a, double b) { return a <= b + bound_tolerance(b); }

}  // namespace

double bound_tolerance(double bound) noexcept {
  return kCheckTol * std::max(1.0, std::abs(bound));
}

BoundEnvelope envelope_from_ki(double ki, std::size_t n) {
  if (n <= 2) throw DomainError("bound envelope requires n > 2");
  if (!(ki >= 0.0 && ki < 1.0)) throw DomainError("KI must lie in [0, 1)");
  const double nd = static_cast<double>(n);
  BoundEnvelope env{};
  env.n = n;
  env.kappa = 1.0 - ki;
  env.uninformative = env.kappa < kKappaFloor;
  const double k2 = env.kappa * env.kappa;
  const double inv = env.uninformative ? kCap : 1.0 / k2;
  env.compat_low = k2;
  env.compat_high = inv;
  env.md_low = nd * (k2 - 1.0);
  env.md_high = std::min(nd * (inv - 1.0), kCap);
  env.cheb_high = std::min(inv - 1.0, kCap);
  env.mean_low = k2 - 1.0;
  env.mean_high = std::min(inv - 1.0, kCap);
  return env;
}

BoundEnvelope envelope(const PCMatrix& c) {
  if (c.order() <= 2) throw DomainError("bound envelope requires n > 2");
  return envelope_from_ki(koczkodaj_ki(c).local_ki, c.order());
}

BoundCheckReport check_bounds(const BoundEnvelope& env, const PriorityVector& w_ev,
                              const PriorityVector& w_gm) {
  if (w_ev.size() != env.n || w_gm.size() != env.n) {
    throw ShapeError("ranking length does not match the envelope order");
  }
  const CompatibilityReport compat = comp_vectors(w_ev, w_gm);
  BoundCheckReport r{};
  r.envelope = env;
  r.observed.comp = compat.comp;
  r.observed.comp_lower = compat.comp_lower;
  r.observed.comp_upper = compat.comp_upper;
  r.observed.comp_max = compat.comp_max;
  r.observed.md = manhattan(w_ev, w_gm);
  r.observed.cheb = chebyshev(w_ev, w_gm);
  r.observed.mean_md = r.observed.md / static_cast<double>(env.n);

  const ObservedDistances& o = r.observed;
  r.chain_ok = le(env.compat_low, o.comp_lower) && le(o.comp_lower, o.comp) &&
               le(o.comp, o.comp_upper) && le(o.comp_upper, o.comp_max) &&
               le(o.comp_max, env.compat_high);
  r.md_ok = le(env.md_low, o.md) && le(o.md, env.md_high);
  r.mean_ok = le(env.mean_low, o.mean_md) && le(o.mean_md, env.mean_high);
  r.cheb_ok = le(o.cheb, env.cheb_high);

  r.slack.compat_low = o.comp_lower - env.compat_low;
  r.slack.chain = std::min({o.comp - o.comp_lower, o.comp_upper - o.comp,
                            o.comp_max - o.comp_upper});
  r.slack.compat_high = env.compat_high - o.comp_max;
  r.slack.md_low = o.md - env.md_low;
  r.slack.md_high = env.md_high - o.md;
  r.slack.mean_low = o.mean_md - env.mean_low;
  r.slack.mean_high = env.mean_high - o.mean_md;
  r.slack.cheb_high = env.cheb_high - o.cheb;
  return r;
}

BoundCheckReport check_bounds(const PCMatrix& c, const EvmOptions& opts) {
  const BoundEnvelope env = envelope(c);
  const EvmResult ev = evm(c, opts);
  return check_bounds(env, ev.weights, gmm(c));
}

BoundCheckReport check_theorem1(const PCMatrix& c, const EvmOptions& opts) {
  return check_bounds(c, opts);
}

BoundCheckReport check_theorem2(const PCMatrix& c, const EvmOptions& opts) {
  return check_bounds(c, opts);
}

BoundCheckReport check_corollaries(const PCMatrix& c, const EvmOptions& opts) {
  return check_bounds(c, opts);
}

bool lemma1_check(const BoundEnvelope& env, const PriorityVector& w_ev,
                  const PriorityVector& w_gm) {
  if (w_ev.size() != env.n || w_gm.size() != env.n) {
    throw ShapeError("ranking length does not match the envelope order");
  }
  for (std::size_t i = 0; i < env.n; ++i) {
    const double ratio = w_ev[i] / w_gm[i];
    if (ratio < env.compat_low * (1.0 - kCheckTol)) return false;
    if (ratio > env.compat_high * (1.0 + kCheckTol)) return false;
  }
  return true;
}

bool lemma1_check(const PCMatrix& c, const EvmOptions& opts) {
  const BoundEnvelope env = envelope(c);
  return lemma1_check(env, evm(c, opts).weights, gmm(c));
}

std::string to_json(const BoundCheckReport& r) {
  std::string out = "{";
  bool first = true;
  auto num = [&](const char* key, double v) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += key;
    out += "\":";
    out += std::isfinite(v) ? format_double(v) : std::string("null");
  };
  auto flag = [&](const char* key, bool v) {
    out += ",\"";
    out += key;
    out += "\":";
    out += v ? "true" : "false";
  };
  const BoundEnvelope& e = r.envelope;
  num("n", static_cast<double>(e.n));
  num("kappa", e.kappa);
  num("compat_low", e.compat_low);
  num("compat_high", e.compat_high);
  num("md_low", e.md_low);
  num("md_high", e.md_high);
  num("cheb_high", e.cheb_high);
  num("mean_low", e.mean_low);
  num("mean_high", e.mean_high);
  flag("uninformative", e.uninformative);
  const ObservedDistances& o = r.observed;
  num("comp", o.comp);
  num("comp_lower", o.comp_lower);
  num("comp_upper", o.comp_upper);
  num("comp_max", o.comp_max);
  num("md", o.md);
  num("cheb", o.cheb);
  num("mean_md", o.mean_md);
  flag("chain_ok", r.chain_ok);
  flag("md_ok", r.md_ok);
  flag("cheb_ok", r.cheb_ok);
  flag("mean_ok", r.mean_ok);
  const BoundSlack& s = r.slack;
  num("slack_compat_low", s.compat_low);
  num("slack_chain", s.chain);
  num("slack_compat_high", s.compat_high);
  num("slack_md_low", s.md_low);
  num("slack_md_high", s.md_high);
  num("slack_mean_low", s.mean_low);
  num("slack_mean_high", s.mean_high);
  num("slack_cheb_high", s.cheb_high);
  out += '}';
  return out;
}

}  // namespace pcrank
