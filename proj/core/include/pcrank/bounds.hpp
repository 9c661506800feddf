#pragma once

#include <string>

#include "pcrank/matrix.hpp"
#include "pcrank/priority.hpp"

namespace pcrank {

// Envelope implied by kappa = 1 - KI(C) for the EVM / GMM rankings of C.
struct BoundEnvelope {
  std::size_t n;
  double kappa;        // in (0, 1]
  double compat_low;   // kappa^2
  double compat_high;  // 1 / kappa^2
  double md_low;       // n (kappa^2 - 1)
  double md_high;      // n (1/kappa^2 - 1)
  double cheb_high;    // 1/kappa^2 - 1
  double mean_low;     // kappa^2 - 1
  double mean_high;    // 1/kappa^2 - 1
  // kappa < 1e-6: every field is capped at magnitude 1e12 and the bounds
  // carry no information (they always hold).
  bool uninformative;
};

struct ObservedDistances {
  double comp;
  double comp_lower;
  double comp_upper;
  double comp_max;
  double md;
  double cheb;
  double mean_md;  // md / n
};

// Distance of each observation from its bound; negative means violated.
struct BoundSlack {
  double compat_low;   // comp_lower - compat_low
  double chain;        // smallest gap inside comp_lower <= comp <= comp_upper <= comp_max
  double compat_high;  // compat_high - comp_max
  double md_low;       // md - md_low
  double md_high;      // md_high - md
  double mean_low;     // mean_md - mean_low
  double mean_high;    // mean_high - mean_md
  double cheb_high;    // cheb_high - cheb
};

struct BoundCheckReport {
  BoundEnvelope envelope;
  ObservedDistances observed;
  bool chain_ok;  // kappa^2 <= lower <= comp <= upper <= max <= 1/kappa^2
  bool md_ok;     // n(kappa^2 - 1) <= MD <= n(1/kappa^2 - 1)
  bool cheb_ok;   // ChD <= 1/kappa^2 - 1
  bool mean_ok;   // kappa^2 - 1 <= MD/n <= 1/kappa^2 - 1
  BoundSlack slack;
};

// Additive tolerance 1e-9 scaled by max(1, |bound|).
double bound_tolerance(double bound) noexcept;

// Requires n > 2 (throws DomainError otherwise).
BoundEnvelope envelope(const PCMatrix& c);
BoundEnvelope envelope_from_ki(double ki, std::size_t n);

// Evaluates every inequality for given rankings; the weights must come from
// the matrix the envelope was built for.
BoundCheckReport check_bounds(const BoundEnvelope& env, const PriorityVector& w_ev,
                              const PriorityVector& w_gm);

// Full pipeline: KI, EVM, GMM, all distances and all inequalities. The three
// named entry points return the same complete report; each exists so callers
// can name the result they rely on (chain_ok, md_ok, mean_ok / cheb_ok).
BoundCheckReport check_bounds(const PCMatrix& c, const EvmOptions& opts = {});
BoundCheckReport check_theorem1(const PCMatrix& c, const EvmOptions& opts = {});
BoundCheckReport check_theorem2(const PCMatrix& c, const EvmOptions& opts = {});
BoundCheckReport check_corollaries(const PCMatrix& c, const EvmOptions& opts = {});

// kappa^2 <= w_ev_i / w_gm_i <= 1/kappa^2 for every i (matched indices),
// within 1e-9 relative.
bool lemma1_check(const BoundEnvelope& env, const PriorityVector& w_ev,
                  const PriorityVector& w_gm);
bool lemma1_check(const PCMatrix& c, const EvmOptions& opts = {});

// Flat JSON object: envelope and observed fields under their own names,
// flags, and slack fields prefixed with "slack_".
std::string to_json(const BoundCheckReport& report);

}  // namespace pcrank
