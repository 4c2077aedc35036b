#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "taskcodes/probability.hpp"
#include "taskcodes/task_code.hpp"

namespace taskcodes {

struct DivergenceValue {
  double alpha;
  double value;  // bits, possibly +inf

  bool is_infinite() const { return std::isinf(value); }
};

// Delta_alpha(P||Q) = log [sum Q^a / (sum P^a)^{1/(1-a)}] (sum P/Q^{1-a})^{a/(1-a)}
// with 0/0 = 0 and c/0 = +inf for c > 0. Each factor is taken in the log
// domain separately.
DivergenceValue sundaresan_divergence(std::span<const double> p_log_masses,
                                      std::span<const double> q_log_masses,
                                      double alpha);
DivergenceValue sundaresan_divergence(const Pmf& p, const Pmf& q, double alpha);

// D_alpha(P||Q) = 1/(alpha-1) log sum P^alpha Q^{1-alpha}.
double renyi_divergence(const Pmf& p, const Pmf& q, double alpha);

// Closed-form limits of Delta_alpha.
double divergence_limit_at_zero(const Pmf& p, const Pmf& q);  // needs supp p in supp q
double divergence_limit_at_infinity(const Pmf& p, const Pmf& q);

struct DivergenceLimits {
  double at_zero;
  double at_one;  // kl_divergence
  double at_infinity;

  // Delta at alpha = 1e-3, 1 - 1e-4, 1 + 1e-4 and 1e3.
  double probe_zero;
  double probe_below_one;
  double probe_above_one;
  double probe_infinity;

  // Every probe lies within 1e-2 of its limit; an infinite limit accepts
  // probes that are infinite or above 1e2.
  bool probes_agree;
};

inline constexpr double kProbeTolerance = 1e-2;

DivergenceLimits divergence_limits(const Pmf& p, const Pmf& q);

// Delta(P^n||Q^n) computed by enumerating the n-fold products.
double product_divergence(const Pmf& p, const Pmf& q, double alpha, unsigned n,
                          std::uint64_t cap = kDefaultEnumerationCap);

// Delta(P^n||Q^n) == n Delta(P||Q) within 1e-9 n.
bool product_additivity_check(const Pmf& p, const Pmf& q, double alpha,
                              unsigned n,
                              std::uint64_t cap = kDefaultEnumerationCap);

struct MismatchedBound {
  double bound;       // 1 + 2^{rho (H(P) + Delta(P||Q) - log2 M~)}
  double moment;      // moment under P of the encoder designed for Q
  double divergence;  // Delta_{1/(1+rho)}(P||Q)
  TaskEncoder encoder;
};

MismatchedBound mismatched_bound(const Pmf& p, const Pmf& q,
                                 std::uint64_t descriptions, double rho);

// Encoder built from Q^n, evaluated under P^n. The upper column holds the
// mismatched bound; mismatch_exponent holds H(P) + Delta(P||Q) per symbol.
MomentReport mismatched_block_experiment(
    const Pmf& p, const Pmf& q, Rate rate, double rho, unsigned n,
    std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace taskcodes
