#include "taskcodes/mismatch.hpp"

#include <algorithm>
#include <string>

#include "taskcodes/error.hpp"
#include "taskcodes/numeric.hpp"

namespace taskcodes {

namespace {

constexpr double kArgmaxTolerance = 1e-12;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw Error(Errc::invalid_alpha,
                "divergence order must be positive, finite and != 1, got " +
                    std::to_string(alpha));
  }
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::alphabet_mismatch,
                "laws have " + std::to_string(a) + " and " + std::to_string(b) +
                    " symbols");
  }
}

bool limit_agrees(double limit, double probe) {
  if (std::isinf(limit)) return std::isinf(probe) || probe > 1.0 / kProbeTolerance;
  return std::abs(limit - probe) <= kProbeTolerance;
}

}  // namespace

DivergenceValue sundaresan_divergence(std::span<const double> p_log,
                                      std::span<const double> q_log,
                                      double alpha) {
  check_alpha(alpha);
  check_sizes(p_log.size(), q_log.size());
  Log2SumAccumulator q_power, p_power, cross;
  for (std::size_t x = 0; x < p_log.size(); ++x) {
    const double lp = p_log[x];
    const double lq = q_log[x];
    if (lq != -kInf) q_power.add(alpha * lq);
    if (lp == -kInf) continue;  // 0/0 = 0 and 0/c = 0
    p_power.add(alpha * lp);
    if (lq == -kInf) {
      // P(x) / Q(x)^{1-alpha}: division by zero when alpha < 1; for alpha > 1
      // the denominator is infinite and the term vanishes.
      if (alpha < 1.0) return {alpha, kInf};
      continue;
    }
    cross.add(lp - (1.0 - alpha) * lq);
  }
  const double c = 1.0 / (1.0 - alpha);
  const double log_cross = cross.value();
  if (log_cross == -kInf) return {alpha, kInf};  // alpha > 1, disjoint supports
  const double value = q_power.value() - c * p_power.value() + alpha * c * log_cross;
  return {alpha, std::max(0.0, value)};
}

DivergenceValue sundaresan_divergence(const Pmf& p, const Pmf& q, double alpha) {
  check_sizes(p.size(), q.size());
  return sundaresan_divergence(p.log_masses(), q.log_masses(), alpha);
}

double renyi_divergence(const Pmf& p, const Pmf& q, double alpha) {
  check_alpha(alpha);
  check_sizes(p.size(), q.size());
  Log2SumAccumulator acc;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    acc.add(alpha * std::log2(p[x]) + (1.0 - alpha) * std::log2(q[x]));
  }
  const double s = acc.value();
  if (s == -kInf) return kInf;
  return s / (alpha - 1.0);
}

double divergence_limit_at_zero(const Pmf& p, const Pmf& q) {
  check_sizes(p.size(), q.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0 && q[x] == 0.0) {
      throw Error(Errc::support_violation,
                  "alpha -> 0 limit needs supp(P) inside supp(Q); symbol " +
                      std::to_string(x) + " violates it");
    }
  }
  return std::log2(static_cast<double>(q.support_size()) /
                   static_cast<double>(p.support_size()));
}

double divergence_limit_at_infinity(const Pmf& p, const Pmf& q) {
  check_sizes(p.size(), q.size());
  const double q_max = *std::max_element(q.masses().begin(), q.masses().end());
  const double p_max = *std::max_element(p.masses().begin(), p.masses().end());
  CompensatedSum mass_on_argmax;
  std::size_t argmax_count = 0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (q[x] >= q_max - kArgmaxTolerance) {
      mass_on_argmax.add(p[x]);
      ++argmax_count;
    }
  }
  const double mean = mass_on_argmax.value() / static_cast<double>(argmax_count);
  if (!(mean > 0.0)) return kInf;
  return std::log2(p_max / mean);
}

DivergenceLimits divergence_limits(const Pmf& p, const Pmf& q) {
  DivergenceLimits out{};
  out.at_zero = divergence_limit_at_zero(p, q);
  out.at_one = kl_divergence(p, q);
  out.at_infinity = divergence_limit_at_infinity(p, q);
  out.probe_zero = sundaresan_divergence(p, q, 1e-3).value;
  out.probe_below_one = sundaresan_divergence(p, q, 1.0 - 1e-4).value;
  out.probe_above_one = sundaresan_divergence(p, q, 1.0 + 1e-4).value;
  out.probe_infinity = sundaresan_divergence(p, q, 1e3).value;
  out.probes_agree = limit_agrees(out.at_zero, out.probe_zero) &&
                     limit_agrees(out.at_one, out.probe_below_one) &&
                     limit_agrees(out.at_one, out.probe_above_one) &&
                     limit_agrees(out.at_infinity, out.probe_infinity);
  return out;
}

double product_divergence(const Pmf& p, const Pmf& q, double alpha, unsigned n,
                          std::uint64_t cap) {
  check_sizes(p.size(), q.size());
  const auto pn = iid_joint(p, n, cap);
  const auto qn = iid_joint(q, n, cap);
  return sundaresan_divergence(pn.log_masses(), qn.log_masses(), alpha).value;
}

bool product_additivity_check(const Pmf& p, const Pmf& q, double alpha,
                              unsigned n, std::uint64_t cap) {
  const double single = sundaresan_divergence(p, q, alpha).value;
  const double product = product_divergence(p, q, alpha, n, cap);
  if (std::isinf(single) || std::isinf(product)) {
    return std::isinf(single) && std::isinf(product);
  }
  return std::abs(product - n * single) <= 1e-9 * n;
}

MismatchedBound mismatched_bound(const Pmf& p, const Pmf& q,
                                 std::uint64_t descriptions, double rho) {
  check_sizes(p.size(), q.size());
  const double order = rho_tilde(rho);
  auto encoder = build_encoder(q, rho, descriptions);
  const double divergence = sundaresan_divergence(p, q, order).value;
  const double mt = m_tilde(descriptions, p.size());
  const double bound =
      std::isinf(divergence)
          ? kInf
          : 1.0 + std::exp2(rho * (renyi_rho(p, rho) + divergence - std::log2(mt)));
  const double m = moment(p, encoder, rho);
  return {bound, m, divergence, std::move(encoder)};
}

MomentReport mismatched_block_experiment(const Pmf& p, const Pmf& q, Rate rate,
                                         double rho, unsigned n,
                                         std::uint64_t cap) {
  check_sizes(p.size(), q.size());
  const double order = rho_tilde(rho);
  const auto pn = iid_joint(p, n, cap);
  const auto qn = iid_joint(q, n, cap);

  MomentReport r = block_bounds(pn, rate, rho);
  const double threshold = std::log2(static_cast<double>(pn.size())) + 2.0;
  if (!(static_cast<double>(r.descriptions) > threshold)) {
    throw Error(Errc::rate_too_small_for_n,
                "floor(2^{nR}) = " + std::to_string(r.descriptions) +
                    " must exceed n*log2|X| + 2 = " + std::to_string(threshold) +
                    " at n = " + std::to_string(n));
  }
  const auto encoder = build_encoder(qn.log_masses(), rho, r.descriptions);
  r.used = encoder.used_descriptions();
  r.moment = moment(pn.log_masses(), encoder.partition(), rho);

  const double divergence =
      sundaresan_divergence(pn.log_masses(), qn.log_masses(), order).value;
  const double entropy = renyi_rho(pn, rho);
  r.upper = std::isinf(divergence)
                ? kInf
                : 1.0 + std::exp2(rho * (entropy + divergence - std::log2(r.m_tilde)));
  r.mismatch_exponent = (entropy + divergence) / n;
  return r;
}

}  // namespace taskcodes
