#include "taskcodes/task_code.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "taskcodes/error.hpp"
#include "taskcodes/numeric.hpp"

namespace taskcodes {

namespace {

constexpr std::int64_t kRateScale = 1'000'000;
constexpr double kMaxDescriptionExponent = 62.0;
// Budgets beyond this are far above any enumerable alphabet; they are stored
// finite so mu stays exact.
constexpr double kBudgetClamp = 4611686018427387904.0;  // 2^62

using boost::multiprecision::cpp_int;

void check_rho(double rho) { rho_tilde(rho); }

void check_descriptions(std::uint64_t descriptions, std::size_t alphabet_size) {
  const double threshold = std::log2(static_cast<double>(alphabet_size)) + 2.0;
  if (!(static_cast<double>(descriptions) > threshold)) {
    throw Error(Errc::m_too_small,
                "M = " + std::to_string(descriptions) +
                    " must exceed log2|X| + 2 = " + std::to_string(threshold));
  }
}

}  // namespace

// --- Rate ------------------------------------------------------------------

Rate::Rate(std::int64_t num, std::int64_t den) {
  if (num <= 0) throw Error(Errc::invalid_argument, "rate must be positive");
  const auto g = std::gcd(num, den);
  numerator_ = num / g;
  denominator_ = den / g;
}

Rate Rate::from_double(double bits) {
  if (!std::isfinite(bits) || !(bits > 0.0) || bits > 1e6) {
    throw Error(Errc::invalid_argument,
                "rate must be positive and finite, got " + std::to_string(bits));
  }
  return Rate(std::llround(bits * static_cast<double>(kRateScale)), kRateScale);
}

Rate Rate::parse(std::string_view text) {
  const auto bad = [&](const char* why) {
    return Error(Errc::parse_error,
                 "rate '" + std::string(text) + "': " + why);
  };
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad("empty");
  if (frac.size() > 6) throw bad("at most six decimal places are supported");
  std::int64_t w = 0;
  if (!whole.empty()) {
    auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
    if (ec != std::errc{} || p != whole.data() + whole.size() || w < 0) {
      throw bad("not a decimal number");
    }
  }
  std::int64_t f = 0;
  for (char c : frac) {
    if (c < '0' || c > '9') throw bad("not a decimal number");
    f = f * 10 + (c - '0');
  }
  for (std::size_t i = frac.size(); i < 6; ++i) f *= 10;
  if (w > 1'000'000) throw bad("too large");
  if (w == 0 && f == 0) throw bad("rate must be positive");
  return Rate(w * kRateScale + f, kRateScale);
}

std::uint64_t description_count(unsigned n, Rate rate) {
  if (n == 0) throw Error(Errc::invalid_argument, "block length must be >= 1");
  if (static_cast<double>(n) * rate.value() > kMaxDescriptionExponent) {
    throw Error(Errc::invalid_argument,
                "2^{nR} does not fit a 64-bit description count");
  }
  const std::int64_t exponent = static_cast<std::int64_t>(n) * rate.numerator();
  const std::int64_t den = rate.denominator();
  if (exponent % den == 0) return std::uint64_t{1} << (exponent / den);

  auto candidate = static_cast<std::uint64_t>(std::floor(
      std::exp2(static_cast<long double>(exponent) / static_cast<long double>(den))));
  // candidate = floor(2^{e/d}) iff candidate^d <= 2^e < (candidate+1)^d.
  // Checked in integers whenever the powers stay reasonably small.
  const auto bits = static_cast<std::uint64_t>(std::log2(candidate + 1.0)) + 1;
  if (bits * static_cast<std::uint64_t>(den) <= (std::uint64_t{1} << 20)) {
    const cpp_int two_e = cpp_int(1) << static_cast<unsigned>(exponent);
    const auto d = static_cast<unsigned>(den);
    while (candidate > 1 && boost::multiprecision::pow(cpp_int(candidate), d) > two_e) {
      --candidate;
    }
    while (boost::multiprecision::pow(cpp_int(candidate + 1), d) <= two_e) {
      ++candidate;
    }
  }
  return candidate;
}

// --- TaskEncoder -----------------------------------------------------------

TaskEncoder::TaskEncoder(const Partition& partition,
                         std::uint64_t description_count)
    : description_count_(description_count),
      assignment_(partition.ground_size()),
      partition_(partition) {
  if (partition.block_count() > description_count) {
    throw Error(Errc::m_too_small,
                "partition has " + std::to_string(partition.block_count()) +
                    " blocks but only " + std::to_string(description_count) +
                    " descriptions are available");
  }
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    for (Element x : partition.block(b)) assignment_[x] = b + 1;
  }
}

// --- construction ----------------------------------------------------------

double m_tilde(std::uint64_t descriptions, std::size_t alphabet_size) {
  return (static_cast<double>(descriptions) -
          std::log2(static_cast<double>(alphabet_size)) - 2.0) /
         4.0;
}

LambdaBudget lambda_from_law(std::span<const double> log_masses, double rho,
                             std::uint64_t descriptions) {
  const double order = rho_tilde(rho);
  check_descriptions(descriptions, log_masses.size());
  Log2SumAccumulator power_sum;
  for (double l : log_masses) power_sum.add(l == -kInf ? -kInf : order * l);
  const double slack = static_cast<double>(descriptions) -
                       std::log2(static_cast<double>(log_masses.size())) - 2.0;
  const double log_beta = 1.0 + power_sum.value() - std::log2(slack);

  std::vector<Budget> budgets(log_masses.size());
  for (std::size_t x = 0; x < log_masses.size(); ++x) {
    if (log_masses[x] == -kInf) {
      budgets[x] = Budget::infinite();
      continue;
    }
    const double target = std::exp2(log_beta - order * log_masses[x]);
    const double c = std::ceil(target);
    budgets[x] = Budget(c >= kBudgetClamp
                            ? static_cast<std::uint64_t>(kBudgetClamp)
                            : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c)));
  }
  return LambdaBudget(std::move(budgets));
}

LambdaBudget lambda_from_law(const Pmf& p, double rho,
                             std::uint64_t descriptions) {
  return lambda_from_law(p.log_masses(), rho, descriptions);
}

TaskEncoder build_encoder(std::span<const double> log_masses, double rho,
                          std::uint64_t descriptions) {
  return TaskEncoder(
      build_partition(lambda_from_law(log_masses, rho, descriptions)),
      descriptions);
}

TaskEncoder build_encoder(const Pmf& p, double rho, std::uint64_t descriptions) {
  return build_encoder(p.log_masses(), rho, descriptions);
}

// --- evaluation ------------------------------------------------------------

double moment(std::span<const double> log_masses, const Partition& partition,
              double rho) {
  check_rho(rho);
  if (log_masses.size() != partition.ground_size()) {
    throw Error(Errc::alphabet_mismatch,
                "law has " + std::to_string(log_masses.size()) +
                    " symbols but the partition covers " +
                    std::to_string(partition.ground_size()));
  }
  std::unordered_map<std::size_t, double> powered;
  CompensatedSum acc;
  for (std::size_t x = 0; x < log_masses.size(); ++x) {
    if (log_masses[x] == -kInf) continue;
    const std::size_t size = partition.containing_size(static_cast<Element>(x));
    auto [it, fresh] = powered.try_emplace(size, 0.0);
    if (fresh) it->second = std::pow(static_cast<double>(size), rho);
    acc.add(std::exp2(log_masses[x]) * it->second);
  }
  return acc.value();
}

double moment(const Pmf& p, const Partition& partition, double rho) {
  check_rho(rho);
  if (p.size() != partition.ground_size()) {
    throw Error(Errc::alphabet_mismatch,
                "pmf has " + std::to_string(p.size()) +
                    " symbols but the partition covers " +
                    std::to_string(partition.ground_size()));
  }
  CompensatedSum acc;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    acc.add(p[x] * std::pow(static_cast<double>(partition.containing_size(
                                static_cast<Element>(x))),
                            rho));
  }
  return acc.value();
}

double moment(const Pmf& p, const TaskEncoder& encoder, double rho) {
  return moment(p, encoder.partition(), rho);
}

double lower_bound_from_entropy(double entropy, std::uint64_t descriptions,
                                double rho) {
  check_rho(rho);
  if (descriptions == 0) {
    throw Error(Errc::invalid_argument, "M must be >= 1");
  }
  return std::exp2(rho * (entropy - std::log2(static_cast<double>(descriptions))));
}

double upper_bound_from_entropy(double entropy, std::size_t alphabet_size,
                                std::uint64_t descriptions, double rho) {
  check_rho(rho);
  const double mt = m_tilde(descriptions, alphabet_size);
  if (!(mt > 0.0)) return kInf;
  return 1.0 + std::exp2(rho * (entropy - std::log2(mt)));
}

double lower_bound(const Pmf& p, std::uint64_t descriptions, double rho) {
  return lower_bound_from_entropy(renyi_rho(p, rho), descriptions, rho);
}

double upper_bound(const Pmf& p, std::uint64_t descriptions, double rho) {
  return upper_bound_from_entropy(renyi_rho(p, rho), p.size(), descriptions,
                                  rho);
}

// --- brute force -----------------------------------------------------------

Optimum brute_force_optimum(const Pmf& p, std::uint64_t descriptions,
                            double rho) {
  check_rho(rho);
  if (p.size() > kBruteForceMaxAlphabet) {
    throw Error(Errc::alphabet_too_large,
                "brute force is limited to " +
                    std::to_string(kBruteForceMaxAlphabet) + " symbols, got " +
                    std::to_string(p.size()));
  }
  if (descriptions == 0) throw Error(Errc::invalid_argument, "M must be >= 1");

  const std::size_t n = p.size();
  const std::size_t max_blocks =
      static_cast<std::size_t>(std::min<std::uint64_t>(descriptions, n));
  std::vector<double> size_pow(n + 1);
  for (std::size_t s = 1; s <= n; ++s) {
    size_pow[s] = std::pow(static_cast<double>(s), rho);
  }

  double best = kInf;
  std::vector<std::size_t> best_labels;
  std::vector<std::size_t> counts(n);
  for_each_partition(n, max_blocks,
                     [&](std::span<const std::size_t> labels, std::size_t blocks) {
    std::fill(counts.begin(), counts.begin() + blocks, 0);
    for (std::size_t l : labels) ++counts[l];
    CompensatedSum acc;
    for (std::size_t x = 0; x < n; ++x) {
      if (p[x] > 0.0) acc.add(p[x] * size_pow[counts[labels[x]]]);
    }
    const double value = acc.value();
    // Ties (up to rounding) keep the lexicographically earlier string.
    if (best_labels.empty() || value < best - 1e-12 * std::max(1.0, best)) {
      best = value;
      best_labels.assign(labels.begin(), labels.end());
    }
  });
  return {best, Partition::from_labels(best_labels)};
}

// --- block experiments -----------------------------------------------------

MomentReport block_bounds(const JointLaw& law, Rate rate, double rho) {
  MomentReport r;
  r.n = law.block_length();
  r.rate = rate.value();
  r.rho = rho;
  r.descriptions = description_count(r.n, rate);
  const double entropy = renyi_rho(law, rho);
  r.lower = lower_bound_from_entropy(entropy, r.descriptions, rho);
  r.upper = upper_bound_from_entropy(entropy, law.size(), r.descriptions, rho);
  r.m_tilde = m_tilde(r.descriptions, law.size());
  r.delta = r.m_tilde > 0.0 ? r.rate - std::log2(r.m_tilde) / r.n : kInf;
  r.moment = std::numeric_limits<double>::quiet_NaN();
  r.used = 0;
  return r;
}

MomentReport block_experiment(const JointLaw& law, Rate rate, double rho) {
  MomentReport r = block_bounds(law, rate, rho);
  const double threshold = std::log2(static_cast<double>(law.size())) + 2.0;
  if (!(static_cast<double>(r.descriptions) > threshold)) {
    throw Error(Errc::rate_too_small_for_n,
                "floor(2^{nR}) = " + std::to_string(r.descriptions) +
                    " must exceed n*log2|X| + 2 = " + std::to_string(threshold) +
                    " at n = " + std::to_string(r.n));
  }
  const auto encoder = build_encoder(law.log_masses(), rho, r.descriptions);
  r.used = encoder.used_descriptions();
  r.moment = moment(law.log_masses(), encoder.partition(), rho);
  return r;
}

MomentReport encoder_report(const Pmf& p, const TaskEncoder& encoder,
                            double rho) {
  MomentReport r;
  r.n = 1;
  r.rho = rho;
  r.descriptions = encoder.description_count();
  r.rate = std::log2(static_cast<double>(r.descriptions));
  r.used = encoder.used_descriptions();
  r.moment = moment(p, encoder, rho);
  r.lower = lower_bound(p, r.descriptions, rho);
  r.upper = upper_bound(p, r.descriptions, rho);
  r.m_tilde = m_tilde(r.descriptions, p.size());
  r.delta = r.m_tilde > 0.0 ? r.rate - std::log2(r.m_tilde) : kInf;
  return r;
}

}  // namespace taskcodes
