#include "taskcodes/probability.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "taskcodes/error.hpp"
#include "taskcodes/numeric.hpp"

namespace taskcodes {

namespace {

constexpr double kNormalizationWindow = 1e-9;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw Error(Errc::invalid_alpha,
                "Renyi order must be positive, finite and != 1, got " +
                    std::to_string(alpha));
  }
}

std::vector<double> normalized(std::vector<double> masses,
                               const std::string& what) {
  if (masses.empty()) {
    throw Error(Errc::invalid_pmf, what + ": alphabet must be nonempty");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] < 0.0) {
      throw Error(Errc::invalid_pmf, what + ": mass " + std::to_string(i) +
                                         " is negative or not finite");
    }
    total.add(masses[i]);
  }
  const double sum = total.value();
  if (std::abs(sum - 1.0) > kNormalizationWindow) {
    throw Error(Errc::invalid_pmf,
                what + ": masses sum to " + std::to_string(sum) +
                    ", outside 1 +/- 1e-9");
  }
  for (double& m : masses) m /= sum;
  return masses;
}

}  // namespace

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_alpha: return "invalid-alpha";
    case Errc::invalid_rho: return "invalid-rho";
    case Errc::invalid_pmf: return "invalid-pmf";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::cap_exceeded: return "cap-exceeded";
    case Errc::m_too_small: return "m-too-small";
    case Errc::rate_too_small_for_n: return "rate-too-small-for-n";
    case Errc::alphabet_mismatch: return "alphabet-mismatch";
    case Errc::alphabet_too_large: return "alphabet-too-large";
    case Errc::ground_set_mismatch: return "ground-set-mismatch";
    case Errc::support_violation: return "support-violation";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

// --- Pmf -------------------------------------------------------------------

Pmf::Pmf(std::vector<double> masses)
    : masses_(normalized(std::move(masses), "pmf")) {}

Pmf Pmf::from_weights(std::span<const double> weights) {
  CompensatedSum total;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(Errc::invalid_pmf, "weights must be finite and nonnegative");
    }
    total.add(w);
  }
  if (!(total.value() > 0.0)) {
    throw Error(Errc::invalid_pmf, "weights must have a positive total");
  }
  std::vector<double> masses(weights.begin(), weights.end());
  for (double& m : masses) m /= total.value();
  return Pmf(std::move(masses));
}

Pmf Pmf::uniform(std::size_t size) {
  if (size == 0) throw Error(Errc::invalid_pmf, "uniform over empty alphabet");
  return Pmf(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::vector<double> Pmf::log_masses() const {
  std::vector<double> out(masses_.size());
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    out[i] = masses_[i] > 0.0 ? std::log2(masses_[i]) : -kInf;
  }
  return out;
}

std::size_t Pmf::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(masses_.begin(), masses_.end(),
                    [](double m) { return m > 0.0; }));
}

// --- MarkovSource ----------------------------------------------------------

MarkovSource::MarkovSource(Pmf initial, std::vector<double> transitions)
    : initial_(std::move(initial)) {
  const std::size_t k = initial_.size();
  if (transitions.size() != k * k) {
    throw Error(Errc::invalid_pmf,
                "transition matrix must be " + std::to_string(k) + "x" +
                    std::to_string(k));
  }
  transitions_.reserve(k * k);
  for (std::size_t row = 0; row < k; ++row) {
    std::vector<double> r(transitions.begin() + row * k,
                          transitions.begin() + (row + 1) * k);
    auto fixed = normalized(std::move(r),
                            "transition row " + std::to_string(row));
    transitions_.insert(transitions_.end(), fixed.begin(), fixed.end());
  }
}

MarkovSource MarkovSource::iid(const Pmf& law) {
  std::vector<double> t;
  t.reserve(law.size() * law.size());
  for (std::size_t row = 0; row < law.size(); ++row) {
    t.insert(t.end(), law.masses().begin(), law.masses().end());
  }
  return MarkovSource(law, std::move(t));
}

MarkovSource MarkovSource::sticky(std::size_t states, double stay) {
  if (states == 0 || !(stay >= 0.0 && stay <= 1.0)) {
    throw Error(Errc::invalid_argument, "sticky chain needs states >= 1 and "
                                        "stay in [0, 1]");
  }
  if (states == 1) return MarkovSource(Pmf::uniform(1), {1.0});
  const double move = (1.0 - stay) / static_cast<double>(states - 1);
  std::vector<double> t(states * states, move);
  for (std::size_t s = 0; s < states; ++s) t[s * states + s] = stay;
  return MarkovSource(Pmf::uniform(states), std::move(t));
}

// --- JointLaw --------------------------------------------------------------

JointLaw::JointLaw(unsigned n, std::size_t base, std::vector<double> log_masses)
    : n_(n), base_(base), log_masses_(std::move(log_masses)) {
  if (n == 0 || base == 0) {
    throw Error(Errc::invalid_argument, "joint law needs n >= 1 and base >= 1");
  }
  std::uint64_t expected = 1;
  for (unsigned i = 0; i < n; ++i) expected *= base;
  if (log_masses_.size() != expected) {
    throw Error(Errc::invalid_pmf, "joint law must list base^n tuples");
  }
  const double total = log2_sum_exp2(log_masses_);
  if (!(std::abs(std::exp2(total) - 1.0) <= kNormalizationWindow)) {
    throw Error(Errc::invalid_pmf, "joint law masses do not sum to one");
  }
}

double JointLaw::mass(std::size_t index) const {
  const double l = log_masses_[index];
  return l == -kInf ? 0.0 : std::exp2(l);
}

std::size_t JointLaw::index_of(std::span<const std::size_t> tuple) const {
  if (tuple.size() != n_) {
    throw Error(Errc::invalid_argument, "tuple length differs from n");
  }
  std::size_t index = 0;
  for (std::size_t symbol : tuple) {
    if (symbol >= base_) {
      throw Error(Errc::invalid_argument, "symbol outside alphabet");
    }
    index = index * base_ + symbol;
  }
  return index;
}

std::vector<std::size_t> JointLaw::tuple_of(std::size_t index) const {
  std::vector<std::size_t> tuple(n_);
  for (unsigned i = n_; i-- > 0;) {
    tuple[i] = index % base_;
    index /= base_;
  }
  return tuple;
}

Pmf JointLaw::to_pmf() const {
  std::vector<double> masses(size());
  for (std::size_t i = 0; i < size(); ++i) masses[i] = mass(i);
  return Pmf::from_weights(masses);
}

std::uint64_t checked_tuple_count(std::size_t base, unsigned n,
                                  std::uint64_t cap) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (base != 0 && count > cap / base) {
      throw Error(Errc::cap_exceeded,
                  std::to_string(base) + "^" + std::to_string(n) +
                      " tuples exceed the enumeration cap of " +
                      std::to_string(cap));
    }
    count *= base;
  }
  if (count > cap) {
    throw Error(Errc::cap_exceeded, "tuple count exceeds enumeration cap of " +
                                        std::to_string(cap));
  }
  return count;
}

// --- entropies -------------------------------------------------------------

double rho_tilde(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(Errc::invalid_rho,
                "rho must be positive and finite, got " + std::to_string(rho));
  }
  return 1.0 / (1.0 + rho);
}

double renyi_entropy(std::span<const double> log_masses, double alpha) {
  check_alpha(alpha);
  Log2SumAccumulator acc;
  for (double l : log_masses) acc.add(l == -kInf ? -kInf : alpha * l);
  return acc.value() / (1.0 - alpha);
}

double renyi_entropy(const Pmf& p, double alpha) {
  return renyi_entropy(p.log_masses(), alpha);
}

double renyi_entropy(const JointLaw& law, double alpha) {
  return renyi_entropy(law.log_masses(), alpha);
}

double renyi_rho(const Pmf& p, double rho) {
  return renyi_entropy(p, rho_tilde(rho));
}

double renyi_rho(const JointLaw& law, double rho) {
  return renyi_entropy(law, rho_tilde(rho));
}

// --- joint laws ------------------------------------------------------------

JointLaw iid_joint(const Pmf& p, unsigned n, std::uint64_t cap) {
  if (n == 0) throw Error(Errc::invalid_argument, "block length must be >= 1");
  const auto count = checked_tuple_count(p.size(), n, cap);
  const auto single = p.log_masses();
  // Built one coordinate at a time: entries for length k+1 extend length k.
  std::vector<double> logs(single);
  logs.reserve(count);
  for (unsigned k = 1; k < n; ++k) {
    std::vector<double> next;
    next.reserve(logs.size() * single.size());
    for (double prefix : logs) {
      for (double s : single) next.push_back(prefix + s);
    }
    logs = std::move(next);
  }
  return JointLaw(n, p.size(), std::move(logs));
}

JointLaw markov_joint(const MarkovSource& source, unsigned n,
                      std::uint64_t cap) {
  if (n == 0) throw Error(Errc::invalid_argument, "block length must be >= 1");
  const std::size_t k = source.states();
  checked_tuple_count(k, n, cap);
  std::vector<double> log_t(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double t = source.transition(a, b);
      log_t[a * k + b] = t > 0.0 ? std::log2(t) : -kInf;
    }
  }
  std::vector<double> logs = source.initial().log_masses();
  for (unsigned step = 1; step < n; ++step) {
    std::vector<double> next;
    next.reserve(logs.size() * k);
    for (std::size_t idx = 0; idx < logs.size(); ++idx) {
      const std::size_t last = idx % k;
      for (std::size_t b = 0; b < k; ++b) {
        next.push_back(logs[idx] + log_t[last * k + b]);
      }
    }
    logs = std::move(next);
  }
  return JointLaw(n, k, std::move(logs));
}

double markov_renyi_sum(const MarkovSource& source, double alpha, unsigned n) {
  check_alpha(alpha);
  if (n == 0) throw Error(Errc::invalid_argument, "block length must be >= 1");
  const std::size_t k = source.states();
  // v_1(x) = initial(x)^alpha, v_{j+1}(y) = sum_x v_j(x) T(x,y)^alpha, all
  // kept as log2 values.
  std::vector<double> v(k);
  for (std::size_t x = 0; x < k; ++x) {
    const double p = source.initial()[x];
    v[x] = p > 0.0 ? alpha * std::log2(p) : -kInf;
  }
  std::vector<double> next(k);
  for (unsigned step = 1; step < n; ++step) {
    for (std::size_t y = 0; y < k; ++y) {
      Log2SumAccumulator acc;
      for (std::size_t x = 0; x < k; ++x) {
        const double t = source.transition(x, y);
        if (t > 0.0) acc.add(v[x] + alpha * std::log2(t));
      }
      next[y] = acc.value();
    }
    v.swap(next);
  }
  return log2_sum_exp2(v) / (1.0 - alpha);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    throw Error(Errc::alphabet_mismatch, "kl_divergence: alphabet sizes differ");
  }
  CompensatedSum acc;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) return kInf;
    acc.add(p[x] * (std::log2(p[x]) - std::log2(q[x])));
  }
  return std::max(0.0, acc.value());
}

}  // namespace taskcodes
