#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace taskcodes {

// Largest number of n-tuples any enumeration path will materialize unless the
// caller passes a different cap.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

// A probability mass function over the dense alphabet 0..size()-1.
//
// Inputs whose total lies within 1e-9 of one are rescaled; anything further
// off is rejected rather than silently repaired.
class Pmf {
 public:
  explicit Pmf(std::vector<double> masses);

  // Normalizes arbitrary nonnegative weights (at least one positive).
  static Pmf from_weights(std::span<const double> weights);
  static Pmf uniform(std::size_t size);

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t x) const { return masses_[x]; }
  std::span<const double> masses() const { return masses_; }

  // log2 of each mass; zero masses map to -inf.
  std::vector<double> log_masses() const;

  bool in_support(std::size_t x) const { return masses_[x] > 0.0; }
  std::size_t support_size() const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<double> masses_;
};

// Time-invariant Markov chain: initial law plus a row-stochastic matrix
// stored row-major (row = current state, column = next state).
class MarkovSource {
 public:
  MarkovSource(Pmf initial, std::vector<double> transitions);

  std::size_t states() const { return initial_.size(); }
  const Pmf& initial() const { return initial_; }
  double transition(std::size_t from, std::size_t to) const {
    return transitions_[from * states() + to];
  }

  // The memoryless chain whose every row equals `law`.
  static MarkovSource iid(const Pmf& law);
  // Symmetric chain over `states` states that stays put with probability
  // `stay` and otherwise moves uniformly to one of the other states.
  static MarkovSource sticky(std::size_t states, double stay);

 private:
  Pmf initial_;
  std::vector<double> transitions_;
};

// Law of an n-tuple over a base alphabet of size `base`. Tuple (x1,...,xn)
// lives at index x1*base^{n-1} + ... + xn, and each entry holds the log2 of
// its probability (-inf for impossible tuples).
class JointLaw {
 public:
  JointLaw(unsigned n, std::size_t base, std::vector<double> log_masses);

  unsigned block_length() const { return n_; }
  std::size_t base_size() const { return base_; }
  std::size_t size() const { return log_masses_.size(); }
  std::span<const double> log_masses() const { return log_masses_; }
  double log_mass(std::size_t index) const { return log_masses_[index]; }
  double mass(std::size_t index) const;

  std::size_t index_of(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> tuple_of(std::size_t index) const;

  // Collapses to an ordinary Pmf over tuple indices.
  Pmf to_pmf() const;

 private:
  unsigned n_;
  std::size_t base_;
  std::vector<double> log_masses_;
};

// Number of n-tuples over `base` symbols, or throws cap_exceeded when it
// would exceed `cap`.
std::uint64_t checked_tuple_count(std::size_t base, unsigned n,
                                  std::uint64_t cap);

// Order alpha = 1/(1+rho) associated with a moment of order rho.
double rho_tilde(double rho);

// H_alpha in bits, evaluated in the log domain.
double renyi_entropy(std::span<const double> log_masses, double alpha);
double renyi_entropy(const Pmf& p, double alpha);
double renyi_entropy(const JointLaw& law, double alpha);

double renyi_rho(const Pmf& p, double rho);
double renyi_rho(const JointLaw& law, double rho);

JointLaw iid_joint(const Pmf& p, unsigned n,
                   std::uint64_t cap = kDefaultEnumerationCap);
JointLaw markov_joint(const MarkovSource& source, unsigned n,
                      std::uint64_t cap = kDefaultEnumerationCap);

// H_alpha(X^n) of a Markov source in O(n * states^2) without enumerating
// tuples.
double markov_renyi_sum(const MarkovSource& source, double alpha, unsigned n);

// D(p||q) in bits; +inf when supp(p) is not inside supp(q).
double kl_divergence(const Pmf& p, const Pmf& q);

}  // namespace taskcodes
