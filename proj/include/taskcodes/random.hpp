#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "taskcodes/partition.hpp"
#include "taskcodes/probability.hpp"

namespace taskcodes {

// Counter-based generator: draw k of instance i under seed s is a pure
// function of (s, i, k), so instances can be regenerated independently and in
// any order.
class InstanceRng {
 public:
  InstanceRng(std::uint64_t seed, std::uint64_t instance)
      : key_(mix(seed ^ mix(instance + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on lo..hi inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Full-support law with masses proportional to uniform draws on [0.05, 1).
Pmf random_pmf(InstanceRng& rng, std::size_t size);

// Law from integer weights drawn on 0..max_weight (at least one positive).
// Produces exact ties and zero masses with useful frequency.
Pmf random_grid_pmf(InstanceRng& rng, std::size_t size, unsigned max_weight);

// Uniformly random block labels in 0..max_blocks-1.
Partition random_partition(InstanceRng& rng, std::size_t size,
                           std::size_t max_blocks);

// Budgets drawn from {1..2|X|} with probability 3/4, otherwise inf.
LambdaBudget random_budget(InstanceRng& rng, std::size_t size);

MarkovSource random_markov(InstanceRng& rng, std::size_t states);

}  // namespace taskcodes
