#include "taskcodes/random.hpp"

namespace taskcodes {

Pmf random_pmf(InstanceRng& rng, std::size_t size) {
  std::vector<double> w(size);
  for (auto& v : w) v = 0.05 + 0.95 * rng.uniform();
  return Pmf::from_weights(w);
}

Pmf random_grid_pmf(InstanceRng& rng, std::size_t size, unsigned max_weight) {
  std::vector<double> w(size);
  bool any = false;
  for (auto& v : w) {
    v = static_cast<double>(rng.between(0, max_weight));
    any = any || v > 0.0;
  }
  if (!any) w[rng.between(0, size - 1)] = 1.0;
  return Pmf::from_weights(w);
}

Partition random_partition(InstanceRng& rng, std::size_t size,
                           std::size_t max_blocks) {
  std::vector<std::size_t> labels(size);
  for (auto& l : labels) l = rng.between(0, max_blocks - 1);
  return Partition::from_labels(labels);
}

LambdaBudget random_budget(InstanceRng& rng, std::size_t size) {
  std::vector<Budget> b(size);
  for (auto& v : b) {
    v = rng.between(0, 3) == 0 ? Budget::infinite()
                               : Budget(rng.between(1, 2 * size));
  }
  return LambdaBudget(std::move(b));
}

MarkovSource random_markov(InstanceRng& rng, std::size_t states) {
  auto initial = random_pmf(rng, states);
  std::vector<double> t;
  t.reserve(states * states);
  for (std::size_t s = 0; s < states; ++s) {
    auto row = random_pmf(rng, states);
    t.insert(t.end(), row.masses().begin(), row.masses().end());
  }
  return MarkovSource(std::move(initial), std::move(t));
}

}  // namespace taskcodes
