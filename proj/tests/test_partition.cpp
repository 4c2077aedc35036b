#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "taskcodes/error.hpp"
#include "taskcodes/partition.hpp"
#include "taskcodes/random.hpp"
#include "taskcodes/task_code.hpp"

using namespace taskcodes;

namespace {

// Dense-grid oracle for min over alpha in (1, top] of floor(alpha mu + log_alpha n + 2).
std::uint64_t grid_oracle(double mu, double n, double top, int points) {
  std::uint64_t best = UINT64_MAX;
  for (int i = 1; i <= points; ++i) {
    const double alpha = 1.0 + (top - 1.0) * i / points;
    const double v = alpha * mu + std::log(n) / std::log(alpha) + 2.0;
    best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(std::floor(v)));
  }
  return best;
}

LambdaBudget budgets(std::initializer_list<std::uint64_t> values) {
  std::vector<Budget> b;
  for (auto v : values) b.push_back(v == 0 ? Budget::infinite() : Budget(v));
  return LambdaBudget(std::move(b));
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(Partition(2, {{0, 1}, {}}), Error);
  CHECK_THROWS_AS(Partition(2, {{0, 5}}), Error);
  const Partition p(3, {{2, 0}, {1}});
  CHECK(p.containing_size(0) == 2);
  CHECK(p.containing_size(1) == 1);
  CHECK(p == Partition(3, {{1}, {0, 2}}));
  CHECK_FALSE(p == Partition::singletons(3));
}

TEST_CASE("kraft_sum examples") {
  CHECK(kraft_sum(Partition(3, {{0, 1}, {2}})) == 2);
  CHECK(kraft_sum(Partition::singletons(7)) == 7);
  CHECK(kraft_sum(Partition::single_block(7)) == 1);
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(to_string(Rational(4)) == "4");
}

TEST_CASE("subset_count_bound examples") {
  const auto b = subset_count_bound(2, 4);
  CHECK(b.at_alpha_two == 8);
  CHECK(b.value <= 8);
  CHECK(b.value <= b.grid_value);

  const auto trivial = subset_count_bound(0, 1);
  CHECK(trivial.value >= 1);
  CHECK(build_partition(LambdaBudget({Budget::infinite()})).block_count() == 1);

  const Rational mu(37, 10);
  const auto r = subset_count_bound(mu, 64);
  CHECK(r.value == grid_oracle(3.7, 64, 64, 100000));
}

TEST_CASE("subset_count_bound agrees with a dense grid on random inputs") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    InstanceRng rng(21, i);
    const std::size_t n = rng.between(2, 200);
    const Rational mu(static_cast<long long>(rng.between(1, 4000)), 97);
    const auto r = subset_count_bound(mu, n);
    const double top = std::max(64.0, static_cast<double>(n));
    CHECK(r.value <= grid_oracle(mu.convert_to<double>(), static_cast<double>(n), top, 20000));
    CHECK(r.value <= r.grid_value);
    CHECK(r.value <= r.at_alpha_two);
  }
}

TEST_CASE("build_partition examples") {
  // lambda(a)=1, lambda(b)=2, lambda(c)=lambda(d)=4
  const auto counter = budgets({1, 2, 4, 4});
  CHECK(counter.mu() == 2);
  const auto p = build_partition(counter);
  REQUIRE(p.block_count() == 3);
  CHECK(std::vector<Element>(p.block(0).begin(), p.block(0).end()) ==
        std::vector<Element>{2, 3});
  CHECK(std::vector<Element>(p.block(1).begin(), p.block(1).end()) ==
        std::vector<Element>{0});
  CHECK(std::vector<Element>(p.block(2).begin(), p.block(2).end()) ==
        std::vector<Element>{1});

  const auto all_inf = build_partition(budgets({0, 0, 0, 0, 0}));
  CHECK(all_inf == Partition::single_block(5));

  const auto ones = build_partition(budgets({1, 1, 1, 1, 1, 1}));
  CHECK(ones == Partition::singletons(6));
}

TEST_CASE("counterexample needs three blocks: no 2-block partition fits") {
  const auto counter = budgets({1, 2, 4, 4});
  bool found = false;
  for_each_partition(4, 2, [&](std::span<const std::size_t> labels, std::size_t) {
    if (verify_budget(Partition::from_labels(labels), counter).ok) found = true;
  });
  CHECK_FALSE(found);
}

TEST_CASE("verify_budget examples") {
  const auto lambda = budgets({3, 1, 0, 2, 5});
  CHECK(verify_budget(build_partition(lambda), lambda).ok);

  const auto ones = budgets({1, 1, 1, 1});
  const auto r = verify_budget(Partition::single_block(4), ones);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violation.has_value());
  CHECK(*r.violation == 0);

  CHECK(verify_budget(Partition::singletons(4), budgets({1, 7, 2, 0})).ok);
  try {
    verify_budget(Partition::singletons(3), ones);
    FAIL("expected ground-set-mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ground_set_mismatch);
  }
}

TEST_CASE("property: constructor soundness, label invariance, sorted sweep") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    InstanceRng rng(22, i);
    const std::size_t n = rng.between(1, 64);
    const auto lambda = random_budget(rng, n);
    const auto part = build_partition(lambda);
    CHECK(verify_budget(part, lambda).ok);
    CHECK(part.block_count() <= subset_count_bound(lambda.mu(), n).value);

    // Relabel with a random permutation.
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), Element{0});
    for (std::size_t j = n; j > 1; --j) std::swap(perm[j - 1], perm[rng.between(0, j - 1)]);
    std::vector<Budget> permuted(n);
    for (std::size_t x = 0; x < n; ++x) permuted[perm[x]] = lambda[x];
    const auto relabeled = build_partition(LambdaBudget(permuted));
    CHECK(relabeled.block_sizes_sorted() == part.block_sizes_sorted());

    // Blocks after the first (when it absorbs lambda >= |X|) follow sorted rank.
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), Element{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Element a, Element b) { return lambda[a] < lambda[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
    const bool has_absorbing = std::any_of(order.begin(), order.end(), [&](Element x) {
      return lambda[x].is_infinite() || lambda[x].value() >= n;
    });
    std::size_t previous_max = 0;
    bool first_swept = true;
    for (std::size_t b = has_absorbing ? 1 : 0; b < part.block_count(); ++b) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (Element x : part.block(b)) {
        lo = std::min(lo, rank[x]);
        hi = std::max(hi, rank[x]);
      }
      if (!first_swept) CHECK(lo > previous_max);
      previous_max = hi;
      first_swept = false;
    }
  }
}

TEST_CASE("partition text round trip") {
  const Partition p(6, {{5, 1}, {0}, {3, 2, 4}});
  const auto text = partition_to_text(p);
  CHECK(text == "0\n1 5\n2 3 4\n");
  CHECK(partition_from_text(text) == p);
  CHECK(partition_from_text("# comment\n0 2\n\n1\n") == Partition(3, {{0, 2}, {1}}));
  CHECK_THROWS_AS(partition_from_text("0 1\n1 2\n"), Error);
  CHECK_THROWS_AS(partition_from_text("0 x\n"), Error);
}
