#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace taskcodes {

using Rational = boost::multiprecision::cpp_rational;
using Element = std::uint32_t;

std::string to_string(const Rational& value);

// Cardinality budget lambda(x): a positive integer or +inf.
class Budget {
 public:
  static constexpr std::uint64_t kInfinite =
      std::numeric_limits<std::uint64_t>::max();

  constexpr Budget() = default;
  constexpr explicit Budget(std::uint64_t value) : value_(value) {}
  static constexpr Budget infinite() { return Budget(kInfinite); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr std::uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(Budget, Budget) = default;

 private:
  std::uint64_t value_ = kInfinite;
};

class LambdaBudget {
 public:
  // Every finite budget must be >= 1.
  explicit LambdaBudget(std::vector<Budget> budgets);

  std::size_t size() const { return budgets_.size(); }
  Budget operator[](std::size_t x) const { return budgets_[x]; }
  std::span<const Budget> budgets() const { return budgets_; }

  // mu = sum_x 1/lambda(x) with 1/inf = 0, exact.
  Rational mu() const;

 private:
  std::vector<Budget> budgets_;
};

// A partition of the ground set 0..ground_size()-1 into nonempty blocks.
// Blocks keep the order they were given in; `canonical()` reorders them by
// smallest element.
class Partition {
 public:
  Partition(std::size_t ground_size,
            const std::vector<std::vector<Element>>& blocks);

  // Block ids per element; ids need not be dense (empty labels are dropped).
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition singletons(std::size_t ground_size);
  static Partition single_block(std::size_t ground_size);

  std::size_t ground_size() const { return block_of_.size(); }
  std::size_t block_count() const { return offsets_.size() - 1; }

  std::span<const Element> block(std::size_t b) const {
    return {members_.data() + offsets_[b], offsets_[b + 1] - offsets_[b]};
  }
  std::size_t block_size(std::size_t b) const {
    return offsets_[b + 1] - offsets_[b];
  }
  std::size_t block_of(Element x) const { return block_of_[x]; }
  // L(x): size of the block containing x.
  std::size_t containing_size(Element x) const {
    return block_size(block_of_[x]);
  }

  Partition canonical() const;
  std::vector<std::size_t> block_sizes_sorted() const;

  // Equal as set partitions (block order and in-block order ignored).
  friend bool operator==(const Partition& a, const Partition& b);

 private:
  Partition() = default;
  void index_blocks();

  std::vector<Element> members_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> block_of_;
};

// sum_x 1/L(x), exact.
Rational kraft_sum(const Partition& partition);

struct SubsetCountBound {
  // min over alpha > 1 of floor(alpha*mu + log_alpha|X| + 2).
  std::uint64_t value;
  // Where the minimum was found (+inf when approached only as alpha grows).
  double alpha;
  // Best value over the 512-point geometric grid on (1, max(4, |X|)].
  std::uint64_t grid_value;
  double grid_alpha;
  // The expression at alpha = 2.
  std::uint64_t at_alpha_two;
};

SubsetCountBound subset_count_bound(const Rational& mu,
                                    std::size_t alphabet_size);

// Greedy construction: elements with lambda >= |X| form the first block, the
// rest are swept in (lambda, id) order, each new block taking as many
// elements as the budget of its first element allows.
Partition build_partition(const LambdaBudget& lambda);

struct BudgetCheck {
  bool ok = true;
  std::optional<Element> violation;
};

// Checks L(x) <= min(lambda(x), |X|) for every x.
BudgetCheck verify_budget(const Partition& partition,
                          const LambdaBudget& lambda);

// One block per line, blocks ordered by smallest element, elements ascending
// and separated by single spaces.
std::string partition_to_text(const Partition& partition);
Partition partition_from_text(std::string_view text);

}  // namespace taskcodes
