#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taskcodes/partition.hpp"
#include "taskcodes/probability.hpp"

namespace taskcodes {

// A rate in bits per symbol, held as an exact decimal with at most six
// places so that floor(2^{nR}) can be computed without rounding surprises.
class Rate {
 public:
  // Rounds to the nearest multiple of 1e-6.
  static Rate from_double(double bits);
  static Rate parse(std::string_view text);

  double value() const {
    return static_cast<double>(numerator_) / static_cast<double>(denominator_);
  }
  std::int64_t numerator() const { return numerator_; }
  std::int64_t denominator() const { return denominator_; }

 private:
  Rate(std::int64_t num, std::int64_t den);
  std::int64_t numerator_;
  std::int64_t denominator_;
};

// floor(2^{n*rate}), exact.
std::uint64_t description_count(unsigned n, Rate rate);

// f: X -> {1..M}. Only the induced partition matters for the moment; ids not
// used by any element are simply absent from the assignment.
class TaskEncoder {
 public:
  // Assigns ids 1, 2, ... to the blocks in their stored order.
  TaskEncoder(const Partition& partition, std::uint64_t description_count);

  std::uint64_t description_count() const { return description_count_; }
  // Number of nonempty preimages (N <= M).
  std::size_t used_descriptions() const { return partition_.block_count(); }
  std::uint64_t describe(Element x) const { return assignment_[x]; }
  std::span<const std::uint64_t> assignment() const { return assignment_; }
  const Partition& partition() const { return partition_; }
  std::size_t alphabet_size() const { return assignment_.size(); }

 private:
  std::uint64_t description_count_;
  std::vector<std::uint64_t> assignment_;
  Partition partition_;
};

struct MomentReport {
  unsigned n = 1;
  double rate = 0.0;
  double rho = 0.0;
  std::uint64_t descriptions = 0;  // M
  std::uint64_t used = 0;          // N
  double moment = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double m_tilde = 0.0;
  double delta = 0.0;
  // H(P) + Delta(P||Q) per symbol; set by mismatched experiments only.
  std::optional<double> mismatch_exponent;
};

// (M - log2|X| - 2) / 4; nonpositive when the upper bound is vacuous.
double m_tilde(std::uint64_t descriptions, std::size_t alphabet_size);

// Budgets ceil(beta * P(x)^{-1/(1+rho)}) (inf where P(x) = 0) with
// beta = 2 sum P^{1/(1+rho)} / (M - log2|X| - 2). Requires M > log2|X| + 2.
LambdaBudget lambda_from_law(std::span<const double> log_masses, double rho,
                             std::uint64_t descriptions);
LambdaBudget lambda_from_law(const Pmf& p, double rho,
                             std::uint64_t descriptions);

TaskEncoder build_encoder(std::span<const double> log_masses, double rho,
                          std::uint64_t descriptions);
TaskEncoder build_encoder(const Pmf& p, double rho, std::uint64_t descriptions);

// E|f^{-1}(f(X))|^rho = sum_x P(x) L(x)^rho.
double moment(std::span<const double> log_masses, const Partition& partition,
              double rho);
double moment(const Pmf& p, const TaskEncoder& encoder, double rho);
double moment(const Pmf& p, const Partition& partition, double rho);

// 2^{rho (H - log2 M)} and 1 + 2^{rho (H - log2 M~)}, with H the Renyi
// entropy of order 1/(1+rho) passed in bits.
double lower_bound_from_entropy(double entropy, std::uint64_t descriptions,
                                double rho);
double upper_bound_from_entropy(double entropy, std::size_t alphabet_size,
                                std::uint64_t descriptions, double rho);

double lower_bound(const Pmf& p, std::uint64_t descriptions, double rho);
double upper_bound(const Pmf& p, std::uint64_t descriptions, double rho);

inline constexpr std::size_t kBruteForceMaxAlphabet = 10;

struct Optimum {
  double moment;
  Partition partition;
};

// Exact minimum of the moment over partitions into at most M blocks.
// Enumerates restricted growth strings in lexicographic order and keeps the
// first minimizer.
Optimum brute_force_optimum(const Pmf& p, std::uint64_t descriptions,
                            double rho);

// Enumerates every partition of 0..size-1 into at most max_blocks blocks as a
// restricted growth string; the visitor sees the labels and block count.
template <typename Visitor>
void for_each_partition(std::size_t size, std::size_t max_blocks,
                        Visitor&& visit);

// Builds the matched encoder for X^n with M = floor(2^{nR}) and reports the
// moment, both one-shot bounds, M~ and delta_n = R - log2(M~)/n.
MomentReport block_experiment(const JointLaw& law, Rate rate, double rho);

// Same report without building an encoder (moment and upper bound NaN/inf);
// usable below the construction threshold.
MomentReport block_bounds(const JointLaw& law, Rate rate, double rho);

// One-shot report for a given encoder.
MomentReport encoder_report(const Pmf& p, const TaskEncoder& encoder,
                            double rho);

// --- template implementation ----------------------------------------------

template <typename Visitor>
void for_each_partition(std::size_t size, std::size_t max_blocks,
                        Visitor&& visit) {
  if (size == 0 || max_blocks == 0) return;
  std::vector<std::size_t> labels(size, 0);
  // prefix_max[i] = number of blocks used by labels[0..i].
  std::vector<std::size_t> prefix_max(size, 1);
  while (true) {
    visit(std::span<const std::size_t>(labels), prefix_max[size - 1]);
    // Advance to the next restricted growth string.
    std::size_t i = size;
    while (i-- > 1) {
      const std::size_t limit = std::min(prefix_max[i - 1], max_blocks - 1);
      if (labels[i] < limit) break;
    }
    if (i == 0) return;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i] + 1);
    for (std::size_t j = i + 1; j < size; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

}  // namespace taskcodes
