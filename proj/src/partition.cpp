#include "taskcodes/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "taskcodes/error.hpp"

namespace taskcodes {

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// --- LambdaBudget ----------------------------------------------------------

LambdaBudget::LambdaBudget(std::vector<Budget> budgets)
    : budgets_(std::move(budgets)) {
  for (std::size_t x = 0; x < budgets_.size(); ++x) {
    if (!budgets_[x].is_infinite() && budgets_[x].value() < 1) {
      throw Error(Errc::invalid_argument,
                  "budget of element " + std::to_string(x) + " is below 1");
    }
  }
}

Rational LambdaBudget::mu() const {
  // Grouping by value keeps the rational sum small even for large ground
  // sets, where only a few distinct budgets occur.
  std::map<std::uint64_t, std::uint64_t> counts;
  for (Budget b : budgets_) {
    if (!b.is_infinite()) ++counts[b.value()];
  }
  Rational mu = 0;
  for (const auto& [value, count] : counts) {
    mu += Rational(boost::multiprecision::cpp_int(count),
                   boost::multiprecision::cpp_int(value));
  }
  return mu;
}

// --- Partition -------------------------------------------------------------

Partition::Partition(std::size_t ground_size,
                     const std::vector<std::vector<Element>>& blocks) {
  offsets_.reserve(blocks.size() + 1);
  offsets_.push_back(0);
  for (const auto& b : blocks) {
    if (b.empty()) throw Error(Errc::invalid_argument, "partition block is empty");
    members_.insert(members_.end(), b.begin(), b.end());
    offsets_.push_back(members_.size());
  }
  if (members_.size() != ground_size) {
    throw Error(Errc::invalid_argument,
                "blocks hold " + std::to_string(members_.size()) +
                    " elements but the ground set has " +
                    std::to_string(ground_size));
  }
  block_of_.assign(ground_size, 0);
  index_blocks();
}

void Partition::index_blocks() {
  std::vector<bool> seen(block_of_.size(), false);
  for (std::size_t b = 0; b + 1 < offsets_.size(); ++b) {
    for (std::size_t i = offsets_[b]; i < offsets_[b + 1]; ++i) {
      const Element x = members_[i];
      if (x >= block_of_.size() || seen[x]) {
        throw Error(Errc::invalid_argument,
                    "element " + std::to_string(x) +
                        " is out of range or appears twice");
      }
      seen[x] = true;
      block_of_[x] = b;
    }
  }
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  std::map<std::size_t, std::size_t> dense;
  std::vector<std::vector<Element>> blocks;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, fresh] = dense.try_emplace(labels[x], blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(static_cast<Element>(x));
  }
  return Partition(labels.size(), blocks);
}

Partition Partition::singletons(std::size_t ground_size) {
  std::vector<std::size_t> labels(ground_size);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return from_labels(labels);
}

Partition Partition::single_block(std::size_t ground_size) {
  std::vector<std::size_t> labels(ground_size, 0);
  return from_labels(labels);
}

Partition Partition::canonical() const {
  std::vector<std::vector<Element>> blocks(block_count());
  for (std::size_t b = 0; b < block_count(); ++b) {
    auto span = block(b);
    blocks[b].assign(span.begin(), span.end());
    std::sort(blocks[b].begin(), blocks[b].end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition(ground_size(), blocks);
}

std::vector<std::size_t> Partition::block_sizes_sorted() const {
  std::vector<std::size_t> sizes(block_count());
  for (std::size_t b = 0; b < block_count(); ++b) sizes[b] = block_size(b);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

bool operator==(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size() || a.block_count() != b.block_count()) {
    return false;
  }
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return ca.members_ == cb.members_ && ca.offsets_ == cb.offsets_;
}

Rational kraft_sum(const Partition& partition) {
  std::map<std::size_t, std::uint64_t> by_size;
  for (std::size_t x = 0; x < partition.ground_size(); ++x) {
    ++by_size[partition.containing_size(static_cast<Element>(x))];
  }
  Rational sum = 0;
  for (const auto& [size, count] : by_size) {
    sum += Rational(boost::multiprecision::cpp_int(count),
                    boost::multiprecision::cpp_int(size));
  }
  return sum;
}

// --- subset-count bound ----------------------------------------------------

namespace {

constexpr int kGridPoints = 512;

std::uint64_t floor_to_count(long double v) {
  return static_cast<std::uint64_t>(std::floor(v));
}

}  // namespace

SubsetCountBound subset_count_bound(const Rational& mu,
                                    std::size_t alphabet_size) {
  if (mu < 0 || alphabet_size == 0) {
    throw Error(Errc::invalid_argument,
                "subset_count_bound needs mu >= 0 and a nonempty alphabet");
  }
  const long double m = mu.convert_to<long double>();
  const long double log_size = std::log(static_cast<long double>(alphabet_size));
  auto expr = [&](long double alpha) {
    return alpha * m + log_size / std::log(alpha) + 2.0L;
  };

  SubsetCountBound out{};
  out.at_alpha_two = floor_to_count(expr(2.0L));

  const long double top =
      std::max<long double>(4.0L, static_cast<long double>(alphabet_size));
  out.grid_value = std::numeric_limits<std::uint64_t>::max();
  for (int i = 1; i <= kGridPoints; ++i) {
    const long double alpha =
        std::pow(top, static_cast<long double>(i) / kGridPoints);
    const auto v = floor_to_count(expr(alpha));
    if (v < out.grid_value) {
      out.grid_value = v;
      out.grid_alpha = static_cast<double>(alpha);
    }
  }

  // The expression is convex in alpha on (1, inf), so the floor of its
  // infimum is the exact minimum of the floored expression.
  long double infimum;
  double arg;
  if (alphabet_size == 1) {
    infimum = m + 2.0L;  // approached as alpha -> 1
    arg = 1.0;
  } else if (m == 0) {
    infimum = 2.0L;  // approached as alpha -> inf
    arg = std::numeric_limits<double>::infinity();
  } else {
    // Stationary point in t = ln(alpha): mu*e^t = ln|X| / t^2.
    auto slope = [&](long double t) { return m * std::exp(t) - log_size / (t * t); };
    long double lo = 1e-12L, hi = 1.0L;
    while (slope(hi) < 0) hi *= 2.0L;
    for (int it = 0; it < 200; ++it) {
      const long double mid = 0.5L * (lo + hi);
      (slope(mid) < 0 ? lo : hi) = mid;
    }
    const long double t = 0.5L * (lo + hi);
    infimum = m * std::exp(t) + log_size / t + 2.0L;
    arg = static_cast<double>(std::exp(t));
  }
  out.value = floor_to_count(infimum);
  out.alpha = arg;
  if (out.grid_value < out.value) {
    out.value = out.grid_value;
    out.alpha = out.grid_alpha;
  }
  return out;
}

// --- construction ----------------------------------------------------------

Partition build_partition(const LambdaBudget& lambda) {
  const std::size_t n = lambda.size();
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return lambda[a] < lambda[b];
  });

  // Sorted ascending, so the elements with lambda >= |X| form a suffix.
  const auto absorbs = [&](Element x) {
    return lambda[x].is_infinite() || lambda[x].value() >= n;
  };
  const std::size_t swept =
      static_cast<std::size_t>(std::find_if(order.begin(), order.end(), absorbs) -
                               order.begin());

  std::vector<std::vector<Element>> blocks;
  if (swept < n) {
    std::vector<Element> first(order.begin() + swept, order.end());
    std::sort(first.begin(), first.end());
    blocks.push_back(std::move(first));
  }
  std::size_t pos = 0;
  while (pos < swept) {
    const std::uint64_t take = lambda[order[pos]].value();
    const std::size_t end =
        swept - pos <= take ? swept : pos + static_cast<std::size_t>(take);
    blocks.emplace_back(order.begin() + pos, order.begin() + end);
    pos = end;
  }
  return Partition(n, blocks);
}

BudgetCheck verify_budget(const Partition& partition,
                          const LambdaBudget& lambda) {
  if (partition.ground_size() != lambda.size()) {
    throw Error(Errc::ground_set_mismatch,
                "partition covers " + std::to_string(partition.ground_size()) +
                    " elements but the budget lists " +
                    std::to_string(lambda.size()));
  }
  const std::size_t n = lambda.size();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t size = partition.containing_size(static_cast<Element>(x));
    const Budget b = lambda[x];
    const std::uint64_t limit =
        b.is_infinite() ? n : std::min<std::uint64_t>(b.value(), n);
    if (size > limit) return {false, static_cast<Element>(x)};
  }
  return {};
}

// --- text form -------------------------------------------------------------

std::string partition_to_text(const Partition& partition) {
  const auto c = partition.canonical();
  std::string out;
  for (std::size_t b = 0; b < c.block_count(); ++b) {
    bool first = true;
    for (Element x : c.block(b)) {
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Partition partition_from_text(std::string_view text) {
  std::vector<std::vector<Element>> blocks;
  std::size_t total = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos ||
        line.front() == '#') {
      continue;
    }
    std::vector<Element> block;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      Element x{};
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc{}) {
        throw Error(Errc::parse_error,
                    "partition line " + std::to_string(line_no) +
                        ": expected an element id");
      }
      block.push_back(x);
      p = next;
    }
    total += block.size();
    blocks.push_back(std::move(block));
  }
  try {
    return Partition(total, blocks);
  } catch (const Error& e) {
    throw Error(Errc::parse_error, std::string("partition text: ") + e.what());
  }
}

}  // namespace taskcodes
