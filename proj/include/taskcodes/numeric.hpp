#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace taskcodes {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// log2(sum_i 2^{v_i}); -inf entries are zero terms.
inline double log2_sum_exp2(std::span<const double> values) {
  double peak = -kInf;
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (double v : values) {
    if (v != -kInf) acc.add(std::exp2(v - peak));
  }
  return peak + std::log2(acc.value());
}

// Accumulates log2(sum 2^{v}) in a streaming fashion.
class Log2SumAccumulator {
 public:
  void add(double v) {
    if (v == -kInf) return;
    if (v == kInf || peak_ == kInf) {
      peak_ = kInf;
      return;
    }
    if (v > peak_) {
      scaled_ = scaled_ * std::exp2(peak_ - v) + 1.0;
      peak_ = v;
    } else {
      scaled_ += std::exp2(v - peak_);
    }
  }

  double value() const {
    if (peak_ == -kInf || peak_ == kInf) return peak_;
    return peak_ + std::log2(scaled_);
  }

 private:
  double peak_ = -kInf;
  double scaled_ = 0.0;
};

}  // namespace taskcodes
