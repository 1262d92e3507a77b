#include "logometre/hypergeometric.hpp"

#include "logometre/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace logometre {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// terms this far below the running maximum no longer move a double sum
constexpr double kNegligible = 40.0;

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

struct Support {
  std::uint64_t lo, hi;
};

Support support(std::uint64_t T, std::uint64_t F, std::uint64_t t) {
  if (F > T || t > T) {
    throw Error(errors::kInvalidArgument, "hypergeometric parameters require F <= T and t <= T");
  }
  const std::uint64_t failures = T - F;
  return {t > failures ? t - failures : 0, std::min(F, t)};
}

// Running log-sum-exp accumulator.
class LogSum {
public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term > max_) {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      sum_ += std::exp(log_term - max_);
    }
  }
  double max() const { return max_; }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace

double hypergeometric_log_pmf(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t i) {
  const auto s = support(T, F, t);
  if (i < s.lo || i > s.hi) return kNegInf;
  return log_choose(F, i) + log_choose(T - F, t - i) - log_choose(T, t);
}

double hypergeometric_log_upper_tail(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  const auto s = support(T, F, t);
  if (f <= s.lo) return 0.0;
  if (f > s.hi) return kNegInf;
  LogSum acc;
  double previous = kNegInf;
  for (std::uint64_t i = f; i <= s.hi; ++i) {
    const double term = hypergeometric_log_pmf(T, F, t, i);
    acc.add(term);
    // the pmf is unimodal: once decreasing and negligible, stop
    if (term < previous && term < acc.max() - kNegligible) break;
    previous = term;
  }
  return std::min(0.0, acc.value());
}

double hypergeometric_log_lower_tail(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  const auto s = support(T, F, t);
  if (f >= s.hi) return 0.0;
  if (f < s.lo) return kNegInf;
  LogSum acc;
  double previous = kNegInf;
  for (std::uint64_t i = f + 1; i-- > s.lo;) {
    const double term = hypergeometric_log_pmf(T, F, t, i);
    acc.add(term);
    if (term < previous && term < acc.max() - kNegligible) break;
    previous = term;
  }
  return std::min(0.0, acc.value());
}

namespace {

void check_counts(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  if (F > T || t > T || f > std::min(F, t) || (t > T - F && f < t - (T - F))) {
    throw Error(errors::kInvalidArgument,
                "inconsistent specificity counts (T=" + std::to_string(T) + ", F=" + std::to_string(F) +
                    ", t=" + std::to_string(t) + ", f=" + std::to_string(f) + ")");
  }
}

// sign of f - t*F/T, computed exactly
int deviation_sign(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  const auto lhs = static_cast<unsigned __int128>(f) * T;
  const auto rhs = static_cast<unsigned __int128>(t) * F;
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

}  // namespace

double specificity_log10p(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  check_counts(T, F, t, f);
  if (T == 0 || F == 0 || t == 0) return 0.0;
  if (deviation_sign(T, F, t, f) >= 0) {
    const double v = -hypergeometric_log_upper_tail(T, F, t, f) / std::log(10.0);
    return std::clamp(v, 0.0, kLog10Cap);
  }
  const double v = hypergeometric_log_lower_tail(T, F, t, f) / std::log(10.0);
  return std::clamp(v, -kLog10Cap, 0.0);
}

double specificity_z(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f) {
  check_counts(T, F, t, f);
  if (T <= 1 || F == 0 || t == 0) return 0.0;
  const double p = static_cast<double>(F) / static_cast<double>(T);
  const double variance = static_cast<double>(t) * p * (1.0 - p) * static_cast<double>(T - t) /
                          static_cast<double>(T - 1);
  if (!(variance > 0.0)) return 0.0;
  const auto lhs = static_cast<__int128>(f) * static_cast<__int128>(T);
  const auto rhs = static_cast<__int128>(t) * static_cast<__int128>(F);
  const double deviation = static_cast<double>(lhs - rhs) / static_cast<double>(T);
  return deviation / std::sqrt(variance);
}

}  // namespace logometre
