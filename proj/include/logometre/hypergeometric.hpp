#pragma once

#include <cstdint>

namespace logometre {

/// Saturation bound for signed log10 tail probabilities.
inline constexpr double kLog10Cap = 308.0;

/// ln P(X = i) for X ~ Hypergeometric(population, successes, draws).
double hypergeometric_log_pmf(std::uint64_t population, std::uint64_t successes,
                              std::uint64_t draws, std::uint64_t i);

/// ln P(X >= f); -inf when f exceeds the support.
double hypergeometric_log_upper_tail(std::uint64_t population, std::uint64_t successes,
                                     std::uint64_t draws, std::uint64_t f);

/// ln P(X <= f); -inf when f is below the support.
double hypergeometric_log_lower_tail(std::uint64_t population, std::uint64_t successes,
                                     std::uint64_t draws, std::uint64_t f);

/// Lafon-style specificity of an observed count f for a part of size t drawn
/// from a whole of size T containing F occurrences:
///   -log10 P(X >= f)  when f >= t*F/T  (over-represented, >= 0)
///   +log10 P(X <= f)  otherwise        (under-represented, <= 0)
/// Saturates at +/-kLog10Cap. Degenerate inputs (T, F or t zero) score 0.
double specificity_log10p(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f);

/// Normal approximation (f - tF/T) / sqrt(t (F/T)(1-F/T)(T-t)/(T-1)); 0 when
/// the variance vanishes.
double specificity_z(std::uint64_t T, std::uint64_t F, std::uint64_t t, std::uint64_t f);

}  // namespace logometre
