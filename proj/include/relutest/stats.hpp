// Small statistics helpers shared by the game simulator and the experiment
// harness.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace relutest {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;  // Phi^-1(0.975)
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  // The degenerate endpoints are exactly 0 and 1; the algebra above only
  // reaches them up to cancellation error.
  if (successes == 0) out.low = 0.0;
  if (successes == trials) out.high = 1.0;
  return out;
}

}  // namespace relutest
