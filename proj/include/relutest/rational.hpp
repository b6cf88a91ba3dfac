// Exact arbitrary-precision rationals for the combinatorial identities.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace relutest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace relutest
