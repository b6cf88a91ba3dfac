// Deterministic random source used across the library.
//
// Everything downstream (sample plans, generated networks, experiment trials)
// must be reproducible from a single 64-bit seed, byte-for-byte, regardless of
// platform or thread count.  std::mt19937_64 is fully specified by the
// standard; the helpers below avoid std::uniform_* distributions, whose
// outputs are implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace relutest {

// Stateless 64-bit finalizer (splitmix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over the label bytes.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream seed for (base seed, trial index, stream label):
//   mix64(mix64(mix64(seed) ^ trial) ^ fnv1a64(label))
// Distinct trials and labels land in distinct, decorrelated streams; plain
// XOR of seed and trial index would correlate adjacent mt19937_64 states.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial,
                                    std::string_view label) {
  return mix64(mix64(mix64(seed) ^ trial) ^ fnv1a64(label));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t u64() { return gen_(); }

  // Uniform integer in [0, bound), bound >= 1.  Rejection sampling keeps the
  // result exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below: zero bound");
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Uniform over {-1.0, +1.0}.
  double pm1() { return (gen_() & 1u) ? 1.0 : -1.0; }

  bool bit() { return (gen_() & 1u) != 0; }

  // s distinct indices from [0, n), returned sorted ascending.
  std::vector<std::uint32_t> sample_without_replacement(std::uint64_t n,
                                                        std::uint64_t s);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::uint64_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace relutest
