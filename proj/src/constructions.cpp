#include "relutest/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relutest {

namespace {

void require_even(unsigned k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even, k >= 2");
}

}  // namespace

Rational xi(unsigned k) {
  require_even(k);
  const unsigned half = k / 2;
  Rational r(binomial(k - 2, half - 1), BigInt(1) << (k - 1));
  if (half % 2 == 0) r = -r;  // (-1)^{k/2 - 1}
  return r;
}

Rational parity_gap(unsigned k) {
  require_even(k);
  if (k > 24) throw std::invalid_argument("parity_gap supports k <= 24");

  // Coupled tuple: seeds are the first k-1 signs; the k-th makes the number
  // of +1s even.  relu of the sum accumulates exactly in 64-bit integers.
  std::int64_t coupled_sum = 0;
  const std::uint64_t seeds = 1ULL << (k - 1);
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const unsigned ones = static_cast<unsigned>(std::popcount(seed));
    const unsigned total_ones = ones + (ones % 2 == 1 ? 1 : 0);
    const std::int64_t sum = 2 * static_cast<std::int64_t>(total_ones) - k;
    if (sum > 0) coupled_sum += sum;
  }

  std::int64_t free_sum = 0;
  const std::uint64_t outcomes = 1ULL << k;
  for (std::uint64_t v = 0; v < outcomes; ++v) {
    const std::int64_t sum =
        2 * static_cast<std::int64_t>(std::popcount(v)) - k;
    if (sum > 0) free_sum += sum;
  }

  return Rational(BigInt(coupled_sum), BigInt(1) << (k - 1)) -
         Rational(BigInt(free_sum), BigInt(1) << k);
}

Rational expectation_gap(unsigned ell, const Rational& gamma) {
  if (ell == 0) throw std::invalid_argument("ell must be >= 1");
  const Rational half(1, 2);
  const Rational p_up = half + gamma;
  const Rational p_dn = half - gamma;
  if (p_up < 0 || p_up > 1) throw std::invalid_argument("gamma out of range");

  // Folds the distribution of the running sum; index j holds P[sum = 2j-step].
  auto expected_relu = [ell](const Rational& up, const Rational& dn) {
    std::vector<Rational> dist{Rational(1)};
    for (unsigned step = 0; step < ell; ++step) {
      std::vector<Rational> next(dist.size() + 1);
      for (std::size_t j = 0; j < dist.size(); ++j) {
        next[j + 1] += dist[j] * up;
        next[j] += dist[j] * dn;
      }
      dist = std::move(next);
    }
    Rational acc(0);
    for (std::size_t j = 0; j < dist.size(); ++j) {
      const std::int64_t sum =
          2 * static_cast<std::int64_t>(j) - static_cast<std::int64_t>(ell);
      if (sum > 0) acc += dist[j] * sum;
    }
    return acc;
  };

  return expected_relu(p_up, p_dn) - expected_relu(half, half);
}

bool check_k_minus_1_wise(unsigned k) {
  require_even(k);
  if (k > 16) throw std::invalid_argument("check_k_minus_1_wise supports k <= 16");
  const std::uint64_t seeds = 1ULL << (k - 1);
  // For each left-out coordinate d, the seed -> remaining-pattern map must be
  // a bijection of {0,1}^{k-1}; that is exactly uniformity of those k-1
  // coordinates.
  std::vector<std::uint8_t> seen(seeds);
  for (unsigned d = 0; d < k; ++d) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const unsigned ones = static_cast<unsigned>(std::popcount(seed));
      const std::uint64_t last_bit = (ones % 2 == 1) ? 1ULL : 0ULL;
      const std::uint64_t full = seed | (last_bit << (k - 1));
      // Drop coordinate d, keep the rest in order.
      const std::uint64_t low = full & ((1ULL << d) - 1);
      const std::uint64_t high = (full >> (d + 1)) << d;
      const std::uint64_t pattern = low | high;
      if (seen[pattern]) return false;
      seen[pattern] = 1;
    }
  }
  return true;
}

bool coupled_tuple_is_uniform(unsigned k) {
  require_even(k);
  if (k > 16) throw std::invalid_argument("supports k <= 16");
  const std::uint64_t seeds = 1ULL << (k - 1);
  std::vector<std::uint32_t> count(1ULL << k, 0);
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const unsigned ones = static_cast<unsigned>(std::popcount(seed));
    const std::uint64_t last_bit = (ones % 2 == 1) ? 1ULL : 0ULL;
    count[seed | (last_bit << (k - 1))]++;
  }
  // Uniformity over 2^k patterns would need every count equal; the coupled
  // tuple concentrates on half of them.
  for (auto c : count) {
    if (c != count[0]) return false;
  }
  return true;
}

VanillaHard vanilla_hardness_network(std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1e-3)) {
    throw std::invalid_argument("eps must be in (0, 1/1000)");
  }
  const double root = std::sqrt(eps) * static_cast<double>(n);
  const double rounded = std::round(root);
  if (std::abs(root - rounded) > 1e-9 * std::max(1.0, root) || rounded < 1.0) {
    throw std::invalid_argument("sqrt(eps) * n must be a positive integer");
  }
  const std::size_t unit = static_cast<std::size_t>(rounded);
  const std::size_t b1 = 10 * unit;
  const std::size_t b2 = 20 * unit;
  if (b1 + b2 > n) throw std::invalid_argument("blocks exceed n");

  const std::size_t m = n;
  std::vector<double> a(m * n, 0.0);
  std::vector<double> w(m, 0.0);
  for (std::size_t j = 0; j < b1; ++j) {
    for (std::size_t i = 0; i < b1; ++i) a[j * n + i] = 1.0;
    w[j] = 1.0;
  }
  for (std::size_t j = b1; j < b1 + b2; ++j) {
    for (std::size_t i = b1; i < b1 + b2; ++i) a[j * n + i] = 1.0;
    w[j] = -1.0;
  }
  return {ShlNetwork(n, m, std::move(a), std::move(w)), b1, b2};
}

BitVector KSetDistribution::indicator(std::size_t set_index) const {
  return BitVector::from_indices(n, sets.at(set_index));
}

void validate_distfree_params(std::size_t n, unsigned k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even, k >= 2");
  if (k % 4 == 0) {
    throw std::invalid_argument(
        "k divisible by 4 flips the coupling gap sign and is not supported");
  }
  if (n == 0 || n % k != 0) {
    throw std::invalid_argument("n must be a positive multiple of k");
  }
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
}

namespace {

KSetDistribution random_partition(std::size_t n, unsigned k, Rng& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  rng.shuffle(perm);
  KSetDistribution dist;
  dist.n = n;
  dist.k = k;
  dist.sets.resize(n / k);
  for (std::size_t b = 0; b < n / k; ++b) {
    auto& set = dist.sets[b];
    set.assign(perm.begin() + b * k, perm.begin() + (b + 1) * k);
    std::sort(set.begin(), set.end());
  }
  return dist;
}

DistFreeNet sample_distfree(std::size_t n, unsigned k, Rng& rng, bool coupled) {
  validate_distfree_params(n, k);
  const double gamma =
      static_cast<double>(xi(k)) / (8.0 * static_cast<double>(k));
  KSetDistribution dist = random_partition(n, k, rng);

  const std::size_t m = n;
  const std::size_t half = m / 2;
  std::vector<double> a(m * n, 0.0);
  std::vector<double> w(m, 0.0);

  // First half of the hidden layer ("P", output weight +1).
  for (std::size_t v = 0; v < half; ++v) {
    w[v] = 1.0;
    if (!coupled) {
      for (std::size_t i = 0; i < n; ++i) a[v * n + i] = rng.pm1();
    } else {
      for (const auto& set : dist.sets) {
        unsigned plus = 0;
        for (std::size_t pos = 0; pos + 1 < set.size(); ++pos) {
          const double sign = rng.pm1();
          a[v * n + set[pos]] = sign;
          if (sign > 0.0) plus++;
        }
        a[v * n + set.back()] = (plus % 2 == 1) ? 1.0 : -1.0;
      }
    }
  }

  // Second half ("N", output weight -1): signs biased toward +1.
  const double p_up = 0.5 + gamma;
  for (std::size_t v = half; v < m; ++v) {
    w[v] = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[v * n + i] = rng.bernoulli(p_up) ? 1.0 : -1.0;
    }
  }

  return DistFreeNet{ShlNetwork(n, m, std::move(a), std::move(w)),
                     std::move(dist), k, gamma};
}

}  // namespace

DistFreeNet sample_n1(std::size_t n, unsigned k, Rng& rng) {
  return sample_distfree(n, k, rng, /*coupled=*/false);
}

DistFreeNet sample_n2(std::size_t n, unsigned k, Rng& rng) {
  return sample_distfree(n, k, rng, /*coupled=*/true);
}

ShlNetwork partition_reduction(const std::vector<std::uint64_t>& items) {
  if (items.empty()) throw std::invalid_argument("empty item list");
  for (auto r : items) {
    if (r == 0) throw std::invalid_argument("items must be positive");
  }
  const std::size_t cnt = items.size();
  const std::size_t n = cnt + 1;
  const double total = static_cast<double>(
      std::accumulate(items.begin(), items.end(), std::uint64_t{0}));

  std::vector<double> a(3 * n, 0.0);
  for (std::size_t i = 0; i < cnt; ++i) {
    const double frac = static_cast<double>(items[i]) / total;
    a[0 * n + i] = frac;   // u_1 collects the chosen items
    a[1 * n + i] = -frac;  // u_2 the complement side
  }
  a[0 * n + cnt] = -0.5;  // control input balances both comparators
  a[1 * n + cnt] = 0.5;
  a[2 * n + cnt] = 1.0;

  // Reward 1/(4W): any imbalance costs at least 1/(2W) through u_1/u_2, so
  // the output is positive exactly when a perfect split exists, with a sign
  // margin of 1/(4W) that double arithmetic resolves safely.
  std::vector<double> w{-1.0, -1.0, 1.0 / (4.0 * total)};
  return ShlNetwork(n, 3, std::move(a), std::move(w));
}

namespace {

ShlNetwork complete_impl(std::size_t n, std::size_t m, const FixedWeights& fixed,
                         bool or_side) {
  if (n == 0 || m == 0) throw std::invalid_argument("empty network");
  if (4 * fixed.size() > m) {
    throw std::invalid_argument("more than m/4 fixed weights");
  }
  std::vector<double> w(m, or_side ? 1.0 : -1.0);
  for (const auto& [coord, value] : fixed) {
    validate_weight(value);
    if (coord.layer == 1) {
      if (coord.row >= m || coord.col != 0) {
        throw std::invalid_argument("bad output weight coordinate");
      }
      w[coord.row] = value;
    } else if (coord.layer != 0) {
      throw std::invalid_argument("layer must be 0 or 1");
    } else if (coord.row >= m || coord.col >= n) {
      throw std::invalid_argument("bad first-layer coordinate");
    }
  }

  std::vector<double> a(m * n);
  for (std::size_t j = 0; j < m; ++j) {
    // Zero side: feed positive-output nodes -1 so they never activate, and
    // negative-output nodes +1 so they punish every set bit.  OR side is the
    // mirror image.
    double fill = w[j] > 0.0 ? -1.0 : 1.0;
    if (or_side) fill = -fill;
    for (std::size_t i = 0; i < n; ++i) a[j * n + i] = fill;
  }
  for (const auto& [coord, value] : fixed) {
    if (coord.layer == 0) a[coord.row * n + coord.col] = value;
  }
  return ShlNetwork(n, m, std::move(a), std::move(w));
}

}  // namespace

ShlNetwork complete_to_zero(std::size_t n, std::size_t m,
                            const FixedWeights& fixed) {
  return complete_impl(n, m, fixed, /*or_side=*/false);
}

ShlNetwork complete_to_or(std::size_t n, std::size_t m,
                          const FixedWeights& fixed) {
  return complete_impl(n, m, fixed, /*or_side=*/true);
}

double mean_preactivation(const ShlNetwork& net, Rng& rng) {
  if (net.n <= 20) {
    const std::uint64_t total = 1ULL << net.n;
    double acc = 0.0;
    for (std::uint64_t c = 0; c < total; ++c) {
      BitVector x(net.n);
      for (std::size_t p = 0; p < net.n; ++p) x.set(p, (c >> p) & 1ULL);
      acc += eval_shl(net, x).value;
    }
    return acc / static_cast<double>(total);
  }
  const std::uint64_t samples = 100000;
  double acc = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    BitVector x(net.n);
    for (std::size_t p = 0; p < net.n; ++p) x.set(p, rng.bit());
    acc += eval_shl(net, x).value;
  }
  return acc / static_cast<double>(samples);
}

RepairResult repair_to_closest(const ShlNetwork& net, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must be in (0, 1)");
  }
  const double expectation = mean_preactivation(net, rng);
  const double budget = eps * static_cast<double>(net.m);
  const std::uint64_t flips = static_cast<std::uint64_t>(std::floor(budget));

  std::vector<double> a = net.a;
  std::vector<double> w = net.w;
  RepairResult out{net, "", 0, 0, expectation};

  auto set_row = [&](std::size_t j, double value) {
    for (std::size_t i = 0; i < net.n; ++i) a[j * net.n + i] = value;
    out.a_edits += net.n;
  };

  if (expectation > 0.0) {
    // Closer to OR.  Make every output weight positive if that fits the
    // budget; then one all-ones row turns the network into an exact OR.
    std::vector<std::size_t> nonpos;
    for (std::size_t j = 0; j < net.m; ++j) {
      if (w[j] <= 0.0) nonpos.push_back(j);
    }
    if (static_cast<double>(nonpos.size()) <= budget) {
      for (auto j : nonpos) w[j] = 1.0;
      out.w_edits = nonpos.size();
      set_row(0, 1.0);
      out.branch = "or-exact";
    } else {
      // Most negative output weights first; their rows become all-ones so
      // each contributes +|x| to every nonzero input.
      std::sort(nonpos.begin(), nonpos.end(), [&](std::size_t x, std::size_t y) {
        if (w[x] != w[y]) return w[x] < w[y];
        return x < y;
      });
      for (std::uint64_t c = 0; c < flips && c < nonpos.size(); ++c) {
        w[nonpos[c]] = 1.0;
        out.w_edits++;
        set_row(nonpos[c], 1.0);
      }
      out.branch = "or-statistical";
    }
  } else {
    // Closer to the constant 0.  All-negative output weights silence the
    // network outright when that fits the budget.
    std::vector<std::size_t> nonneg;
    for (std::size_t j = 0; j < net.m; ++j) {
      if (w[j] >= 0.0) nonneg.push_back(j);
    }
    if (static_cast<double>(nonneg.size()) <= budget) {
      for (auto j : nonneg) w[j] = -1.0;
      out.w_edits = nonneg.size();
      out.branch = "zero-exact";
    } else {
      // Largest output weights first; their rows become all-ones so each
      // flipped node now drags the value down by |x|.
      std::sort(nonneg.begin(), nonneg.end(), [&](std::size_t x, std::size_t y) {
        if (w[x] != w[y]) return w[x] > w[y];
        return x < y;
      });
      for (std::uint64_t c = 0; c < flips && c < nonneg.size(); ++c) {
        w[nonneg[c]] = -1.0;
        out.w_edits++;
        set_row(nonneg[c], 1.0);
      }
      out.branch = "zero-statistical";
    }
  }

  out.net = ShlNetwork(net.n, net.m, std::move(a), std::move(w));
  return out;
}

}  // namespace relutest
