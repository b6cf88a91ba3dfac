// Reference constructions: hard instances, distribution-specific network
// families, exact combinatorial identities, completions, and the closeness
// repair procedure.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relutest/model.hpp"
#include "relutest/rational.hpp"
#include "relutest/rng.hpp"

namespace relutest {

// Exact expected gap E[relu(sum of parity-coupled k-tuple)] -
// E[relu(sum of k uniform signs)], in closed form:
//   xi(k) = ((-1)^{k/2-1} / 2^{k-1}) * C(k-2, k/2-1),   k even.
Rational xi(unsigned k);

// The same gap by direct enumeration of both outcome spaces (2^{k-1} coupled
// seeds, 2^k unrestricted sign vectors).  k even, k <= 24.
Rational parity_gap(unsigned k);

// E[relu(sum of ell signs with +1-bias gamma)] - E[relu(sum of ell uniform
// signs)], exact via distribution folding.
Rational expectation_gap(unsigned ell, const Rational& gamma);

// Any k-1 coordinates of the parity-coupled k-tuple are exactly uniform.
bool check_k_minus_1_wise(unsigned k);  // k even, k <= 16

// The full k-tuple is NOT uniform (odd-parity sign patterns never occur).
bool coupled_tuple_is_uniform(unsigned k);

// Hard instance for uniform-random sampling: two input/hidden blocks of size
// 10 sqrt(eps) n and 20 sqrt(eps) n wired with weight 1, second layer +1 on
// the first block and -1 on the second.  Outputs 1 only when the first block
// outweighs the second, which is exponentially unlikely under uniform inputs.
struct VanillaHard {
  ShlNetwork net;
  std::size_t block1 = 0;  // |I_1| = |H_1|
  std::size_t block2 = 0;  // |I_2| = |H_2|
};
VanillaHard vanilla_hardness_network(std::size_t n, double eps);

// Supported-input distribution: uniform over the indicator vectors of n/k
// disjoint k-sets partitioning [n].
struct KSetDistribution {
  std::size_t n = 0;
  unsigned k = 0;
  std::vector<std::vector<std::uint32_t>> sets;  // each sorted ascending

  BitVector indicator(std::size_t set_index) const;
};

// k must be even and not divisible by 4 (the sign of the coupling gap flips
// otherwise); n must be a positive multiple of k.  Errors out, never adjusts.
void validate_distfree_params(std::size_t n, unsigned k);

// n = m; first half of the hidden nodes has output weight +1 ("P"), second
// half -1 ("N").  Edges into N are +1 with probability 1/2 + gamma in both
// families, gamma = xi(k) / (8k).  Edges into P are uniform signs in N1; in
// N2 they are parity-coupled within each k-set of the partition (the last
// member in sorted order is +1 iff the number of +1s among the first k-1 is
// odd).
struct DistFreeNet {
  ShlNetwork net;
  KSetDistribution dist;
  unsigned k = 0;
  double gamma = 0.0;
};
DistFreeNet sample_n1(std::size_t n, unsigned k, Rng& rng);
DistFreeNet sample_n2(std::size_t n, unsigned k, Rng& rng);

// PARTITION instance -> 3-hidden-node network such that some input lights
// the output iff the items split into two equal-sum halves.
ShlNetwork partition_reduction(const std::vector<std::uint64_t>& items);

// Weight coordinate (layer, row, col); layer 0 = first layer, layer 1 = the
// output weights (col = 0).
struct WeightCoord {
  std::uint32_t layer = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  auto operator<=>(const WeightCoord&) const = default;
};

using FixedWeights = std::map<WeightCoord, double>;

// Completes a partial assignment of at most m/4 weights to a network that
// computes the constant 0 (resp. OR): free output weights -1 (resp. +1);
// each free first-layer weight is chosen against (resp. with) the sign of its
// node's output weight.
ShlNetwork complete_to_zero(std::size_t n, std::size_t m,
                            const FixedWeights& fixed);
ShlNetwork complete_to_or(std::size_t n, std::size_t m,
                          const FixedWeights& fixed);

// Mean pre-activation over uniform inputs: exact for n <= 20 (full
// enumeration), Monte Carlo with 10^5 samples above.
double mean_preactivation(const ShlNetwork& net, Rng& rng);

// Repairs a network toward the nearer of {constant 0, OR}: the branch is
// chosen by the sign of the mean pre-activation (ties take the zero branch).
// Within budget (eps m output edits, eps n m first-layer edits) the repair is
// exact; otherwise floor(eps m) nodes are rewired for statistical closeness.
struct RepairResult {
  ShlNetwork net;
  std::string branch;  // "zero-exact", "zero-statistical", "or-exact", "or-statistical"
  std::uint64_t w_edits = 0;
  std::uint64_t a_edits = 0;
  double expectation = 0.0;
};
RepairResult repair_to_closest(const ShlNetwork& net, double eps, Rng& rng);

}  // namespace relutest
