// Distribution-free query protocol: the lazy sample oracle, the on-the-fly
// answer process for the two random network families, and the N1-vs-N2
// distinguishing-game simulator.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relutest/bits.hpp"
#include "relutest/constructions.hpp"
#include "relutest/rng.hpp"

namespace relutest {

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sample access to a supported-input distribution.  Sample i is drawn from a
// stream derived from (seed, i) on first touch and cached, so the value of
// sample i does not depend on the order samples are first accessed in.
class InputSampleOracle {
 public:
  InputSampleOracle(KSetDistribution dist, std::uint64_t seed);

  // j-th bit of sample y_i; lazily materializes y_i.
  int query(std::uint64_t sample_index, std::size_t bit_index);

  // Full sample; lazily materializes it.
  const BitVector& sample(std::uint64_t sample_index);

  // Which k-set a materialized sample picked (diagnostic).
  std::uint64_t chosen_block(std::uint64_t sample_index) const;

  std::uint64_t materialized() const { return cache_.size(); }
  const std::vector<std::pair<std::uint64_t, std::size_t>>& log() const {
    return log_;
  }
  const KSetDistribution& distribution() const { return dist_; }

 private:
  KSetDistribution dist_;
  std::uint64_t seed_ = 0;
  std::unordered_map<std::uint64_t, BitVector> cache_;
  std::unordered_map<std::uint64_t, std::uint64_t> chosen_;
  std::vector<std::pair<std::uint64_t, std::size_t>> log_;
};

enum class World { N1, N2 };

const char* world_name(World w);

// Everything a single input-node query reveals: the node's edge weight into
// every hidden node, and the node's bit in each materialized sample.
struct NodeReveal {
  std::vector<double> weights;
  std::vector<int> sample_bits;
};

// Answers queries for a random network from family N1 or N2 without ever
// materializing the whole network.  Node identities are randomized through a
// lazily revealed uniform assignment of nodes to partition slots; parity
// coupling in N2 is resolved on the k-th queried member of a k-set, so any
// transcript touching at most k-1 members per set consumes the random stream
// identically in both worlds.
class AnswerProcess {
 public:
  static constexpr std::uint64_t kNoBudget = ~std::uint64_t{0};

  AnswerProcess(World world, std::size_t n, unsigned k, std::uint64_t seed,
                std::uint64_t budget = kNoBudget);

  // Reveals one input node; counted against the budget on first touch.
  const NodeReveal& query_node(std::size_t input);

  // Single-edge view of the same reveal; counted per node, not per edge.
  double query_edge(std::size_t hidden, std::size_t input);

  // Bit of sample_index at the given node.  Materializes the sample and
  // reveals the node (charging it) since the bit exposes the node's block.
  int sample_bit(std::uint64_t sample_index, std::size_t input);

  // Ensures at least `count` samples are drawn; sample draws are free.
  void materialize_samples(std::uint64_t count);

  // Second-layer weights, known to the tester for free.
  std::vector<double> output_weights() const;

  // Partition block of an already-revealed node (diagnostic; throws for
  // unqueried nodes so it cannot leak hidden structure).
  std::uint64_t block_of(std::size_t input) const;

  World world() const { return world_; }
  std::size_t n() const { return n_; }
  unsigned k() const { return k_; }
  double gamma() const { return gamma_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t nodes_queried() const { return nodes_queried_; }
  std::uint64_t samples_materialized() const { return sample_blocks_.size(); }

 private:
  std::uint64_t draw_slot_();
  void refresh_sample_bits_(std::size_t input, NodeReveal& reveal);

  World world_;
  std::size_t n_;
  unsigned k_;
  double gamma_;
  std::uint64_t budget_;
  Rng rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> fy_map_;
  std::uint64_t assigned_ = 0;
  std::uint64_t nodes_queried_ = 0;
  std::unordered_map<std::size_t, std::uint64_t> slot_of_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> block_queried_;
  std::unordered_map<std::size_t, NodeReveal> revealed_;
  std::vector<std::uint64_t> sample_blocks_;
};

AnswerProcess lazy_process(World world, std::size_t n, unsigned k,
                           std::uint64_t seed,
                           std::uint64_t budget = AnswerProcess::kNoBudget);

// Probability that a uniform q-subset of [n] contains a complete k-set of a
// random partition, estimated by Monte Carlo, plus the exact expected count
// (n/k) * C(n-k, q-k) / C(n, q) of completed sets.
struct CompletionEstimate {
  double empirical = 0.0;
  double expected_count = 0.0;
};
CompletionEstimate completion_probability(std::size_t n, unsigned k,
                                          std::uint64_t q, std::uint64_t trials,
                                          std::uint64_t seed);

// A strategy in the distinguishing game: sees the answer process (with its
// budget) plus private randomness, returns true to guess world N2.
using GameTester = std::function<bool(AnswerProcess&, Rng&)>;

struct GameResult {
  double p_n2_given_n2 = 0.0;
  double p_n2_given_n1 = 0.0;
  double advantage = 0.0;
  double ci_low = 0.0;   // conservative 95% band for the advantage,
  double ci_high = 1.0;  // from the two Wilson intervals
  double mean_queries = 0.0;  // nodes revealed per process, both worlds
  std::uint64_t trials = 0;
  std::uint64_t budget = 0;
};

// Runs `trials` independent rounds per world with derived seeds.  The result
// is identical for every thread count: trial outcomes land in indexed slots
// and are reduced in order.
GameResult distinguishing_game(const GameTester& tester, std::size_t n,
                               unsigned k, std::uint64_t budget,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned threads = 1);

// Queries up to the budget of random distinct nodes and guesses N2 when two
// of them show identical edge weights into the positive-output half.
bool pair_hunting_tester(AnswerProcess& process, Rng& rng);

// Ignores the oracles; a fair coin.  Baseline with advantage ~ 0.
bool random_guess_tester(AnswerProcess& process, Rng& rng);

}  // namespace relutest
