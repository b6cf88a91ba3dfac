#include "relutest/distfree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "relutest/stats.hpp"

namespace relutest {

InputSampleOracle::InputSampleOracle(KSetDistribution dist, std::uint64_t seed)
    : dist_(std::move(dist)), seed_(seed) {
  if (dist_.n == 0 || dist_.k == 0 || dist_.sets.empty()) {
    throw std::invalid_argument("empty distribution");
  }
}

int InputSampleOracle::query(std::uint64_t sample_index,
                             std::size_t bit_index) {
  if (bit_index >= dist_.n) throw std::out_of_range("bit index out of range");
  log_.emplace_back(sample_index, bit_index);
  return sample(sample_index).test(bit_index) ? 1 : 0;
}

const BitVector& InputSampleOracle::sample(std::uint64_t sample_index) {
  auto it = cache_.find(sample_index);
  if (it != cache_.end()) return it->second;
  Rng rng(derive_seed(seed_, sample_index, "input-sample"));
  const std::uint64_t b = rng.below(dist_.sets.size());
  chosen_.emplace(sample_index, b);
  return cache_.emplace(sample_index, dist_.indicator(b)).first->second;
}

std::uint64_t InputSampleOracle::chosen_block(std::uint64_t sample_index) const {
  return chosen_.at(sample_index);
}

const char* world_name(World w) { return w == World::N1 ? "N1" : "N2"; }

AnswerProcess::AnswerProcess(World world, std::size_t n, unsigned k,
                             std::uint64_t seed, std::uint64_t budget)
    : world_(world), n_(n), k_(k), budget_(budget), rng_(seed) {
  validate_distfree_params(n, k);
  gamma_ = static_cast<double>(xi(k)) / (8.0 * static_cast<double>(k));
}

std::uint64_t AnswerProcess::draw_slot_() {
  // Partial Fisher-Yates over the slot array: position `assigned_` receives a
  // uniform value from the not-yet-assigned suffix.
  const std::uint64_t r = assigned_ + rng_.below(n_ - assigned_);
  auto value_at = [this](std::uint64_t pos) {
    auto it = fy_map_.find(pos);
    return it == fy_map_.end() ? pos : it->second;
  };
  const std::uint64_t out = value_at(r);
  fy_map_[r] = value_at(assigned_);
  assigned_++;
  return out;
}

void AnswerProcess::refresh_sample_bits_(std::size_t input,
                                         NodeReveal& reveal) {
  const std::uint64_t block = slot_of_.at(input) / k_;
  while (reveal.sample_bits.size() < sample_blocks_.size()) {
    const std::uint64_t idx = reveal.sample_bits.size();
    reveal.sample_bits.push_back(sample_blocks_[idx] == block ? 1 : 0);
  }
}

const NodeReveal& AnswerProcess::query_node(std::size_t input) {
  if (input >= n_) throw std::out_of_range("input node out of range");
  auto hit = revealed_.find(input);
  if (hit != revealed_.end()) {
    refresh_sample_bits_(input, hit->second);
    return hit->second;
  }
  if (nodes_queried_ >= budget_) {
    throw BudgetExceededError("node query budget exhausted");
  }
  nodes_queried_++;

  const std::uint64_t slot = draw_slot_();
  slot_of_[input] = slot;
  const std::uint64_t block = slot / k_;
  auto& members = block_queried_[block];
  // In N2, the last member of a fully queried k-set is forced by parity; all
  // earlier members (and everything in N1) are drawn from the same stream.
  const bool forced = world_ == World::N2 && members.size() == k_ - 1u;

  NodeReveal reveal;
  reveal.weights.resize(n_);
  const std::size_t half = n_ / 2;
  for (std::size_t v = 0; v < half; ++v) {
    if (forced) {
      unsigned plus = 0;
      for (auto u : members) {
        if (revealed_.at(u).weights[v] > 0.0) plus++;
      }
      reveal.weights[v] = (plus % 2 == 1) ? 1.0 : -1.0;
    } else {
      reveal.weights[v] = rng_.pm1();
    }
  }
  const double p_up = 0.5 + gamma_;
  for (std::size_t v = half; v < n_; ++v) {
    reveal.weights[v] = rng_.bernoulli(p_up) ? 1.0 : -1.0;
  }

  members.push_back(input);
  auto& stored = revealed_[input] = std::move(reveal);
  refresh_sample_bits_(input, stored);
  return stored;
}

double AnswerProcess::query_edge(std::size_t hidden, std::size_t input) {
  if (hidden >= n_) throw std::out_of_range("hidden node out of range");
  return query_node(input).weights[hidden];
}

int AnswerProcess::sample_bit(std::uint64_t sample_index, std::size_t input) {
  materialize_samples(sample_index + 1);
  return query_node(input).sample_bits[sample_index];
}

void AnswerProcess::materialize_samples(std::uint64_t count) {
  while (sample_blocks_.size() < count) {
    sample_blocks_.push_back(rng_.below(n_ / k_));
  }
}

std::vector<double> AnswerProcess::output_weights() const {
  std::vector<double> w(n_, -1.0);
  for (std::size_t v = 0; v < n_ / 2; ++v) w[v] = 1.0;
  return w;
}

std::uint64_t AnswerProcess::block_of(std::size_t input) const {
  if (input >= n_) throw std::out_of_range("input node out of range");
  auto it = slot_of_.find(input);
  if (it == slot_of_.end()) {
    throw std::invalid_argument("block_of: node has not been queried");
  }
  return it->second / k_;
}

AnswerProcess lazy_process(World world, std::size_t n, unsigned k,
                           std::uint64_t seed, std::uint64_t budget) {
  return AnswerProcess(world, n, k, seed, budget);
}

CompletionEstimate completion_probability(std::size_t n, unsigned k,
                                          std::uint64_t q,
                                          std::uint64_t trials,
                                          std::uint64_t seed) {
  validate_distfree_params(n, k);
  if (q > n) throw std::invalid_argument("q must be at most n");

  CompletionEstimate out;
  // Expected number of completed k-sets: (n/k) * C(n-k, q-k) / C(n, q),
  // evaluated as a telescoping product to stay in double range.
  if (q >= k) {
    double count = static_cast<double>(n) / static_cast<double>(k);
    for (unsigned j = 0; j < k; ++j) {
      count *= static_cast<double>(q - j) / static_cast<double>(n - j);
    }
    out.expected_count = count;
  }

  // By symmetry the partition can stay fixed as consecutive blocks while the
  // q-subset is drawn uniformly.
  Rng rng(seed);
  std::vector<std::uint32_t> hits(n / k);
  std::uint64_t completed_runs = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::fill(hits.begin(), hits.end(), 0u);
    bool completed = false;
    for (auto pick : rng.sample_without_replacement(n, q)) {
      if (++hits[pick / k] == k) completed = true;
    }
    if (completed) completed_runs++;
  }
  out.empirical = trials == 0
                      ? 0.0
                      : static_cast<double>(completed_runs) /
                            static_cast<double>(trials);
  return out;
}

GameResult distinguishing_game(const GameTester& tester, std::size_t n,
                               unsigned k, std::uint64_t budget,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned threads) {
  validate_distfree_params(n, k);
  if (trials == 0) throw std::invalid_argument("trials must be positive");

  struct TrialOutcome {
    std::uint8_t guess_n2_under_n2 = 0;
    std::uint8_t guess_n2_under_n1 = 0;
    std::uint64_t queries_n2 = 0;
    std::uint64_t queries_n1 = 0;
  };
  std::vector<TrialOutcome> slots(trials);

  auto run_trial = [&](std::uint64_t t) {
    TrialOutcome& slot = slots[t];
    {
      AnswerProcess process(World::N2, n, k,
                            derive_seed(seed, t, "game-world-n2"), budget);
      Rng tester_rng(derive_seed(seed, t, "game-tester-n2"));
      slot.guess_n2_under_n2 = tester(process, tester_rng) ? 1 : 0;
      slot.queries_n2 = process.nodes_queried();
    }
    {
      AnswerProcess process(World::N1, n, k,
                            derive_seed(seed, t, "game-world-n1"), budget);
      Rng tester_rng(derive_seed(seed, t, "game-tester-n1"));
      slot.guess_n2_under_n1 = tester(process, tester_rng) ? 1 : 0;
      slot.queries_n1 = process.nodes_queried();
    }
  };

  if (threads <= 1 || trials == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t t = w; t < trials; t += workers) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t n2_under_n2 = 0;
  std::uint64_t n2_under_n1 = 0;
  std::uint64_t total_queries = 0;
  for (const auto& slot : slots) {
    n2_under_n2 += slot.guess_n2_under_n2;
    n2_under_n1 += slot.guess_n2_under_n1;
    total_queries += slot.queries_n2 + slot.queries_n1;
  }

  GameResult out;
  out.trials = trials;
  out.budget = budget;
  out.p_n2_given_n2 =
      static_cast<double>(n2_under_n2) / static_cast<double>(trials);
  out.p_n2_given_n1 =
      static_cast<double>(n2_under_n1) / static_cast<double>(trials);
  out.advantage = std::abs(out.p_n2_given_n2 - out.p_n2_given_n1);
  out.mean_queries = static_cast<double>(total_queries) /
                     static_cast<double>(2 * trials);

  const Interval i2 = wilson_interval(n2_under_n2, trials);
  const Interval i1 = wilson_interval(n2_under_n1, trials);
  out.ci_low = std::max(0.0, std::max(i2.low - i1.high, i1.low - i2.high));
  out.ci_high = std::min(1.0, std::max(i2.high - i1.low, i1.high - i2.low));
  return out;
}

bool pair_hunting_tester(AnswerProcess& process, Rng& rng) {
  const std::size_t n = process.n();
  const std::uint64_t want =
      std::min<std::uint64_t>(process.budget(), static_cast<std::uint64_t>(n));
  const auto picks = rng.sample_without_replacement(n, want);
  const auto outs = process.output_weights();

  std::unordered_map<std::uint64_t, std::size_t> seen;
  auto positive_part_equal = [&](const NodeReveal& a, const NodeReveal& b) {
    for (std::size_t v = 0; v < outs.size(); ++v) {
      if (outs[v] > 0.0 && (a.weights[v] > 0.0) != (b.weights[v] > 0.0)) {
        return false;
      }
    }
    return true;
  };

  for (auto node : picks) {
    const NodeReveal& reveal = process.query_node(node);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t v = 0; v < outs.size(); ++v) {
      if (outs[v] > 0.0) {
        h ^= reveal.weights[v] > 0.0 ? 0x9dULL : 0x35ULL;
        h *= 1099511628211ULL;
      }
    }
    auto [it, fresh] = seen.emplace(h, node);
    if (!fresh &&
        positive_part_equal(reveal, process.query_node(it->second))) {
      return true;
    }
  }
  return false;
}

bool random_guess_tester(AnswerProcess&, Rng& rng) { return rng.bit(); }

}  // namespace relutest
