// Property testers for single-hidden-layer networks.
//
// Two-sided testers (all_zero_tester / or_tester) sample s input and t hidden
// nodes, scale by n m / (s t), shift by a bias of (1/16) eps n m, and decide
// by exact search over assignments of the sampled inputs.  One-sided testers
// read the whole hidden layer on a smaller input sample and use raw values;
// their rejection witnesses are genuine: the full network evaluated on the
// embedded witness reproduces the sampled value exactly.
#pragma once

#include <optional>
#include <string>

#include "relutest/search.hpp"
#include "relutest/subsample.hpp"

namespace relutest {

struct Verdict {
  bool accept = true;
  std::uint64_t queries = 0;               // distinct weight queries
  std::optional<BitVector> witness;        // full-length input, on rejection
  std::vector<std::uint64_t> sizes;        // per-layer sample sizes actually used
  bool clamped = false;
  double bias = 0.0;
  double value_scale = 1.0;
  std::string tester;
  std::string note;
};

Verdict all_zero_tester(const ShlNetwork& net, const TesterConfig& cfg);
Verdict or_tester(const ShlNetwork& net, const TesterConfig& cfg);

// Same testers with explicit sample sizes (the formula defaults are
// astronomically conservative; experiments pin s and t directly while keeping
// the bias formula).
Verdict all_zero_tester_sized(const ShlNetwork& net, const TesterConfig& cfg,
                              std::uint64_t s, std::uint64_t t);
Verdict or_tester_sized(const ShlNetwork& net, const TesterConfig& cfg,
                        std::uint64_t s, std::uint64_t t);

Verdict one_sided_zero_tester(const ShlNetwork& net, const TesterConfig& cfg);
Verdict one_sided_or_tester(const ShlNetwork& net, const TesterConfig& cfg);

// Baseline sampling tester: evaluate the full network on uniform random
// inputs and reject on any 1 output.  `queries` counts full evaluations, not
// weight reads.
Verdict vanilla_tester(const ShlNetwork& net, std::uint64_t num_samples,
                       Rng& rng);

// Embed an assignment over sampled indices into a full-length input.
BitVector embed_assignment(std::size_t n, const std::vector<std::uint32_t>& idx,
                           const BitVector& xs);

}  // namespace relutest
