// Exact ground-truth oracles by exhaustive enumeration at small n.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "relutest/constructions.hpp"
#include "relutest/model.hpp"
#include "relutest/rational.hpp"

namespace relutest {

enum class Target { Zero, Or };

const char* target_name(Target t);

// Target output bit on input x (OR: 1 iff x is nonzero).
int target_bit(Target t, const BitVector& x);

// True iff the network's output bit matches the target on every input.
// Enumeration, n <= 24.
bool computes_exactly(const ShlNetwork& net, Target target);
bool computes_exactly(const DeepNetwork& net, Target target);

// Multi-output near-constant check: every output bit equals b on all x != 0,
// and all outputs are 0 at x = 0.
bool computes_near_constant(const MoNetwork& net, const std::vector<int>& b);

// First input (in counter order) where the network disagrees with the target.
std::optional<BitVector> counterexample(const ShlNetwork& net, Target target);

// Exact fraction of inputs where the output bit differs from the target, as
// a dyadic rational (denominator 2^n before reduction).
Rational delta_distance(const ShlNetwork& net, Target target);

// Tiny-scale exhaustive edit search: tries every way of changing at most
// floor(eps*n*m) first-layer weights and floor(eps*m) output weights to
// values from the grid, looking for an edit whose result is delta-close to
// the target.  "exhausted" is not a farness proof (true weights are
// continuous); it only rules out the grid.
struct FarCertificate {
  bool close = false;
  std::vector<std::pair<WeightCoord, double>> edits;
  std::uint64_t assignments_tried = 0;
};

FarCertificate far_certificate_tiny(
    const ShlNetwork& net, Target target, double epsilon, double delta,
    const std::vector<double>& grid = {-1.0, 0.0, 1.0});

}  // namespace relutest
