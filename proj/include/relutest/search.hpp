// Decision search over the sampled subnetwork: does some assignment of the
// sampled input bits push the (scaled) value past a threshold?
//
// Small supports are enumerated exhaustively in ascending lexicographic order
// (so the reported witness is the lexicographically first one).  Larger
// supports switch to an exact branch-and-bound over partial assignments: rows
// with positive output weight can at best gain their remaining positive
// column mass, rows with negative output weight at best keep their remaining
// negative mass out, which gives a sound upper bound for pruning.  Both paths
// share a node budget of 2^enum_cap and throw EnumerationCapError beyond it —
// the cost of exactness is explicit, never silently truncated.
#pragma once

#include <cstdint>

#include "relutest/subsample.hpp"

namespace relutest {

struct SearchSpec {
  bool negate = false;       // search on -w (used by the OR-side conditions)
  double factor = 1.0;       // positive multiplier (the plan's n m / s t scale)
  double threshold = 0.0;    // compare factor * sum  vs  threshold
  bool strict = true;        // true: require > threshold; false: >= threshold
  bool exclude_zero = false; // skip the all-zero assignment
  int enum_cap = 24;
};

struct SearchOutcome {
  bool found = false;
  BitVector xs;              // assignment over the sampled inputs
  std::uint64_t nodes = 0;   // enumeration steps / tree nodes visited
  bool exhaustive = true;    // which engine ran
};

SearchOutcome threshold_search(const SubShl& sub, const SearchSpec& spec);

// Deep variant: plain enumeration over the s_0 sampled input bits.
SearchOutcome threshold_search_deep(const SubDeep& sub, const SearchSpec& spec);

}  // namespace relutest
