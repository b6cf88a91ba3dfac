// Testers for monotone properties given by generator functions.
//
// A monotone property is an upward-closed set of boolean functions; it is
// described here by generators: the tested network should dominate some
// generator pointwise.  The single-generator tester rejects when the
// generator demands a 1 somewhere the sampled network value is decisively
// negative; the family tester shares one input sample and one plan across
// all generators.
#pragma once

#include <functional>

#include "relutest/testers.hpp"

namespace relutest {

using GeneratorFn = std::function<bool(const BitVector&)>;

// Truth-table-backed generator: table[i] is the value on the input whose
// p-th bit is (i >> p) & 1 (bit 0 is the least significant index).
GeneratorFn truth_table_generator(std::vector<std::uint8_t> table,
                                  std::size_t n);

// Loads a table from a file holding one line of 2^n characters '0'/'1'.
// The input length n is inferred from the line length.
GeneratorFn load_truth_table(const std::string& path, std::size_t* n_out);

struct MonotoneSizes {
  std::uint64_t r = 0;  // random evaluation points
  std::uint64_t t = 0;  // hidden sample
  std::uint64_t s = 0;  // input sample
};

// family_size = 1 for the single-generator tester, |G| for the family tester.
MonotoneSizes monotone_sizes(const TesterConfig& cfg, std::uint64_t family_size);

Verdict monotone_property_tester(const ShlNetwork& net, const GeneratorFn& g,
                                 const TesterConfig& cfg);

Verdict full_monotone_property_tester(const ShlNetwork& net,
                                      const std::vector<GeneratorFn>& gens,
                                      const TesterConfig& cfg);

}  // namespace relutest
