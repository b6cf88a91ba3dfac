// Deterministic experiment runner: a JSON description of (generator, tester,
// trials) rows, or distinguishing-game rows, rendered to a fixed-format CSV.
//
// Determinism contract: the CSV depends only on the description text.  Every
// trial derives its own seeds from (spec seed, row index, trial index), trial
// outcomes land in preallocated slots, and aggregation walks the slots in
// index order, so any worker-thread count produces the same bytes.
#pragma once

#include <string>

namespace relutest {

extern const char* const kExperimentCsvHeader;

std::string run_experiment(const std::string& spec_text, unsigned threads);

}  // namespace relutest
