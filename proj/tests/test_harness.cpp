#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relutest/experiment.hpp"
#include "relutest/stats.hpp"

using namespace relutest;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

const char* kSpec = R"({
  "seed": 7,
  "rows": [
    {"kind": "tester", "trials": 5,
     "generator": {"kind": "all-zero", "n": 16, "m": 8},
     "tester": {"name": "all-zero", "s": 8, "t": 4}},
    {"kind": "game", "tester": "pair-hunting",
     "n": 16, "k": 2, "budget": 16, "trials": 10}
  ]
})";

}  // namespace

TEST_CASE("confidence interval endpoints") {
  const auto even = wilson_interval(50, 100);
  CHECK(even.low == doctest::Approx(0.403832).epsilon(1e-4));
  CHECK(even.high == doctest::Approx(0.596168).epsilon(1e-4));

  const auto all = wilson_interval(100, 100);
  CHECK(all.high == 1.0);
  CHECK(all.low > 0.95);
  CHECK(all.low < 1.0);

  const auto none = wilson_interval(0, 100);
  CHECK(none.low == 0.0);
  CHECK(none.high < 0.05);

  const auto empty = wilson_interval(0, 0);
  CHECK(empty.low == 0.0);
  CHECK(empty.high == 1.0);
}

TEST_CASE("csv header is stable") {
  CHECK(std::string(kExperimentCsvHeader) ==
        "row,kind,generator,tester,world,n,m,k,budget,trials,epsilon,delta,"
        "lambda,scale,sizes,clamped,accept_rate,ci_low,ci_high,mean_queries,"
        "advantage");
}

TEST_CASE("experiment output shape") {
  const std::string csv = run_experiment(kSpec, 1);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 5);  // header, tester row, N2, N1, advantage
  CHECK(lines[0] == kExperimentCsvHeader);

  for (const auto& line : lines) {
    CHECK(fields_of(line).size() == 21);
  }

  const auto tester = fields_of(lines[1]);
  CHECK(tester[0] == "0");
  CHECK(tester[1] == "tester");
  CHECK(tester[2] == "all-zero");
  CHECK(tester[3] == "all-zero");
  CHECK(tester[5] == "16");
  CHECK(tester[6] == "8");
  CHECK(tester[9] == "5");
  CHECK(tester[10] == "0.25");     // default epsilon
  CHECK(tester[14] == "8|4");      // sizes actually used
  CHECK(tester[15] == "0");        // not clamped
  CHECK(tester[16] == "1.000000"); // the zero network always passes

  const auto n2 = fields_of(lines[2]);
  CHECK(n2[1] == "game");
  CHECK(n2[4] == "N2");
  CHECK(n2[8] == "16");            // budget
  CHECK(n2[16] == "1.000000");     // full-block duplicates always found
  CHECK_FALSE(n2[17].empty());
  CHECK_FALSE(n2[18].empty());

  const auto n1 = fields_of(lines[3]);
  CHECK(n1[4] == "N1");

  const auto adv = fields_of(lines[4]);
  CHECK(adv[4] == "advantage");
  CHECK(adv[16].empty());           // no accept rate on the summary line
  // The pair hunter stops once it verifies a duplicate, so the mean query
  // count is positive but at most the budget.
  const double mean_q = std::stod(adv[19]);
  CHECK(mean_q > 0.0);
  CHECK(mean_q <= 16.0);
  CHECK_FALSE(adv[20].empty());
}

TEST_CASE("experiment output is exactly reproducible") {
  const std::string one = run_experiment(kSpec, 1);
  const std::string eight = run_experiment(kSpec, 8);
  CHECK(one == eight);  // thread count must not leak into results

  const std::string again = run_experiment(kSpec, 1);
  CHECK(one == again);
}

TEST_CASE("vanilla rows leave the config columns empty") {
  const char* spec = R"({
    "seed": 3,
    "rows": [
      {"kind": "tester", "trials": 3,
       "generator": {"kind": "all-ones", "n": 8, "m": 4},
       "tester": {"name": "vanilla", "samples": 20}}
    ]
  })";
  const auto lines = lines_of(run_experiment(spec, 2));
  REQUIRE(lines.size() == 2);
  const auto f = fields_of(lines[1]);
  CHECK(f[3] == "vanilla");
  CHECK(f[10].empty());
  CHECK(f[13].empty());
  CHECK(f[16] == "0.000000");  // the all-ones network is always caught
}

TEST_CASE("experiment specs are validated") {
  CHECK_THROWS_AS(run_experiment("{not json", 1), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(R"({"seed": 1})", 1), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(R"({"rows": [{"kind": "nope"}]})", 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      run_experiment(
          R"({"rows": [{"kind": "tester", "trials": 0,
              "generator": {"kind": "all-zero", "n": 4, "m": 2},
              "tester": {"name": "all-zero", "s": 2, "t": 2}}]})",
          1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_experiment(
          R"({"rows": [{"kind": "tester", "trials": 1,
              "generator": {"kind": "all-zero", "n": 4, "m": 2},
              "tester": {"name": "mystery"}}]})",
          1),
      std::invalid_argument);
}
