#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "relutest/rng.hpp"

using namespace relutest;

TEST_CASE("mix64 and fnv1a64 frozen values") {
  CHECK(mix64(0) == 16294208416658607535ULL);
  CHECK(fnv1a64("abc") == 16654208175385433931ULL);
  CHECK(fnv1a64("") == 14695981039346656037ULL);  // offset basis
}

TEST_CASE("derive_seed frozen values and separation") {
  CHECK(derive_seed(1, 2, "gen") == 1200546932053479785ULL);
  CHECK(derive_seed(0, 0, "row") == 5601352713550000997ULL);
  CHECK(derive_seed(42, 7, "test") == 621582277992893928ULL);

  CHECK(derive_seed(1, 2, "gen") != derive_seed(1, 2, "test"));
  CHECK(derive_seed(1, 2, "gen") != derive_seed(1, 3, "gen"));
  CHECK(derive_seed(1, 2, "gen") != derive_seed(2, 2, "gen"));
}

TEST_CASE("generator stream is reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.u64() == b.u64());
  CHECK(Rng(123).u64() == 5777523539921853504ULL);
}

TEST_CASE("below stays in range and covers values") {
  Rng rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("unit lies in [0,1)") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("shuffle produces a permutation") {
  Rng rng(3);
  std::vector<std::uint32_t> v(50);
  for (std::uint32_t i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(v);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("sample_without_replacement basic contract") {
  Rng rng(11);
  const auto s = rng.sample_without_replacement(100, 30);
  CHECK(s.size() == 30);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());  // distinct
  for (auto v : s) CHECK(v < 100);

  const auto all = rng.sample_without_replacement(10, 10);
  CHECK(all.size() == 10);
  for (std::uint32_t i = 0; i < 10; ++i) CHECK(all[i] == i);

  CHECK_THROWS_AS(rng.sample_without_replacement(5, 6), std::invalid_argument);
}

TEST_CASE("sample_without_replacement is roughly uniform") {
  // Each of 10 elements should appear in a 5-subset about half the time.
  Rng rng(29);
  std::vector<int> hits(10, 0);
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    for (auto v : rng.sample_without_replacement(10, 5)) hits[v]++;
  }
  for (int i = 0; i < 10; ++i) {
    CHECK(hits[i] > reps / 2 - 300);
    CHECK(hits[i] < reps / 2 + 300);
  }
}
