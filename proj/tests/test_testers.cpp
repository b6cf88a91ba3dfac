#include <doctest.h>

#include <vector>

#include "relutest/constructions.hpp"
#include "relutest/model.hpp"
#include "relutest/rng.hpp"
#include "relutest/testers.hpp"

using namespace relutest;

namespace {

ShlNetwork random_a_net(std::size_t n, std::size_t m, double wval, Rng& rng) {
  std::vector<double> a(n * m);
  for (auto& v : a) v = 2.0 * rng.unit() - 1.0;
  return ShlNetwork(n, m, std::move(a), std::vector<double>(m, wval));
}

}  // namespace

TEST_CASE("assignment embedding") {
  BitVector xs(2);
  xs.set(0, true);
  const auto x = embed_assignment(8, {2, 5}, xs);
  CHECK(x.size() == 8);
  CHECK(x.test(2));
  CHECK_FALSE(x.test(5));
  CHECK(x.ones().size() == 1);
}

TEST_CASE("one-sided zero tester") {
  Rng rng(2024);
  TesterConfig cfg;
  cfg.seed = 5;

  // Negative output weights: no input can produce a positive value.
  const auto silent = random_a_net(30, 5, -1.0, rng);
  auto v = one_sided_zero_tester(silent, cfg);
  CHECK(v.accept);
  CHECK(v.tester == "one-sided-zero");
  CHECK(v.clamped);  // the formula asks for far more than n inputs
  CHECK(v.sizes == std::vector<std::uint64_t>{30, 5});
  CHECK(v.queries <= (30 + 1) * 5);

  // The all-ones network rejects with a genuine certificate.
  const ShlNetwork ones(30, 5, std::vector<double>(150, 1.0),
                        std::vector<double>(5, 1.0));
  v = one_sided_zero_tester(ones, cfg);
  REQUIRE_FALSE(v.accept);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->size() == 30);
  CHECK(eval_shl(ones, *v.witness).value > 0.0);  // witness is literal
}

TEST_CASE("one-sided or tester") {
  TesterConfig cfg;
  cfg.seed = 6;

  const ShlNetwork ones(12, 3, std::vector<double>(36, 1.0),
                        std::vector<double>(3, 1.0));
  auto v = one_sided_or_tester(ones, cfg);
  CHECK(v.accept);
  CHECK(v.tester == "one-sided-or");

  // The zero network misses every nonzero input.
  const ShlNetwork zeros(12, 3, std::vector<double>(36, 0.0),
                         std::vector<double>(3, 0.0));
  v = one_sided_or_tester(zeros, cfg);
  REQUIRE_FALSE(v.accept);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->any());  // nonzero input ...
  CHECK(eval_shl(zeros, *v.witness).value <= 0.0);  // ... the network misses
}

TEST_CASE("two-sided testers with pinned sizes") {
  TesterConfig cfg;
  cfg.seed = 9;

  // Positive first layer under negative output weights: value is never
  // positive, and its magnitude grows with |x|.
  const ShlNetwork silent(64, 32, std::vector<double>(64 * 32, 0.5),
                          std::vector<double>(32, -1.0));
  auto v = all_zero_tester_sized(silent, cfg, 16, 8);
  CHECK(v.accept);
  CHECK(v.tester == "all-zero");
  CHECK(v.bias == doctest::Approx(0.25 * 64.0 * 32.0 / 16.0));
  CHECK(v.value_scale == doctest::Approx((64.0 / 16.0) * (32.0 / 8.0)));
  CHECK(v.sizes == std::vector<std::uint64_t>{16, 8});
  CHECK_FALSE(v.clamped);
  CHECK(v.queries <= (16 + 1) * 8);

  const ShlNetwork loud(64, 32, std::vector<double>(64 * 32, 1.0),
                        std::vector<double>(32, 1.0));
  v = all_zero_tester_sized(loud, cfg, 16, 8);
  REQUIRE_FALSE(v.accept);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->size() == 64);

  // The OR-side tester accepts the loud network and rejects the silent one.
  CHECK(or_tester_sized(loud, cfg, 16, 8).accept);
  CHECK_FALSE(or_tester_sized(silent, cfg, 16, 8).accept);

  // Same configuration, same verdict, bit for bit.
  const auto v1 = all_zero_tester_sized(loud, cfg, 16, 8);
  const auto v2 = all_zero_tester_sized(loud, cfg, 16, 8);
  CHECK(v1.accept == v2.accept);
  CHECK(v1.queries == v2.queries);
  CHECK(v1.sizes == v2.sizes);
  CHECK(*v1.witness == *v2.witness);
}

TEST_CASE("formula-size testers clamp on small networks") {
  TesterConfig cfg;
  cfg.seed = 4;
  const ShlNetwork zeros(8, 4, std::vector<double>(32, 0.0),
                         std::vector<double>(4, 0.0));
  const ShlNetwork ones(8, 4, std::vector<double>(32, 1.0),
                        std::vector<double>(4, 1.0));

  auto v = all_zero_tester(zeros, cfg);
  CHECK(v.accept);
  CHECK(v.clamped);
  CHECK(v.sizes == std::vector<std::uint64_t>{8, 4});

  CHECK_FALSE(all_zero_tester(ones, cfg).accept);
  CHECK(or_tester(ones, cfg).accept);

  // The OR-side rejection rule is "value strictly below -bias", so an
  // identically-zero network is accepted; a strictly negative one is not.
  CHECK(or_tester(zeros, cfg).accept);
  const ShlNetwork negative(8, 4, std::vector<double>(32, 0.5),
                            std::vector<double>(4, -1.0));
  auto o = or_tester(negative, cfg);
  CHECK_FALSE(o.accept);
  CHECK(o.tester == "or");
}

TEST_CASE("uniform-sampling baseline and its blind spot") {
  Rng rng(17);
  const ShlNetwork zeros(8, 4, std::vector<double>(32, 0.0),
                         std::vector<double>(4, 0.0));
  auto v = vanilla_tester(zeros, 100, rng);
  CHECK(v.accept);
  CHECK(v.queries == 100);
  CHECK(v.tester == "vanilla");

  const ShlNetwork ones(8, 4, std::vector<double>(32, 1.0),
                        std::vector<double>(4, 1.0));
  v = vanilla_tester(ones, 100, rng);
  REQUIRE_FALSE(v.accept);
  REQUIRE(v.witness.has_value());
  CHECK(eval_shl(ones, *v.witness).bit == 1);

  // The hard instance fools uniform sampling but not the query tester.
  const auto hard = vanilla_hardness_network(1000, 1e-4);
  Rng hrng(23);
  v = vanilla_tester(hard.net, 50, hrng);
  CHECK(v.accept);  // exponentially unlikely to stumble on a firing input

  TesterConfig cfg;
  cfg.seed = 8;
  auto q = one_sided_zero_tester(hard.net, cfg);
  REQUIRE_FALSE(q.accept);
  REQUIRE(q.witness.has_value());
  CHECK(eval_shl(hard.net, *q.witness).value > 0.0);
}
