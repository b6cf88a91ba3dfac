#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relutest/model.hpp"

using namespace relutest;

namespace {

BitVector bits(std::initializer_list<int> vals) {
  BitVector x(vals.size());
  std::size_t i = 0;
  for (int v : vals) x.set(i++, v != 0);
  return x;
}

}  // namespace

TEST_CASE("single hidden layer evaluation") {
  // Two inputs, two hidden nodes: u1 = x0 - x1, u2 = x0 + x1; w = (1, -1/2).
  const ShlNetwork net(2, 2, {1.0, -1.0, 1.0, 1.0}, {1.0, -0.5});

  CHECK(eval_shl(net, bits({0, 0})).value == 0.0);
  CHECK(eval_shl(net, bits({0, 0})).bit == 0);

  // x = (1,0): u = (1, 1) -> value 1 - 0.5 = 0.5 -> bit 1.
  CHECK(eval_shl(net, bits({1, 0})).value == doctest::Approx(0.5));
  CHECK(eval_shl(net, bits({1, 0})).bit == 1);

  // x = (0,1): u = (relu(-1)=0, 1) -> value -0.5 -> bit 0.
  CHECK(eval_shl(net, bits({0, 1})).value == doctest::Approx(-0.5));
  CHECK(eval_shl(net, bits({0, 1})).bit == 0);

  // x = (1,1): u = (0, 2) -> value -1 -> bit 0.
  CHECK(eval_shl(net, bits({1, 1})).value == doctest::Approx(-1.0));
  CHECK(eval_shl(net, bits({1, 1})).bit == 0);
}

TEST_CASE("zero value maps to output bit 0") {
  const ShlNetwork net(1, 1, {1.0}, {0.0});
  CHECK(eval_shl(net, bits({1})).value == 0.0);
  CHECK(eval_shl(net, bits({1})).bit == 0);
}

TEST_CASE("construction validates weights and shapes") {
  CHECK_THROWS_AS(ShlNetwork(2, 1, {1.0, 2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ShlNetwork(2, 1, {1.0, -1.5}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(
      ShlNetwork(2, 1, {1.0, std::numeric_limits<double>::quiet_NaN()}, {1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(ShlNetwork(2, 1, {1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ShlNetwork(0, 1, {}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ShlNetwork(2, 1, {1.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("multi-output evaluation and restriction") {
  // n=2, m=2, r=2: A = identity; W columns (1,1) and (1,-1).
  const MoNetwork net(2, 2, 2, {1.0, 0.0, 0.0, 1.0}, {1.0, 1.0, 1.0, -1.0});
  const auto eval = eval_mo(net, bits({1, 1}));
  CHECK(eval.values[0] == doctest::Approx(2.0));
  CHECK(eval.values[1] == doctest::Approx(0.0));
  CHECK(eval.bits[0] == 1);
  CHECK(eval.bits[1] == 0);

  const ShlNetwork second = restrict_output(net, 2);
  CHECK(second.m == 2);
  CHECK(second.w[0] == doctest::Approx(1.0));
  CHECK(second.w[1] == doctest::Approx(-1.0));
  CHECK(eval_shl(second, bits({1, 1})).value == doctest::Approx(0.0));

  CHECK_THROWS_AS(restrict_output(net, 0), std::invalid_argument);
  CHECK_THROWS_AS(restrict_output(net, 3), std::invalid_argument);
}

TEST_CASE("deep evaluation applies relu between layers only") {
  // dims (2, 2, 1): one hidden layer; equivalent to the shl model.
  const DeepNetwork net({2, 2, 1}, {{1.0, -1.0, 1.0, 1.0}, {1.0, -0.5}});
  CHECK(net.depth() == 1);
  const auto eval = eval_deep(net, bits({1, 0}));
  CHECK(eval.values[0] == doctest::Approx(0.5));
  CHECK(eval.bits[0] == 1);

  // dims (1, 1, 1, 1): value -1 after first layer is cut by the inner relu.
  const DeepNetwork chain({1, 1, 1, 1}, {{-1.0}, {1.0}, {1.0}});
  CHECK(eval_deep(chain, bits({1})).values[0] == 0.0);
  CHECK(eval_deep(chain, bits({1})).bits[0] == 0);

  // Negative value in the FINAL layer is reported pre-relu.
  const DeepNetwork neg({1, 1, 1}, {{1.0}, {-1.0}});
  CHECK(eval_deep(neg, bits({1})).values[0] == doctest::Approx(-1.0));
  CHECK(eval_deep(neg, bits({1})).bits[0] == 0);
}

TEST_CASE("deep construction validation") {
  CHECK_THROWS_AS((DeepNetwork({2, 2}, {{1.0, 0.0, 0.0, 1.0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS((DeepNetwork({2, 2, 1}, {{1.0, 0.0, 0.0, 1.0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS((DeepNetwork({2, 2, 1}, {{1.0, 0.0, 0.0, 2.0}, {1.0, 1.0}})),
                  std::invalid_argument);
}

TEST_CASE("deep output restriction") {
  const DeepNetwork net({1, 1, 2},
                        {{1.0}, {0.5, -0.5}});
  const DeepNetwork first = restrict_output(net, 1);
  CHECK(first.dims.back() == 1);
  CHECK(eval_deep(first, bits({1})).values[0] == doctest::Approx(0.5));
  const DeepNetwork second = restrict_output(net, 2);
  CHECK(eval_deep(second, bits({1})).values[0] == doctest::Approx(-0.5));
}
