// Query-counting access to network weights.
//
// Testers read weights only through these wrappers; the wrapper tracks the
// set of distinct coordinates touched so query-complexity bounds can be
// asserted on every run.  Addressing is (layer, row, col): for a single
// hidden layer, layer 0 is A (row j, col i) and layer 1 is w (row j, col 0).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>

#include "relutest/model.hpp"

namespace relutest {

namespace detail {
inline std::uint64_t pack_coord(std::uint32_t layer, std::uint64_t row,
                                std::uint64_t col) {
  // Layers < 64, rows/cols < 2^29 — far beyond any size used here.
  return (static_cast<std::uint64_t>(layer) << 58) | (row << 29) | col;
}
}  // namespace detail

class ShlOracle {
 public:
  explicit ShlOracle(const ShlNetwork& net) : net_(net) {}
  ShlOracle(const ShlOracle&) = delete;
  ShlOracle& operator=(const ShlOracle&) = delete;
  ShlOracle(ShlOracle&&) = default;

  double first_layer(std::size_t j, std::size_t i) {
    seen_.insert(detail::pack_coord(0, j, i));
    return net_.a[j * net_.n + i];
  }

  double second_layer(std::size_t j) {
    seen_.insert(detail::pack_coord(1, j, 0));
    return net_.w[j];
  }

  std::uint64_t distinct_queries() const { return seen_.size(); }
  const ShlNetwork& net() const { return net_; }

 private:
  const ShlNetwork& net_;
  std::unordered_set<std::uint64_t> seen_;
};

class DeepOracle {
 public:
  explicit DeepOracle(const DeepNetwork& net) : net_(net) {}
  DeepOracle(const DeepOracle&) = delete;
  DeepOracle& operator=(const DeepOracle&) = delete;
  DeepOracle(DeepOracle&&) = default;

  double layer(std::size_t k, std::size_t row, std::size_t col) {
    if (k >= net_.layers.size()) throw std::invalid_argument("bad layer");
    seen_.insert(detail::pack_coord(static_cast<std::uint32_t>(k), row, col));
    return net_.layers[k][row * net_.dims[k] + col];
  }

  std::uint64_t distinct_queries() const { return seen_.size(); }
  const DeepNetwork& net() const { return net_; }

 private:
  const DeepNetwork& net_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace relutest
