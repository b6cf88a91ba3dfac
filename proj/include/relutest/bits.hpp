// Dense boolean input vector over {0,1}^n.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace relutest {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : bits_(n, 0) {}

  static BitVector from_indices(std::size_t n,
                                const std::vector<std::uint32_t>& idx) {
    BitVector v(n);
    for (auto i : idx) v.bits_[i] = 1;
    return v;
  }

  static BitVector ones_vector(std::size_t n) {
    BitVector v(n);
    for (auto& b : v.bits_) b = 1;
    return v;
  }

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v = true) { bits_[i] = v ? 1 : 0; }

  bool any() const {
    for (auto b : bits_)
      if (b) return true;
    return false;
  }

  std::uint64_t count_ones() const {
    std::uint64_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  std::vector<std::uint32_t> ones() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  bool operator==(const BitVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace relutest
