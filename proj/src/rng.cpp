#include "relutest/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace relutest {

std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint64_t n,
                                                           std::uint64_t s) {
  if (s > n) {
    throw std::invalid_argument("sample_without_replacement: s > n");
  }
  std::vector<std::uint32_t> out;
  out.reserve(s);
  if (4 * s >= n) {
    // Dense: materialize [0, n) and take a partial Fisher-Yates prefix.
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t i = 0; i < s; ++i) {
      const std::uint64_t j = i + below(n - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
  } else {
    // Sparse: same algorithm with the identity permutation stored implicitly.
    std::unordered_map<std::uint64_t, std::uint32_t> perm;
    perm.reserve(2 * s);
    for (std::uint64_t i = 0; i < s; ++i) {
      const std::uint64_t j = i + below(n - i);
      auto at = [&](std::uint64_t idx) {
        auto it = perm.find(idx);
        return it == perm.end() ? static_cast<std::uint32_t>(idx) : it->second;
      };
      const std::uint32_t vi = at(i);
      const std::uint32_t vj = at(j);
      perm[i] = vj;
      perm[j] = vi;
      out.push_back(vj);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace relutest
