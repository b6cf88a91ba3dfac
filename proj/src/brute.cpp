#include "relutest/brute.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace relutest {

namespace {

constexpr std::size_t kMaxEnumBits = 24;

void require_small(std::size_t n) {
  if (n > kMaxEnumBits) {
    throw std::invalid_argument("exhaustive oracle requires n <= 24");
  }
}

BitVector from_counter(std::size_t n, std::uint64_t c) {
  BitVector x(n);
  for (std::size_t p = 0; p < n; ++p) x.set(p, (c >> p) & 1ULL);
  return x;
}

}  // namespace

const char* target_name(Target t) { return t == Target::Zero ? "zero" : "or"; }

int target_bit(Target t, const BitVector& x) {
  if (t == Target::Zero) return 0;
  return x.any() ? 1 : 0;
}

bool computes_exactly(const ShlNetwork& net, Target target) {
  require_small(net.n);
  const std::uint64_t total = 1ULL << net.n;
  for (std::uint64_t c = 0; c < total; ++c) {
    const BitVector x = from_counter(net.n, c);
    if (eval_shl(net, x).bit != target_bit(target, x)) return false;
  }
  return true;
}

bool computes_exactly(const DeepNetwork& net, Target target) {
  const std::size_t n = net.dims.front();
  require_small(n);
  if (net.dims.back() != 1) {
    throw std::invalid_argument("single-output deep network expected");
  }
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t c = 0; c < total; ++c) {
    const BitVector x = from_counter(n, c);
    if (eval_deep(net, x).bits[0] != target_bit(target, x)) return false;
  }
  return true;
}

bool computes_near_constant(const MoNetwork& net, const std::vector<int>& b) {
  require_small(net.n);
  if (b.size() != net.r) throw std::invalid_argument("target arity mismatch");
  const std::uint64_t total = 1ULL << net.n;
  for (std::uint64_t c = 0; c < total; ++c) {
    const BitVector x = from_counter(net.n, c);
    const auto eval = eval_mo(net, x);
    for (std::size_t j = 0; j < net.r; ++j) {
      const int want = (c == 0) ? 0 : b[j];
      if (eval.bits[j] != want) return false;
    }
  }
  return true;
}

std::optional<BitVector> counterexample(const ShlNetwork& net, Target target) {
  require_small(net.n);
  const std::uint64_t total = 1ULL << net.n;
  for (std::uint64_t c = 0; c < total; ++c) {
    const BitVector x = from_counter(net.n, c);
    if (eval_shl(net, x).bit != target_bit(target, x)) return x;
  }
  return std::nullopt;
}

Rational delta_distance(const ShlNetwork& net, Target target) {
  require_small(net.n);
  const std::uint64_t total = 1ULL << net.n;
  std::uint64_t diff = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    const BitVector x = from_counter(net.n, c);
    if (eval_shl(net, x).bit != target_bit(target, x)) diff++;
  }
  return Rational(BigInt(diff), BigInt(total));
}

namespace {

// Enumerates size-`size` subsets of [count] and, per subset, every grid
// assignment; calls visit with the chosen coordinates and values.  Returns
// false if some visit returned false (stop signal).
bool for_each_edit(std::size_t count, std::size_t size,
                   const std::vector<double>& grid,
                   std::vector<std::size_t>& coords,
                   std::vector<double>& values, std::size_t next,
                   const std::function<bool(const std::vector<std::size_t>&,
                                            const std::vector<double>&)>& visit) {
  if (coords.size() == size) {
    // Odometer over grid values for the chosen coordinates.
    values.assign(size, grid.front());
    std::vector<std::size_t> digit(size, 0);
    while (true) {
      if (!visit(coords, values)) return false;
      std::size_t pos = 0;
      while (pos < size) {
        if (++digit[pos] < grid.size()) {
          values[pos] = grid[digit[pos]];
          break;
        }
        digit[pos] = 0;
        values[pos] = grid.front();
        pos++;
      }
      if (pos == size) break;
    }
    return true;
  }
  for (std::size_t c = next; c + (size - coords.size()) <= count; ++c) {
    coords.push_back(c);
    if (!for_each_edit(count, size, grid, coords, values, c + 1, visit)) {
      return false;
    }
    coords.pop_back();
  }
  return true;
}

double search_space_size(std::size_t count, std::size_t max_size,
                         std::size_t grid_size) {
  double total = 0.0;
  for (std::size_t s = 0; s <= max_size && s <= count; ++s) {
    double c = 1.0;
    for (std::size_t i = 0; i < s; ++i) {
      c *= static_cast<double>(count - i) / static_cast<double>(i + 1);
      c *= static_cast<double>(grid_size);
    }
    total += c;
  }
  return total;
}

}  // namespace

FarCertificate far_certificate_tiny(const ShlNetwork& net, Target target,
                                    double epsilon, double delta,
                                    const std::vector<double>& grid) {
  if (net.n * net.m > 12) {
    throw std::invalid_argument("far_certificate_tiny requires n*m <= 12");
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  for (double v : grid) validate_weight(v);
  if (!(epsilon >= 0.0) || !(delta >= 0.0)) {
    throw std::invalid_argument("epsilon and delta must be nonnegative");
  }

  const std::size_t a_budget = static_cast<std::size_t>(
      std::floor(epsilon * static_cast<double>(net.n * net.m)));
  const std::size_t w_budget = static_cast<std::size_t>(
      std::floor(epsilon * static_cast<double>(net.m)));

  const double space =
      search_space_size(net.n * net.m, a_budget, grid.size()) *
      search_space_size(net.m, w_budget, grid.size());
  if (space > 5e7) {
    throw std::invalid_argument("far_certificate_tiny: search space too large");
  }

  const Rational delta_bound(delta);
  FarCertificate out;

  std::vector<std::size_t> a_coords, w_coords;
  std::vector<double> a_values, w_values;

  auto try_assignment = [&](const std::vector<std::size_t>& ac,
                            const std::vector<double>& av,
                            const std::vector<std::size_t>& wc,
                            const std::vector<double>& wv) {
    std::vector<double> a = net.a;
    std::vector<double> w = net.w;
    for (std::size_t i = 0; i < ac.size(); ++i) a[ac[i]] = av[i];
    for (std::size_t i = 0; i < wc.size(); ++i) w[wc[i]] = wv[i];
    const ShlNetwork edited(net.n, net.m, std::move(a), std::move(w));
    out.assignments_tried++;
    if (delta_distance(edited, target) <= delta_bound) {
      out.close = true;
      out.edits.clear();
      for (std::size_t i = 0; i < ac.size(); ++i) {
        out.edits.push_back({WeightCoord{0,
                                         static_cast<std::uint32_t>(ac[i] / net.n),
                                         static_cast<std::uint32_t>(ac[i] % net.n)},
                             av[i]});
      }
      for (std::size_t i = 0; i < wc.size(); ++i) {
        out.edits.push_back(
            {WeightCoord{1, static_cast<std::uint32_t>(wc[i]), 0}, wv[i]});
      }
      return false;  // stop
    }
    return true;
  };

  for (std::size_t a_size = 0; a_size <= a_budget && !out.close; ++a_size) {
    for (std::size_t w_size = 0; w_size <= w_budget && !out.close; ++w_size) {
      a_coords.clear();
      const bool keep_going = for_each_edit(
          net.n * net.m, a_size, grid, a_coords, a_values, 0,
          [&](const std::vector<std::size_t>& ac,
              const std::vector<double>& av) {
            w_coords.clear();
            return for_each_edit(
                net.m, w_size, grid, w_coords, w_values, 0,
                [&](const std::vector<std::size_t>& wc,
                    const std::vector<double>& wv) {
                  return try_assignment(ac, av, wc, wv);
                });
          });
      if (!keep_going) break;
    }
  }
  return out;
}

}  // namespace relutest
