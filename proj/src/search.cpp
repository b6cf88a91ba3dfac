#include "relutest/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relutest {

namespace {

// Shared working state for both engines: the (possibly negated) subnetwork in
// column-major form for cheap single-bit updates.
struct Work {
  std::size_t s = 0, t = 0;
  std::vector<double> w;     // t, sign-adjusted
  std::vector<double> cols;  // s x t column-major: cols[p*t + j]
  double thr = 0.0;          // threshold normalized by the positive factor
  bool strict = true;
  bool exclude_zero = false;

  bool passes(double total, bool is_zero) const {
    if (is_zero && exclude_zero) return false;
    return strict ? total > thr : total >= thr;
  }
};

Work make_work(const SubShl& sub, const SearchSpec& spec) {
  Work wk;
  wk.s = sub.s;
  wk.t = sub.t;
  wk.w.resize(sub.t);
  for (std::size_t j = 0; j < sub.t; ++j) {
    wk.w[j] = spec.negate ? -sub.w[j] : sub.w[j];
  }
  wk.cols.resize(sub.s * sub.t);
  for (std::size_t p = 0; p < sub.s; ++p) {
    for (std::size_t j = 0; j < sub.t; ++j) {
      wk.cols[p * sub.t + j] = sub.a[j * sub.s + p];
    }
  }
  if (!(spec.factor > 0.0)) {
    throw std::invalid_argument("search factor must be positive");
  }
  wk.thr = spec.threshold / spec.factor;
  wk.strict = spec.strict;
  wk.exclude_zero = spec.exclude_zero;
  return wk;
}

double fresh_total(const Work& wk, const BitVector& xs) {
  // Row-major accumulation in ascending index order; this is the reference
  // arithmetic path shared with sub_value().
  double total = 0.0;
  for (std::size_t j = 0; j < wk.t; ++j) {
    double acc = 0.0;
    for (std::size_t p = 0; p < wk.s; ++p) {
      if (xs.test(p)) acc += wk.cols[p * wk.t + j];
    }
    if (acc > 0.0) total += wk.w[j] * acc;
  }
  return total;
}

SearchOutcome exhaustive_search(const Work& wk) {
  SearchOutcome out;
  const std::size_t s = wk.s;
  const std::uint64_t total_count = 1ULL << s;
  std::vector<double> sigma(wk.t, 0.0);
  double value = 0.0;  // sum_j w_j relu(sigma_j), maintained incrementally
  BitVector xs(s);

  auto flip = [&](std::size_t p, bool now_set) {
    const double* col = wk.cols.data() + p * wk.t;
    for (std::size_t j = 0; j < wk.t; ++j) {
      const double old_s = sigma[j];
      const double new_s = now_set ? old_s + col[j] : old_s - col[j];
      sigma[j] = new_s;
      const double old_c = old_s > 0.0 ? wk.w[j] * old_s : 0.0;
      const double new_c = new_s > 0.0 ? wk.w[j] * new_s : 0.0;
      value += new_c - old_c;
    }
    xs.set(p, now_set);
  };

  for (std::uint64_t c = 0;; ++c) {
    out.nodes++;
    if (wk.passes(value, c == 0)) {
      // Confirm on a fresh pass to discharge incremental drift.
      if (wk.passes(fresh_total(wk, xs), c == 0)) {
        out.found = true;
        out.xs = xs;
        return out;
      }
    }
    if (c + 1 == total_count) break;
    // Counter bit b corresponds to assignment position s-1-b, so ascending
    // counter order is ascending lexicographic order of the assignments.
    const std::uint64_t diff = c ^ (c + 1);
    for (std::size_t b = 0; b < s; ++b) {
      if ((diff >> b) & 1ULL) {
        const std::size_t p = s - 1 - b;
        flip(p, ((c + 1) >> b) & 1ULL);
      }
    }
    if ((c & 0xFFFULL) == 0xFFFULL) {
      // Periodic refresh bounds floating-point drift of the running sums.
      for (std::size_t j = 0; j < wk.t; ++j) {
        double acc = 0.0;
        for (std::size_t p = 0; p < s; ++p) {
          if (xs.test(p)) acc += wk.cols[p * wk.t + j];
        }
        sigma[j] = acc;
      }
      value = 0.0;
      for (std::size_t j = 0; j < wk.t; ++j) {
        if (sigma[j] > 0.0) value += wk.w[j] * sigma[j];
      }
    }
  }
  return out;
}

struct BnbState {
  const Work* wk = nullptr;
  std::vector<std::size_t> order;  // variable order, most influential first
  std::vector<double> sigma;       // assigned-part row sums
  std::vector<double> pos, neg;    // remaining free column mass per row
  BitVector xs;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  bool found = false;
  BitVector witness;
};

double upper_bound(const BnbState& st) {
  const Work& wk = *st.wk;
  double ub = 0.0;
  for (std::size_t j = 0; j < wk.t; ++j) {
    const double reach =
        wk.w[j] > 0.0 ? st.sigma[j] + st.pos[j] : st.sigma[j] + st.neg[j];
    if (reach > 0.0) ub += wk.w[j] * reach;
  }
  return ub;
}

void bnb_recurse(BnbState& st, std::size_t depth, std::uint64_t ones) {
  if (st.found) return;
  const Work& wk = *st.wk;
  if (++st.nodes > st.budget) {
    throw EnumerationCapError(
        "exact search exceeded its node budget of " + std::to_string(st.budget) +
        " nodes; raise enum_cap to spend more");
  }
  if (depth == wk.s) {
    const double total = fresh_total(wk, st.xs);
    if (wk.passes(total, ones == 0)) {
      st.found = true;
      st.witness = st.xs;
    }
    return;
  }
  if (!wk.passes(upper_bound(st), false)) return;  // cannot reach threshold

  const std::size_t p = st.order[depth];
  const double* col = wk.cols.data() + p * wk.t;

  // Leaving the free set: remove this column's mass from the slack terms.
  for (std::size_t j = 0; j < wk.t; ++j) {
    const double v = col[j];
    if (v > 0.0) st.pos[j] -= v;
    else st.neg[j] -= v;
  }

  double score = 0.0;
  for (std::size_t j = 0; j < wk.t; ++j) score += wk.w[j] * col[j];
  const bool one_first = score >= 0.0;

  for (int branch = 0; branch < 2 && !st.found; ++branch) {
    const bool take = (branch == 0) ? one_first : !one_first;
    if (take) {
      for (std::size_t j = 0; j < wk.t; ++j) st.sigma[j] += col[j];
      st.xs.set(p, true);
      bnb_recurse(st, depth + 1, ones + 1);
      st.xs.set(p, false);
      for (std::size_t j = 0; j < wk.t; ++j) st.sigma[j] -= col[j];
    } else {
      bnb_recurse(st, depth + 1, ones);
    }
  }

  for (std::size_t j = 0; j < wk.t; ++j) {
    const double v = col[j];
    if (v > 0.0) st.pos[j] += v;
    else st.neg[j] += v;
  }
}

SearchOutcome bnb_search(const Work& wk, const SearchSpec& spec) {
  BnbState st;
  st.wk = &wk;
  st.order.resize(wk.s);
  std::iota(st.order.begin(), st.order.end(), std::size_t{0});
  std::vector<double> influence(wk.s, 0.0);
  for (std::size_t p = 0; p < wk.s; ++p) {
    const double* col = wk.cols.data() + p * wk.t;
    double acc = 0.0;
    for (std::size_t j = 0; j < wk.t; ++j) acc += std::abs(wk.w[j] * col[j]);
    influence[p] = acc;
  }
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return influence[a] > influence[b];
                   });
  st.sigma.assign(wk.t, 0.0);
  st.pos.assign(wk.t, 0.0);
  st.neg.assign(wk.t, 0.0);
  for (std::size_t p = 0; p < wk.s; ++p) {
    const double* col = wk.cols.data() + p * wk.t;
    for (std::size_t j = 0; j < wk.t; ++j) {
      if (col[j] > 0.0) st.pos[j] += col[j];
      else st.neg[j] += col[j];
    }
  }
  st.xs = BitVector(wk.s);
  st.budget = spec.enum_cap >= 63 ? UINT64_MAX : (1ULL << spec.enum_cap);

  SearchOutcome out;
  out.exhaustive = false;
  bnb_recurse(st, 0, 0);
  out.found = st.found;
  if (st.found) out.xs = st.witness;
  out.nodes = st.nodes;
  return out;
}

}  // namespace

SearchOutcome threshold_search(const SubShl& sub, const SearchSpec& spec) {
  const Work wk = make_work(sub, spec);
  if (sub.s <= static_cast<std::size_t>(spec.enum_cap)) {
    return exhaustive_search(wk);
  }
  return bnb_search(wk, spec);
}

SearchOutcome threshold_search_deep(const SubDeep& sub, const SearchSpec& spec) {
  const std::size_t s0 = sub.sizes[0];
  if (s0 > static_cast<std::size_t>(spec.enum_cap)) {
    throw EnumerationCapError(
        "deep witness enumeration needs 2^" + std::to_string(s0) +
        " assignments, beyond cap 2^" + std::to_string(spec.enum_cap));
  }
  // The deep path compares fully scaled values; factor is not used.
  const double thr = spec.threshold;
  SearchOutcome out;
  const std::uint64_t total = 1ULL << s0;
  for (std::uint64_t c = 0; c < total; ++c) {
    out.nodes++;
    BitVector x0(s0);
    for (std::size_t p = 0; p < s0; ++p) x0.set(p, (c >> (s0 - 1 - p)) & 1ULL);
    if (spec.exclude_zero && c == 0) continue;
    double v = sub_value_deep(sub, x0);
    if (spec.negate) v = -v;
    if (spec.strict ? v > thr : v >= thr) {
      out.found = true;
      out.xs = x0;
      return out;
    }
  }
  return out;
}

}  // namespace relutest
