#include "relutest/subsample.hpp"

#include <cmath>
#include <stdexcept>

namespace relutest {

void TesterConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be in (0, 1)");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1]");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must be in (0, 1)");
  }
  if (!(constant_scale > 0.0) || !std::isfinite(constant_scale)) {
    throw std::invalid_argument("constant_scale must be positive");
  }
  if (enum_cap < 0 || enum_cap > 40) {
    throw std::invalid_argument("enum_cap must be in [0, 40]");
  }
}

namespace {

std::uint64_t ceil_to_u64(double v) {
  const double c = std::ceil(v);
  if (!(c >= 0.0)) throw std::invalid_argument("negative sample size");
  if (c >= 1.8e19) return UINT64_MAX;  // formula overflow; will clamp to layer size
  return static_cast<std::uint64_t>(c);
}

}  // namespace

FormulaSizesShl formula_sizes_shl(const TesterConfig& cfg) {
  cfg.validate();
  const double eps = cfg.epsilon;
  const double log_term = std::log(1.0 / (eps * cfg.lambda));
  const double s =
      cfg.constant_scale * 1048576.0 / (eps * eps) * log_term;  // 2^20
  const double t = cfg.constant_scale * 1073741824.0 / (eps * eps * eps * eps) *
                   log_term;  // 2^30
  return {ceil_to_u64(s), ceil_to_u64(t)};
}

std::uint64_t one_sided_sample_size(const TesterConfig& cfg, std::size_t m) {
  cfg.validate();
  const double s = cfg.constant_scale * 128.0 *
                   std::log(2.0 * static_cast<double>(m) / cfg.lambda) /
                   (cfg.epsilon * cfg.epsilon);
  return ceil_to_u64(s);
}

SamplePlan draw_plan_shl(std::size_t n, std::size_t m, std::uint64_t s,
                         std::uint64_t t, Rng& rng) {
  SamplePlan plan;
  std::uint64_t s_used = s, t_used = t;
  if (s_used > n) {
    s_used = n;
    plan.clamped = true;
  }
  if (t_used > m) {
    t_used = m;
    plan.clamped = true;
  }
  plan.layers.push_back(rng.sample_without_replacement(n, s_used));
  plan.layers.push_back(rng.sample_without_replacement(m, t_used));
  return plan;
}

SamplePlan draw_plan_deep(const std::vector<std::size_t>& dims,
                          const std::vector<std::uint64_t>& sizes, Rng& rng) {
  if (sizes.size() != dims.size() - 1) {
    throw std::invalid_argument("need one sample size per non-output layer");
  }
  SamplePlan plan;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::uint64_t want = sizes[k];
    if (want > dims[k]) {
      want = dims[k];
      plan.clamped = true;
    }
    plan.layers.push_back(rng.sample_without_replacement(dims[k], want));
  }
  return plan;
}

SubShl extract_sub_shl(ShlOracle& oracle, const SamplePlan& plan) {
  if (plan.layers.size() != 2) throw std::invalid_argument("bad plan shape");
  SubShl sub;
  sub.inputs = plan.layers[0];
  sub.hidden = plan.layers[1];
  sub.s = sub.inputs.size();
  sub.t = sub.hidden.size();
  sub.a.resize(sub.s * sub.t);
  sub.w.resize(sub.t);
  for (std::size_t jj = 0; jj < sub.t; ++jj) {
    const std::uint32_t j = sub.hidden[jj];
    for (std::size_t ii = 0; ii < sub.s; ++ii) {
      sub.a[jj * sub.s + ii] = oracle.first_layer(j, sub.inputs[ii]);
    }
    sub.w[jj] = oracle.second_layer(j);
  }
  const auto& net = oracle.net();
  sub.scale = (static_cast<double>(net.n) / static_cast<double>(sub.s)) *
              (static_cast<double>(net.m) / static_cast<double>(sub.t));
  return sub;
}

double sub_value(const SubShl& sub, const BitVector& xs) {
  if (xs.size() != sub.s) throw std::invalid_argument("assignment length != s");
  double total = 0.0;
  for (std::size_t jj = 0; jj < sub.t; ++jj) {
    const double* row = sub.a.data() + jj * sub.s;
    double acc = 0.0;
    for (std::size_t ii = 0; ii < sub.s; ++ii) {
      if (xs.test(ii)) acc += row[ii];
    }
    if (acc > 0.0) total += sub.w[jj] * acc;
  }
  return sub.scale * total;
}

double scaled_value_shl(ShlOracle& oracle, const SamplePlan& plan,
                        const BitVector& x) {
  if (x.size() != oracle.net().n) {
    throw std::invalid_argument("input has wrong length");
  }
  const SubShl sub = extract_sub_shl(oracle, plan);
  BitVector xs(sub.s);
  for (std::size_t ii = 0; ii < sub.s; ++ii) xs.set(ii, x.test(sub.inputs[ii]));
  return sub_value(sub, xs);
}

SubDeep extract_sub_deep(DeepOracle& oracle, const SamplePlan& plan) {
  const auto& net = oracle.net();
  const std::size_t ell = net.depth();
  if (plan.layers.size() != ell + 1) throw std::invalid_argument("bad plan shape");
  SubDeep sub;
  sub.idx = plan.layers;
  sub.sizes.resize(ell + 1);
  for (std::size_t k = 0; k <= ell; ++k) sub.sizes[k] = sub.idx[k].size();
  sub.mats.resize(ell + 1);
  for (std::size_t k = 0; k < ell; ++k) {
    const auto& rows = sub.idx[k + 1];
    const auto& cols = sub.idx[k];
    auto& mat = sub.mats[k];
    mat.resize(rows.size() * cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        mat[r * cols.size() + c] = oracle.layer(k, rows[r], cols[c]);
      }
    }
  }
  // Final layer: the single output row over the sampled layer-ell nodes.
  if (net.outputs() != 1) {
    throw std::invalid_argument("deep tester needs a single-output network");
  }
  auto& last = sub.mats[ell];
  last.resize(sub.sizes[ell]);
  for (std::size_t c = 0; c < sub.sizes[ell]; ++c) {
    last[c] = oracle.layer(ell, 0, sub.idx[ell][c]);
  }
  sub.scale = 1.0;
  for (std::size_t k = 0; k <= ell; ++k) {
    sub.scale *= static_cast<double>(net.dims[k]) /
                 static_cast<double>(sub.sizes[k]);
  }
  return sub;
}

double sub_value_deep(const SubDeep& sub, const BitVector& x0) {
  const std::size_t ell = sub.mats.size() - 1;
  if (x0.size() != sub.sizes[0]) {
    throw std::invalid_argument("assignment length != s_0");
  }
  std::vector<double> cur(sub.sizes[0]);
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = x0.test(i) ? 1.0 : 0.0;
  for (std::size_t k = 0; k < ell; ++k) {
    const std::size_t rows = sub.sizes[k + 1];
    const std::size_t cols = sub.sizes[k];
    std::vector<double> next(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = sub.mats[k].data() + r * cols;
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (cur[c] > 0.0) acc += row[c] * cur[c];
      }
      next[r] = acc > 0.0 ? acc : 0.0;  // relu feeding the next layer
    }
    cur = std::move(next);
  }
  double out = 0.0;
  for (std::size_t c = 0; c < sub.sizes[ell]; ++c) {
    if (cur[c] > 0.0) out += sub.mats[ell][c] * cur[c];
  }
  return sub.scale * out;
}

double scaled_value_deep(DeepOracle& oracle, const SamplePlan& plan,
                         const BitVector& x) {
  if (x.size() != oracle.net().inputs()) {
    throw std::invalid_argument("input has wrong length");
  }
  const SubDeep sub = extract_sub_deep(oracle, plan);
  BitVector x0(sub.sizes[0]);
  for (std::size_t ii = 0; ii < sub.sizes[0]; ++ii) {
    x0.set(ii, x.test(sub.idx[0][ii]));
  }
  return sub_value_deep(sub, x0);
}

std::optional<BitVector> find_witness(
    const std::function<double(const BitVector&)>& eval, std::size_t nbits,
    double threshold, Direction dir, int enum_cap) {
  if (nbits > static_cast<std::size_t>(enum_cap)) {
    throw EnumerationCapError("enumeration too large: 2^" +
                              std::to_string(nbits) + " assignments exceeds cap 2^" +
                              std::to_string(enum_cap));
  }
  const std::uint64_t total = 1ULL << nbits;
  for (std::uint64_t c = 0; c < total; ++c) {
    BitVector x(nbits);
    for (std::size_t p = 0; p < nbits; ++p) {
      x.set(p, (c >> (nbits - 1 - p)) & 1ULL);
    }
    const double v = eval(x);
    if ((dir == Direction::Above && v > threshold) ||
        (dir == Direction::Below && v < threshold)) {
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace relutest
