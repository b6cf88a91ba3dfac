#include "relutest/testers.hpp"

#include <stdexcept>

namespace relutest {

BitVector embed_assignment(std::size_t n, const std::vector<std::uint32_t>& idx,
                           const BitVector& xs) {
  BitVector x(n);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (xs.test(p)) x.set(idx[p], true);
  }
  return x;
}

namespace {

void check_query_bound(std::uint64_t got, std::uint64_t bound,
                       const char* tester) {
  if (got > bound) {
    throw std::logic_error(std::string(tester) +
                           ": query accounting exceeded its bound");
  }
}

Verdict two_sided(const ShlNetwork& net, const TesterConfig& cfg,
                  std::uint64_t s, std::uint64_t t, bool or_side) {
  cfg.validate();
  Verdict v;
  v.tester = or_side ? "or" : "all-zero";

  Rng rng(derive_seed(cfg.seed, 0, "two-sided-plan"));
  const SamplePlan plan = draw_plan_shl(net.n, net.m, s, t, rng);
  ShlOracle oracle(net);
  const SubShl sub = extract_sub_shl(oracle, plan);

  v.sizes = {sub.s, sub.t};
  v.clamped = plan.clamped;
  v.queries = oracle.distinct_queries();
  check_query_bound(v.queries, (static_cast<std::uint64_t>(sub.s) + 1) * sub.t,
                    v.tester.c_str());

  v.bias = cfg.epsilon * static_cast<double>(net.n) *
           static_cast<double>(net.m) / 16.0;
  v.value_scale = sub.scale;

  SearchSpec spec;
  spec.negate = or_side;  // value + bias < 0  <=>  (-value) > bias
  spec.factor = sub.scale;
  spec.threshold = v.bias;
  spec.strict = true;
  spec.exclude_zero = false;
  spec.enum_cap = cfg.enum_cap;

  const SearchOutcome res = threshold_search(sub, spec);
  v.accept = !res.found;
  v.note = res.exhaustive ? "search=exhaustive" : "search=branch-and-bound";
  if (res.found) {
    v.witness = embed_assignment(net.n, sub.inputs, res.xs);
  }
  return v;
}

Verdict one_sided(const ShlNetwork& net, const TesterConfig& cfg,
                  bool or_side) {
  cfg.validate();
  Verdict v;
  v.tester = or_side ? "one-sided-or" : "one-sided-zero";

  std::uint64_t s = one_sided_sample_size(cfg, net.m);
  Rng rng(derive_seed(cfg.seed, 0, "one-sided-plan"));
  SamplePlan plan;
  std::uint64_t s_used = s;
  if (s_used > net.n) {
    s_used = net.n;
    plan.clamped = true;
  }
  plan.layers.push_back(rng.sample_without_replacement(net.n, s_used));
  std::vector<std::uint32_t> all_hidden(net.m);
  for (std::size_t j = 0; j < net.m; ++j) {
    all_hidden[j] = static_cast<std::uint32_t>(j);
  }
  plan.layers.push_back(std::move(all_hidden));

  ShlOracle oracle(net);
  const SubShl sub = extract_sub_shl(oracle, plan);

  v.sizes = {sub.s, sub.t};
  v.clamped = plan.clamped;
  v.queries = oracle.distinct_queries();
  check_query_bound(v.queries,
                    (static_cast<std::uint64_t>(sub.s) + 1) * net.m,
                    v.tester.c_str());

  SearchSpec spec;
  spec.factor = 1.0;  // raw values: no scaling, no bias
  spec.threshold = 0.0;
  spec.enum_cap = cfg.enum_cap;
  if (or_side) {
    // Reject iff some nonzero sampled assignment has value <= 0.
    spec.negate = true;
    spec.strict = false;
    spec.exclude_zero = true;
  } else {
    // Reject iff some sampled assignment has value > 0.
    spec.negate = false;
    spec.strict = true;
    spec.exclude_zero = false;
  }

  const SearchOutcome res = threshold_search(sub, spec);
  v.accept = !res.found;
  v.note = res.exhaustive ? "search=exhaustive" : "search=branch-and-bound";
  if (res.found) {
    v.witness = embed_assignment(net.n, sub.inputs, res.xs);
  }
  return v;
}

}  // namespace

Verdict all_zero_tester(const ShlNetwork& net, const TesterConfig& cfg) {
  const FormulaSizesShl sz = formula_sizes_shl(cfg);
  return two_sided(net, cfg, sz.s, sz.t, /*or_side=*/false);
}

Verdict or_tester(const ShlNetwork& net, const TesterConfig& cfg) {
  const FormulaSizesShl sz = formula_sizes_shl(cfg);
  return two_sided(net, cfg, sz.s, sz.t, /*or_side=*/true);
}

Verdict all_zero_tester_sized(const ShlNetwork& net, const TesterConfig& cfg,
                              std::uint64_t s, std::uint64_t t) {
  return two_sided(net, cfg, s, t, /*or_side=*/false);
}

Verdict or_tester_sized(const ShlNetwork& net, const TesterConfig& cfg,
                        std::uint64_t s, std::uint64_t t) {
  return two_sided(net, cfg, s, t, /*or_side=*/true);
}

Verdict one_sided_zero_tester(const ShlNetwork& net, const TesterConfig& cfg) {
  return one_sided(net, cfg, /*or_side=*/false);
}

Verdict one_sided_or_tester(const ShlNetwork& net, const TesterConfig& cfg) {
  return one_sided(net, cfg, /*or_side=*/true);
}

Verdict vanilla_tester(const ShlNetwork& net, std::uint64_t num_samples,
                       Rng& rng) {
  Verdict v;
  v.tester = "vanilla";
  v.note = "queries counts full-network evaluations";
  for (std::uint64_t i = 0; i < num_samples; ++i) {
    BitVector x(net.n);
    for (std::size_t p = 0; p < net.n; ++p) x.set(p, rng.bit());
    v.queries++;
    if (eval_shl(net, x).bit == 1) {
      v.accept = false;
      v.witness = x;
      return v;
    }
  }
  v.accept = true;
  return v;
}

}  // namespace relutest
