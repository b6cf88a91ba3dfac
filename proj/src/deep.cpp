#include "relutest/deep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace relutest {

namespace {

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

DeepSizes deep_formula_sizes(const TesterConfig& cfg, std::size_t ell) {
  cfg.validate();
  if (ell < 1) throw std::invalid_argument("need at least one hidden layer");
  const double eps = cfg.epsilon;
  const double lam = cfg.lambda;
  const double pow_term = std::pow(2.0 / eps, 2.0 * static_cast<double>(ell));
  const double base1 =
      512.0 * static_cast<double>((ell + 1) * (ell + 1)) * pow_term;
  const double base2 = 512.0 * static_cast<double>(ell * ell) * pow_term;

  // Least fixed point of the two bound families, iterated from below.  Both
  // right-hand sides are increasing in the other sizes, so plain iteration
  // converges to the smallest solution.
  std::vector<double> s(ell + 1, 1.0);
  for (int iter = 0; iter < 500; ++iter) {
    double max_rel_change = 0.0;
    for (std::size_t k = ell + 1; k-- > 0;) {
      double log_later = 0.0;
      for (std::size_t i = k + 1; i <= ell; ++i) log_later += std::log(s[i]);
      double want =
          base1 * (std::log(2.0 / (lam * static_cast<double>(ell + 1))) +
                   log_later);
      if (k >= 1) {
        const double f2 =
            base2 * ((s[0] + 1.0) * kLn2 +
                     std::log(static_cast<double>(ell) / lam) + log_later);
        if (f2 > want) want = f2;
      }
      if (want < 1.0) want = 1.0;
      const double rel = std::abs(want - s[k]) / want;
      if (rel > max_rel_change) max_rel_change = rel;
      s[k] = want;
    }
    if (max_rel_change < 1e-13) break;
  }

  DeepSizes out;
  out.s.resize(ell + 1);
  out.c.resize(ell + 1);
  const double log_el = std::log(1.0 / (lam * eps));
  const double shape0 = std::pow(eps, -2.0 * static_cast<double>(ell)) * log_el;
  const double shapek =
      std::pow(eps, -4.0 * static_cast<double>(ell)) * log_el * log_el;
  for (std::size_t k = 0; k <= ell; ++k) {
    const double scaled = cfg.constant_scale * s[k];
    out.s[k] = scaled >= 1.8e19 ? UINT64_MAX
                                : static_cast<std::uint64_t>(std::ceil(scaled));
    out.c[k] = s[k] / (k == 0 ? shape0 : shapek);
  }
  return out;
}

namespace {

Verdict deep_tester(const DeepNetwork& net, const TesterConfig& cfg,
                    const std::vector<std::uint64_t>& sizes, bool or_side) {
  cfg.validate();
  if (net.outputs() != 1) {
    throw std::invalid_argument(
        "deep tester needs a single-output network; restrict an output first");
  }
  const std::size_t ell = net.depth();
  if (sizes.size() != ell + 1) {
    throw std::invalid_argument("need one sample size per layer 0..ell");
  }

  Verdict v;
  v.tester = or_side ? "or-deep" : "all-zero-deep";

  Rng rng(derive_seed(cfg.seed, 0, "deep-plan"));
  const SamplePlan plan = draw_plan_deep(net.dims, sizes, rng);
  DeepOracle oracle(net);
  const SubDeep sub = extract_sub_deep(oracle, plan);

  v.sizes.assign(sub.sizes.begin(), sub.sizes.end());
  v.clamped = plan.clamped;
  v.queries = oracle.distinct_queries();
  std::uint64_t bound = sub.sizes[ell];
  for (std::size_t k = 0; k < ell; ++k) bound += sub.sizes[k] * sub.sizes[k + 1];
  if (v.queries > bound) {
    throw std::logic_error("deep tester: query accounting exceeded its bound");
  }

  double dim_prod = 1.0;
  for (std::size_t k = 0; k <= ell; ++k) {
    dim_prod *= static_cast<double>(net.dims[k]);
  }
  const double eps_half_pow =
      std::pow(cfg.epsilon / 2.0, static_cast<double>(ell));
  v.bias = (or_side ? 0.25 : 0.0625) * eps_half_pow * dim_prod;
  v.value_scale = sub.scale;

  SearchSpec spec;
  spec.negate = or_side;  // value + bias < 0  <=>  (-value) > bias
  spec.threshold = v.bias;
  spec.strict = true;
  spec.enum_cap = cfg.enum_cap;

  const SearchOutcome res = threshold_search_deep(sub, spec);
  v.accept = !res.found;
  if (res.found) {
    v.witness = embed_assignment(net.inputs(), sub.idx[0], res.xs);
  }
  return v;
}

struct SubCallPlan {
  double eps_prime = 0.0;
  std::string note;
};

SubCallPlan reduction_parameters(const TesterConfig& cfg, std::size_t ell,
                                 std::size_t m0, std::size_t outputs) {
  SubCallPlan p;
  char buf[160];
  if (ell == 0) {
    p.eps_prime = cfg.epsilon * cfg.epsilon / 1025.0;
    std::snprintf(buf, sizeof buf, "eps_prime=%.9g delta=%.9g", p.eps_prime,
                  cfg.delta);
  } else {
    p.eps_prime =
        std::pow(cfg.epsilon / (2.0 - cfg.epsilon), static_cast<double>(ell)) /
        (17.0 * static_cast<double>(ell + 1));
    const double lam_star = static_cast<double>(ell + 1) * cfg.lambda;
    const double delta_prime =
        (cfg.delta - std::exp(-static_cast<double>(m0) / 16.0) -
         lam_star * static_cast<double>(outputs)) /
        static_cast<double>(outputs);
    std::snprintf(buf, sizeof buf, "eps_prime=%.9g delta_prime=%.9g",
                  p.eps_prime, delta_prime);
  }
  p.note = buf;
  return p;
}

// Shared skeleton: sample outputs with replacement, run the per-output tester
// three times, reject an output on a 2-of-3 majority.
template <typename RunSub>
Verdict near_constant_skeleton(std::size_t outputs, const std::vector<int>& b,
                               const TesterConfig& cfg, const SubCallPlan& plan,
                               RunSub&& run_sub) {
  cfg.validate();
  if (b.size() != outputs) {
    throw std::invalid_argument("target vector length must match output count");
  }
  for (int bit : b) {
    if (bit != 0 && bit != 1) {
      throw std::invalid_argument("target entries must be 0 or 1");
    }
  }

  Verdict v;
  v.tester = "near-constant";
  v.note = plan.note;

  const std::uint64_t draws =
      static_cast<std::uint64_t>(std::ceil(8.0 / cfg.epsilon));
  Rng pick(derive_seed(cfg.seed, 0, "near-constant-outputs"));
  for (std::uint64_t i = 0; i < draws; ++i) {
    const std::size_t j = static_cast<std::size_t>(pick.below(outputs));
    int rejects = 0;
    std::optional<BitVector> witness;
    for (int rep = 0; rep < 3; ++rep) {
      TesterConfig sub_cfg = cfg;
      sub_cfg.epsilon = plan.eps_prime;
      sub_cfg.seed = derive_seed(cfg.seed, i * 3 + rep, "near-constant-sub");
      const Verdict sv = run_sub(j, b[j], sub_cfg);
      v.queries += sv.queries;
      if (!sv.accept) {
        rejects++;
        if (!witness) witness = sv.witness;
      }
    }
    if (rejects >= 2) {
      v.accept = false;
      v.witness = witness;
      return v;
    }
  }
  v.accept = true;
  return v;
}

}  // namespace

Verdict all_zero_tester_mhl(const DeepNetwork& net, const TesterConfig& cfg) {
  const DeepSizes sz = deep_formula_sizes(cfg, net.depth());
  return deep_tester(net, cfg, sz.s, /*or_side=*/false);
}

Verdict or_tester_mhl(const DeepNetwork& net, const TesterConfig& cfg) {
  const DeepSizes sz = deep_formula_sizes(cfg, net.depth());
  return deep_tester(net, cfg, sz.s, /*or_side=*/true);
}

Verdict all_zero_tester_mhl_sized(const DeepNetwork& net,
                                  const TesterConfig& cfg,
                                  const std::vector<std::uint64_t>& sizes) {
  return deep_tester(net, cfg, sizes, /*or_side=*/false);
}

Verdict or_tester_mhl_sized(const DeepNetwork& net, const TesterConfig& cfg,
                            const std::vector<std::uint64_t>& sizes) {
  return deep_tester(net, cfg, sizes, /*or_side=*/true);
}

Verdict near_constant_tester(const MoNetwork& net, const std::vector<int>& b,
                             const TesterConfig& cfg) {
  const SubCallPlan plan = reduction_parameters(cfg, 0, net.n, net.r);
  return near_constant_skeleton(
      net.r, b, cfg, plan,
      [&](std::size_t j, int target, const TesterConfig& sub_cfg) {
        const ShlNetwork restricted = restrict_output(net, j + 1);
        return target == 0 ? all_zero_tester(restricted, sub_cfg)
                           : or_tester(restricted, sub_cfg);
      });
}

Verdict near_constant_tester(const DeepNetwork& net, const std::vector<int>& b,
                             const TesterConfig& cfg) {
  const SubCallPlan plan =
      reduction_parameters(cfg, net.depth(), net.inputs(), net.outputs());
  return near_constant_skeleton(
      net.outputs(), b, cfg, plan,
      [&](std::size_t j, int target, const TesterConfig& sub_cfg) {
        const DeepNetwork restricted = restrict_output(net, j + 1);
        return target == 0 ? all_zero_tester_mhl(restricted, sub_cfg)
                           : or_tester_mhl(restricted, sub_cfg);
      });
}

}  // namespace relutest
