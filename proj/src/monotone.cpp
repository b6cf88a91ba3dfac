#include "relutest/monotone.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace relutest {

GeneratorFn truth_table_generator(std::vector<std::uint8_t> table,
                                  std::size_t n) {
  if (n > 20) throw std::invalid_argument("truth tables support n <= 20");
  if (table.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("truth table has wrong length");
  }
  return [table = std::move(table), n](const BitVector& x) {
    if (x.size() != n) throw std::invalid_argument("input has wrong length");
    std::size_t idx = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (x.test(p)) idx |= std::size_t{1} << p;
    }
    return table[idx] != 0;
  };
}

GeneratorFn load_truth_table(const std::string& path, std::size_t* n_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
    line.pop_back();
  }
  if (line.empty()) throw std::invalid_argument("empty truth table file");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < line.size()) ++n;
  if ((std::size_t{1} << n) != line.size() || n > 20) {
    throw std::invalid_argument(
        "truth table length must be a power of two (n <= 20)");
  }
  std::vector<std::uint8_t> table(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '0') table[i] = 0;
    else if (line[i] == '1') table[i] = 1;
    else throw std::invalid_argument("truth table characters must be 0/1");
  }
  if (n_out) *n_out = n;
  return truth_table_generator(std::move(table), n);
}

MonotoneSizes monotone_sizes(const TesterConfig& cfg,
                             std::uint64_t family_size) {
  cfg.validate();
  if (family_size == 0) throw std::invalid_argument("empty generator family");
  const double eps2 = cfg.epsilon * cfg.epsilon;
  MonotoneSizes sz;
  const double r = cfg.constant_scale * 2.0 *
                   std::log(2.0 * static_cast<double>(family_size) / cfg.lambda) /
                   cfg.delta;
  sz.r = static_cast<std::uint64_t>(std::ceil(r));
  const double t = cfg.constant_scale * 512.0 *
                   std::log(4.0 * static_cast<double>(sz.r) / cfg.lambda) / eps2;
  sz.t = static_cast<std::uint64_t>(std::ceil(t));
  const double s = cfg.constant_scale * 512.0 *
                   std::log(4.0 * static_cast<double>(sz.t) *
                            static_cast<double>(sz.r) / cfg.lambda) /
                   eps2;
  sz.s = static_cast<std::uint64_t>(std::ceil(s));
  return sz;
}

namespace {

Verdict monotone_impl(const ShlNetwork& net,
                      const std::vector<GeneratorFn>& gens,
                      const TesterConfig& cfg, bool family) {
  cfg.validate();
  if (gens.empty()) throw std::invalid_argument("empty generator family");

  Verdict v;
  v.tester = family ? "full-monotone" : "monotone";

  // A property containing any function must admit f(0) = 0 somewhere in its
  // generators; if every generator demands 1 at the origin, no network (whose
  // output at 0 is always 0) can satisfy the property.
  const BitVector zero(net.n);
  bool all_one_at_zero = true;
  for (const auto& g : gens) {
    if (!g(zero)) {
      all_one_at_zero = false;
      break;
    }
  }
  if (all_one_at_zero) {
    v.accept = false;
    v.witness = zero;
    v.note = "every generator requires 1 at the zero input";
    return v;
  }

  const MonotoneSizes sz = monotone_sizes(cfg, gens.size());
  Rng rng(derive_seed(cfg.seed, 0, "monotone-plan"));
  const SamplePlan plan = draw_plan_shl(net.n, net.m, sz.s, sz.t, rng);
  ShlOracle oracle(net);
  const SubShl sub = extract_sub_shl(oracle, plan);

  v.sizes = {sub.s, sub.t, sz.r};
  v.clamped = plan.clamped;
  v.queries = oracle.distinct_queries();
  if (v.queries > (static_cast<std::uint64_t>(sub.s) + 1) * sub.t) {
    throw std::logic_error("monotone tester: query accounting exceeded bound");
  }

  v.bias = cfg.epsilon * static_cast<double>(net.n) *
           static_cast<double>(net.m) / 8.0;
  v.value_scale = sub.scale;

  // Shared evaluation sample: r uniform inputs, with their sampled values.
  Rng xrng(derive_seed(cfg.seed, 0, "monotone-sample"));
  std::vector<BitVector> xs(sz.r, BitVector(net.n));
  std::vector<double> vals(sz.r, 0.0);
  for (std::uint64_t i = 0; i < sz.r; ++i) {
    BitVector x(net.n);
    for (std::size_t p = 0; p < net.n; ++p) x.set(p, xrng.bit());
    BitVector local(sub.s);
    for (std::size_t p = 0; p < sub.s; ++p) local.set(p, x.test(sub.inputs[p]));
    vals[i] = sub_value(sub, local);
    xs[i] = std::move(x);
  }

  // A point witnesses rejection for g when the sampled value is decisively
  // negative yet g demands a 1 there.
  auto rejects_for = [&](const GeneratorFn& g) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (vals[i] + v.bias < 0.0 && g(xs[i])) return i;
    }
    return std::nullopt;
  };

  if (!family) {
    if (auto hit = rejects_for(gens[0])) {
      v.accept = false;
      v.witness = xs[*hit];
      return v;
    }
    v.accept = true;
    return v;
  }

  std::optional<std::size_t> first_hit;
  for (const auto& g : gens) {
    const auto hit = rejects_for(g);
    if (!hit) {
      v.accept = true;
      return v;
    }
    if (!first_hit) first_hit = hit;
  }
  v.accept = false;
  v.witness = xs[*first_hit];
  return v;
}

}  // namespace

Verdict monotone_property_tester(const ShlNetwork& net, const GeneratorFn& g,
                                 const TesterConfig& cfg) {
  return monotone_impl(net, {g}, cfg, /*family=*/false);
}

Verdict full_monotone_property_tester(const ShlNetwork& net,
                                      const std::vector<GeneratorFn>& gens,
                                      const TesterConfig& cfg) {
  return monotone_impl(net, gens, cfg, /*family=*/true);
}

}  // namespace relutest
