#include "relutest/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "relutest/brute.hpp"
#include "relutest/constructions.hpp"
#include "relutest/deep.hpp"
#include "relutest/distfree.hpp"
#include "relutest/io.hpp"
#include "relutest/stats.hpp"
#include "relutest/testers.hpp"

namespace relutest {

const char* const kExperimentCsvHeader =
    "row,kind,generator,tester,world,n,m,k,budget,trials,epsilon,delta,lambda,"
    "scale,sizes,clamped,accept_rate,ci_low,ci_high,mean_queries,advantage";

namespace {

using nlohmann::json;

std::string fmt_stat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_cfg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double uniform_weight(Rng& rng) { return 2.0 * rng.unit() - 1.0; }

std::uint64_t require_u64(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
    throw std::invalid_argument(std::string("experiment: missing field ") +
                                key);
  }
  return obj[key].get<std::uint64_t>();
}

std::vector<std::size_t> require_dims(const json& obj) {
  if (!obj.contains("dims") || !obj["dims"].is_array()) {
    throw std::invalid_argument("experiment: generator needs dims");
  }
  std::vector<std::size_t> dims;
  for (const auto& d : obj["dims"]) dims.push_back(d.get<std::size_t>());
  return dims;
}

AnyNetwork build_network(const json& gen, std::uint64_t seed) {
  const std::string kind = gen.value("kind", "");
  Rng rng(seed);

  if (kind == "random" || kind == "all-zero" || kind == "all-ones") {
    const std::size_t n = require_u64(gen, "n");
    const std::size_t m = require_u64(gen, "m");
    std::vector<double> a(m * n, kind == "all-ones" ? 1.0 : 0.0);
    std::vector<double> w(m, kind == "all-ones" ? 1.0 : 0.0);
    if (kind == "random") {
      for (auto& v : a) v = uniform_weight(rng);
      for (auto& v : w) v = uniform_weight(rng);
    }
    return ShlNetwork(n, m, std::move(a), std::move(w));
  }
  if (kind == "vanilla-hard") {
    const std::size_t n = require_u64(gen, "n");
    const double eps = gen.value("eps", 0.0);
    return vanilla_hardness_network(n, eps).net;
  }
  if (kind == "n1" || kind == "n2") {
    const std::size_t n = require_u64(gen, "n");
    const unsigned k = static_cast<unsigned>(require_u64(gen, "k"));
    return kind == "n1" ? sample_n1(n, k, rng).net : sample_n2(n, k, rng).net;
  }
  if (kind == "partition") {
    if (!gen.contains("items") || !gen["items"].is_array()) {
      throw std::invalid_argument("experiment: partition generator needs items");
    }
    std::vector<std::uint64_t> items;
    for (const auto& it : gen["items"]) items.push_back(it.get<std::uint64_t>());
    return partition_reduction(items);
  }
  if (kind == "complete-zero" || kind == "complete-or") {
    const std::size_t n = require_u64(gen, "n");
    const std::size_t m = require_u64(gen, "m");
    const std::size_t count = gen.value("fixed", m / 4);
    FixedWeights fixed;
    for (std::size_t c = 0; c < count; ++c) {
      WeightCoord coord;
      if (rng.bit()) {
        coord = {0, static_cast<std::uint32_t>(rng.below(m)),
                 static_cast<std::uint32_t>(rng.below(n))};
      } else {
        coord = {1, static_cast<std::uint32_t>(rng.below(m)), 0};
      }
      fixed[coord] = uniform_weight(rng);
    }
    return kind == "complete-zero" ? complete_to_zero(n, m, fixed)
                                   : complete_to_or(n, m, fixed);
  }
  if (kind == "deep-random" || kind == "deep-zero" || kind == "deep-ones") {
    const auto dims = require_dims(gen);
    if (dims.size() < 3) {
      throw std::invalid_argument("experiment: deep generator needs >= 3 dims");
    }
    std::vector<std::vector<double>> layers;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
      std::vector<double> mat(dims[l + 1] * dims[l], 1.0);
      if (kind != "deep-ones") {
        for (auto& v : mat) v = uniform_weight(rng);
      }
      layers.push_back(std::move(mat));
    }
    if (kind == "deep-zero") {
      // Non-positive final weights make the last pre-activation <= 0 on every
      // input: the network computes the constant 0.
      for (auto& v : layers.back()) v = -rng.unit();
    }
    return DeepNetwork(dims, std::move(layers));
  }
  throw std::invalid_argument("experiment: unknown generator kind '" + kind +
                              "'");
}

TesterConfig config_from(const json& tester, std::uint64_t seed) {
  TesterConfig cfg;
  cfg.epsilon = tester.value("epsilon", cfg.epsilon);
  cfg.delta = tester.value("delta", cfg.delta);
  cfg.lambda = tester.value("lambda", cfg.lambda);
  cfg.constant_scale = tester.value("scale", cfg.constant_scale);
  cfg.enum_cap = tester.value("enum_cap", cfg.enum_cap);
  cfg.seed = seed;
  return cfg;
}

const ShlNetwork& as_shl(const AnyNetwork& net, const std::string& name) {
  if (const auto* p = std::get_if<ShlNetwork>(&net)) return *p;
  throw std::invalid_argument("tester " + name +
                              " needs a single-hidden-layer network");
}

const DeepNetwork& as_deep(const AnyNetwork& net, const std::string& name) {
  if (const auto* p = std::get_if<DeepNetwork>(&net)) return *p;
  throw std::invalid_argument("tester " + name + " needs a deep network");
}

Verdict run_tester(const json& tester, const AnyNetwork& net,
                   std::uint64_t seed) {
  const std::string name = tester.value("name", "");
  TesterConfig cfg = config_from(tester, seed);

  if (name == "all-zero" || name == "or") {
    const auto& shl = as_shl(net, name);
    if (tester.contains("s") || tester.contains("t")) {
      const std::uint64_t s = require_u64(tester, "s");
      const std::uint64_t t = require_u64(tester, "t");
      return name == "all-zero" ? all_zero_tester_sized(shl, cfg, s, t)
                                : or_tester_sized(shl, cfg, s, t);
    }
    return name == "all-zero" ? all_zero_tester(shl, cfg)
                              : or_tester(shl, cfg);
  }
  if (name == "one-sided-zero") {
    return one_sided_zero_tester(as_shl(net, name), cfg);
  }
  if (name == "one-sided-or") {
    return one_sided_or_tester(as_shl(net, name), cfg);
  }
  if (name == "vanilla") {
    const std::uint64_t samples = tester.value("samples", std::uint64_t{1000});
    Rng rng(seed);
    return vanilla_tester(as_shl(net, name), samples, rng);
  }
  if (name == "all-zero-deep" || name == "or-deep") {
    const auto& deep = as_deep(net, name);
    if (tester.contains("sizes")) {
      std::vector<std::uint64_t> sizes;
      for (const auto& s : tester["sizes"]) sizes.push_back(s.get<std::uint64_t>());
      return name == "all-zero-deep"
                 ? all_zero_tester_mhl_sized(deep, cfg, sizes)
                 : or_tester_mhl_sized(deep, cfg, sizes);
    }
    return name == "all-zero-deep" ? all_zero_tester_mhl(deep, cfg)
                                   : or_tester_mhl(deep, cfg);
  }
  throw std::invalid_argument("experiment: unknown tester '" + name + "'");
}

void network_shape(const AnyNetwork& net, std::uint64_t* n, std::uint64_t* m) {
  if (const auto* p = std::get_if<ShlNetwork>(&net)) {
    *n = p->n;
    *m = p->m;
  } else if (const auto* p = std::get_if<MoNetwork>(&net)) {
    *n = p->n;
    *m = p->m;
  } else {
    const auto* d = std::get_if<DeepNetwork>(&net);
    *n = d->dims.front();
    *m = d->dims[1];
  }
}

struct TrialSlot {
  bool accept = false;
  std::uint64_t queries = 0;
  std::vector<std::uint64_t> sizes;
  bool clamped = false;
  std::uint64_t n = 0, m = 0;
  std::exception_ptr error;
};

void run_trials(std::uint64_t trials, unsigned threads,
                const std::function<void(std::uint64_t)>& body,
                std::vector<TrialSlot>& slots) {
  auto guarded = [&](std::uint64_t t) {
    try {
      body(t);
    } catch (...) {
      slots[t].error = std::current_exception();
    }
  };
  if (threads <= 1 || trials <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) guarded(t);
  } else {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t t = w; t < trials; t += workers) guarded(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& slot : slots) {
    if (slot.error) std::rethrow_exception(slot.error);
  }
}

std::string join_sizes(const std::vector<std::uint64_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(sizes[i]);
  }
  return out;
}

void emit_tester_row(std::ostringstream& csv, std::size_t row_index,
                     const json& row, std::uint64_t row_seed, unsigned threads) {
  const std::uint64_t trials = require_u64(row, "trials");
  if (trials == 0) throw std::invalid_argument("experiment: zero trials");
  if (!row.contains("generator") || !row.contains("tester")) {
    throw std::invalid_argument("experiment: row needs generator and tester");
  }
  const json& gen = row["generator"];
  const json& tester = row["tester"];

  std::vector<TrialSlot> slots(trials);
  run_trials(
      trials, threads,
      [&](std::uint64_t t) {
        const AnyNetwork net =
            build_network(gen, derive_seed(row_seed, t, "gen"));
        const Verdict v = run_tester(tester, net, derive_seed(row_seed, t, "test"));
        slots[t].accept = v.accept;
        slots[t].queries = v.queries;
        if (t == 0) {
          slots[t].sizes = v.sizes;
          slots[t].clamped = v.clamped;
          network_shape(net, &slots[t].n, &slots[t].m);
        }
      },
      slots);

  std::uint64_t accepts = 0;
  double query_sum = 0.0;
  for (const auto& slot : slots) {
    accepts += slot.accept ? 1 : 0;
    query_sum += static_cast<double>(slot.queries);
  }
  const Interval ci = wilson_interval(accepts, trials);
  const std::uint64_t n = slots[0].n;
  const std::uint64_t m = slots[0].m;

  const bool has_cfg = tester.value("name", "") != "vanilla";
  const TesterConfig cfg = config_from(tester, 0);

  csv << row_index << ",tester," << gen.value("kind", "") << ','
      << tester.value("name", "") << ",," << n << ',' << m << ','
      << (gen.contains("k") ? std::to_string(require_u64(gen, "k")) : "")
      << ",," << trials << ',';
  if (has_cfg) {
    csv << fmt_cfg(cfg.epsilon) << ',' << fmt_cfg(cfg.delta) << ','
        << fmt_cfg(cfg.lambda) << ',' << fmt_cfg(cfg.constant_scale) << ',';
  } else {
    csv << ",,,,";
  }
  csv << join_sizes(slots[0].sizes) << ',' << (slots[0].clamped ? 1 : 0) << ','
      << fmt_stat(static_cast<double>(accepts) / static_cast<double>(trials))
      << ',' << fmt_stat(ci.low) << ',' << fmt_stat(ci.high) << ','
      << fmt_stat(query_sum / static_cast<double>(trials)) << ",\n";
}

void emit_game_rows(std::ostringstream& csv, std::size_t row_index,
                    const json& row, std::uint64_t row_seed, unsigned threads) {
  const std::uint64_t trials = require_u64(row, "trials");
  const std::uint64_t n = require_u64(row, "n");
  const unsigned k = static_cast<unsigned>(require_u64(row, "k"));
  const std::uint64_t budget = require_u64(row, "budget");
  const std::string name = row.value("tester", "pair-hunting");

  GameTester tester;
  if (name == "pair-hunting") {
    tester = pair_hunting_tester;
  } else if (name == "random-guess") {
    tester = random_guess_tester;
  } else {
    throw std::invalid_argument("experiment: unknown game tester '" + name +
                                "'");
  }

  const GameResult res =
      distinguishing_game(tester, n, k, budget, trials, row_seed, threads);

  const auto world_line = [&](const char* world, double p) {
    const auto count =
        static_cast<std::uint64_t>(std::llround(p * static_cast<double>(trials)));
    const Interval ci = wilson_interval(count, trials);
    csv << row_index << ",game,lazy," << name << ',' << world << ',' << n
        << ",," << k << ',' << budget << ',' << trials << ",,,,,,,"
        << fmt_stat(p) << ',' << fmt_stat(ci.low) << ',' << fmt_stat(ci.high)
        << ",,\n";
  };
  world_line("N2", res.p_n2_given_n2);
  world_line("N1", res.p_n2_given_n1);
  csv << row_index << ",game,lazy," << name << ",advantage," << n << ",," << k
      << ',' << budget << ',' << trials << ",,,,,,,,"
      << fmt_stat(res.ci_low) << ',' << fmt_stat(res.ci_high) << ','
      << fmt_stat(res.mean_queries) << ',' << fmt_stat(res.advantage) << '\n';
}

}  // namespace

std::string run_experiment(const std::string& spec_text, unsigned threads) {
  json spec;
  try {
    spec = json::parse(spec_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment: bad JSON: ") +
                                e.what());
  }
  if (!spec.is_object() || !spec.contains("rows") || !spec["rows"].is_array()) {
    throw std::invalid_argument("experiment: spec needs a rows array");
  }
  const std::uint64_t seed = spec.value("seed", std::uint64_t{0});

  std::ostringstream csv;
  csv << kExperimentCsvHeader << '\n';
  std::size_t row_index = 0;
  for (const auto& row : spec["rows"]) {
    const std::uint64_t row_seed = derive_seed(seed, row_index, "row");
    const std::string kind = row.value("kind", "tester");
    if (kind == "tester") {
      emit_tester_row(csv, row_index, row, row_seed, threads);
    } else if (kind == "game") {
      emit_game_rows(csv, row_index, row, row_seed, threads);
    } else {
      throw std::invalid_argument("experiment: unknown row kind '" + kind +
                                  "'");
    }
    row_index++;
  }
  return csv.str();
}

}  // namespace relutest
