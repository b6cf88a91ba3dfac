// Command-line front end: network generation, single tester runs, and the
// experiment runner.  Exit codes: 0 success, 2 configuration or input error,
// 3 witness-search enumeration cap exceeded.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relutest/brute.hpp"
#include "relutest/constructions.hpp"
#include "relutest/deep.hpp"
#include "relutest/distfree.hpp"
#include "relutest/experiment.hpp"
#include "relutest/io.hpp"
#include "relutest/monotone.hpp"
#include "relutest/testers.hpp"

namespace {

using nlohmann::json;
using namespace relutest;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double uniform_weight(Rng& rng) { return 2.0 * rng.unit() - 1.0; }

struct GenOptions {
  std::string kind;
  std::string out;
  std::string meta;
  std::size_t n = 8;
  std::size_t m = 8;
  unsigned k = 2;
  double eps = 1e-4;
  std::vector<std::uint64_t> items;
  std::vector<std::size_t> dims;
  std::size_t fixed_count = SIZE_MAX;
  std::uint64_t seed = 0;
};

int run_gen(const GenOptions& opt) {
  Rng rng(opt.seed);
  AnyNetwork net = ShlNetwork(1, 1, {0.0}, {0.0});
  json meta;

  if (opt.kind == "random" || opt.kind == "all-zero" || opt.kind == "all-ones") {
    std::vector<double> a(opt.m * opt.n, opt.kind == "all-ones" ? 1.0 : 0.0);
    std::vector<double> w(opt.m, opt.kind == "all-ones" ? 1.0 : 0.0);
    if (opt.kind == "random") {
      for (auto& v : a) v = uniform_weight(rng);
      for (auto& v : w) v = uniform_weight(rng);
    }
    net = ShlNetwork(opt.n, opt.m, std::move(a), std::move(w));
  } else if (opt.kind == "vanilla-hard") {
    VanillaHard hard = vanilla_hardness_network(opt.n, opt.eps);
    meta["block1"] = hard.block1;
    meta["block2"] = hard.block2;
    net = std::move(hard.net);
  } else if (opt.kind == "n1" || opt.kind == "n2") {
    DistFreeNet sampled = opt.kind == "n1" ? sample_n1(opt.n, opt.k, rng)
                                           : sample_n2(opt.n, opt.k, rng);
    meta["k"] = sampled.k;
    meta["gamma"] = sampled.gamma;
    meta["partition"] = sampled.dist.sets;
    net = std::move(sampled.net);
  } else if (opt.kind == "partition") {
    net = partition_reduction(opt.items);
    std::uint64_t total = 0;
    for (auto it : opt.items) total += it;
    meta["items"] = opt.items;
    meta["total"] = total;
  } else if (opt.kind == "complete-zero" || opt.kind == "complete-or") {
    const std::size_t count =
        opt.fixed_count == SIZE_MAX ? opt.m / 4 : opt.fixed_count;
    FixedWeights fixed;
    for (std::size_t c = 0; c < count; ++c) {
      WeightCoord coord;
      if (rng.bit()) {
        coord = {0, static_cast<std::uint32_t>(rng.below(opt.m)),
                 static_cast<std::uint32_t>(rng.below(opt.n))};
      } else {
        coord = {1, static_cast<std::uint32_t>(rng.below(opt.m)), 0};
      }
      fixed[coord] = uniform_weight(rng);
    }
    net = opt.kind == "complete-zero" ? complete_to_zero(opt.n, opt.m, fixed)
                                      : complete_to_or(opt.n, opt.m, fixed);
    json entries = json::array();
    for (const auto& [coord, value] : fixed) {
      entries.push_back({{"layer", coord.layer},
                         {"row", coord.row},
                         {"col", coord.col},
                         {"value", value}});
    }
    meta["fixed"] = std::move(entries);
  } else if (opt.kind == "deep-random" || opt.kind == "deep-zero" ||
             opt.kind == "deep-ones") {
    if (opt.dims.size() < 3) {
      throw std::invalid_argument("deep generators need --dims with >= 3 entries");
    }
    std::vector<std::vector<double>> layers;
    for (std::size_t l = 0; l + 1 < opt.dims.size(); ++l) {
      std::vector<double> mat(opt.dims[l + 1] * opt.dims[l], 1.0);
      if (opt.kind != "deep-ones") {
        for (auto& v : mat) v = uniform_weight(rng);
      }
      layers.push_back(std::move(mat));
    }
    if (opt.kind == "deep-zero") {
      for (auto& v : layers.back()) v = -rng.unit();
    }
    net = DeepNetwork(opt.dims, std::move(layers));
  } else {
    throw std::invalid_argument("unknown generator kind: " + opt.kind);
  }

  save_network(net, opt.out);
  if (!meta.is_null()) {
    const std::string meta_path =
        opt.meta.empty() ? opt.out + ".meta.json" : opt.meta;
    meta["kind"] = opt.kind;
    meta["seed"] = opt.seed;
    write_text(meta_path, meta.dump(2) + "\n");
  }
  return 0;
}

struct TestOptions {
  std::string tester;
  std::string net_path;
  std::string out;
  double eps = 0.25;
  double delta = 1.0;
  double lambda = 0.25;
  double scale = 1.0;
  int enum_cap = 24;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  std::vector<std::uint64_t> sizes;
  std::vector<int> bits;
  std::string target;
  std::vector<std::string> family;
};

json verdict_to_json(const Verdict& v, std::uint64_t seed) {
  json j;
  j["accept"] = v.accept;
  j["bias"] = v.bias;
  j["clamped"] = v.clamped;
  j["note"] = v.note;
  j["queries"] = v.queries;
  j["seed"] = seed;
  j["sizes"] = v.sizes;
  j["tester"] = v.tester;
  j["value_scale"] = v.value_scale;
  if (v.witness.has_value()) {
    std::vector<int> bits(v.witness->size());
    for (std::size_t i = 0; i < v.witness->size(); ++i) {
      bits[i] = v.witness->test(i) ? 1 : 0;
    }
    j["witness"] = bits;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

int run_test(const TestOptions& opt) {
  const AnyNetwork net = load_network(opt.net_path);
  TesterConfig cfg;
  cfg.epsilon = opt.eps;
  cfg.delta = opt.delta;
  cfg.lambda = opt.lambda;
  cfg.constant_scale = opt.scale;
  cfg.enum_cap = opt.enum_cap;
  cfg.seed = opt.seed;

  auto shl = [&]() -> const ShlNetwork& {
    if (const auto* p = std::get_if<ShlNetwork>(&net)) return *p;
    throw std::invalid_argument("tester " + opt.tester +
                                " needs a single-hidden-layer network");
  };
  auto deep = [&]() -> const DeepNetwork& {
    if (const auto* p = std::get_if<DeepNetwork>(&net)) return *p;
    throw std::invalid_argument("tester " + opt.tester +
                                " needs a deep network");
  };

  Verdict verdict;
  if (opt.tester == "all-zero" || opt.tester == "or") {
    const bool sized = opt.s != 0 || opt.t != 0;
    if (sized && (opt.s == 0 || opt.t == 0)) {
      throw std::invalid_argument("--s and --t must be given together");
    }
    if (opt.tester == "all-zero") {
      verdict = sized ? all_zero_tester_sized(shl(), cfg, opt.s, opt.t)
                      : all_zero_tester(shl(), cfg);
    } else {
      verdict = sized ? or_tester_sized(shl(), cfg, opt.s, opt.t)
                      : or_tester(shl(), cfg);
    }
  } else if (opt.tester == "one-sided-zero") {
    verdict = one_sided_zero_tester(shl(), cfg);
  } else if (opt.tester == "one-sided-or") {
    verdict = one_sided_or_tester(shl(), cfg);
  } else if (opt.tester == "vanilla") {
    Rng rng(opt.seed);
    verdict = vanilla_tester(shl(), opt.samples, rng);
  } else if (opt.tester == "all-zero-deep" || opt.tester == "or-deep") {
    if (!opt.sizes.empty()) {
      verdict = opt.tester == "all-zero-deep"
                    ? all_zero_tester_mhl_sized(deep(), cfg, opt.sizes)
                    : or_tester_mhl_sized(deep(), cfg, opt.sizes);
    } else {
      verdict = opt.tester == "all-zero-deep" ? all_zero_tester_mhl(deep(), cfg)
                                              : or_tester_mhl(deep(), cfg);
    }
  } else if (opt.tester == "near-constant") {
    if (opt.bits.empty()) {
      throw std::invalid_argument("near-constant needs --bits");
    }
    if (const auto* p = std::get_if<MoNetwork>(&net)) {
      verdict = near_constant_tester(*p, opt.bits, cfg);
    } else {
      verdict = near_constant_tester(deep(), opt.bits, cfg);
    }
  } else if (opt.tester == "monotone") {
    if (opt.target.empty()) {
      throw std::invalid_argument("monotone needs --target (truth table file)");
    }
    std::size_t table_n = 0;
    GeneratorFn g = load_truth_table(opt.target, &table_n);
    if (table_n != shl().n) {
      throw std::invalid_argument("truth table arity does not match network");
    }
    verdict = monotone_property_tester(shl(), g, cfg);
  } else if (opt.tester == "full-monotone") {
    if (opt.family.empty()) {
      throw std::invalid_argument(
          "full-monotone needs --family (truth table files)");
    }
    std::vector<GeneratorFn> gens;
    for (const auto& path : opt.family) {
      std::size_t table_n = 0;
      gens.push_back(load_truth_table(path, &table_n));
      if (table_n != shl().n) {
        throw std::invalid_argument("truth table arity does not match network");
      }
    }
    verdict = full_monotone_property_tester(shl(), gens, cfg);
  } else {
    throw std::invalid_argument("unknown tester: " + opt.tester);
  }

  write_text(opt.out, verdict_to_json(verdict, opt.seed).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property testers and experiments for small ReLU networks"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate a network file");
  gen->add_option("--kind", gen_opt.kind,
                  "random|all-zero|all-ones|vanilla-hard|n1|n2|partition|"
                  "complete-zero|complete-or|deep-random|deep-zero|deep-ones")
      ->required();
  gen->add_option("--out", gen_opt.out, "output path")->required();
  gen->add_option("--meta", gen_opt.meta, "metadata sidecar path");
  gen->add_option("--n", gen_opt.n, "input count");
  gen->add_option("--m", gen_opt.m, "hidden count");
  gen->add_option("--k", gen_opt.k, "set size for n1/n2");
  gen->add_option("--eps", gen_opt.eps, "epsilon for vanilla-hard");
  gen->add_option("--items", gen_opt.items, "partition items")->delimiter(',');
  gen->add_option("--dims", gen_opt.dims, "deep layer dims")->delimiter(',');
  gen->add_option("--fixed", gen_opt.fixed_count,
                  "fixed weight count for complete-*");
  gen->add_option("--seed", gen_opt.seed, "rng seed");

  TestOptions test_opt;
  CLI::App* test = app.add_subcommand("test", "run one tester on a network");
  test->add_option("--tester", test_opt.tester,
                   "all-zero|or|one-sided-zero|one-sided-or|vanilla|"
                   "all-zero-deep|or-deep|near-constant|monotone|full-monotone")
      ->required();
  test->add_option("--net", test_opt.net_path, "network file")->required();
  test->add_option("--out", test_opt.out, "report path (default stdout)");
  test->add_option("--eps", test_opt.eps, "epsilon");
  test->add_option("--delta", test_opt.delta, "delta");
  test->add_option("--lambda", test_opt.lambda, "failure probability");
  test->add_option("--scale", test_opt.scale, "size formula scale");
  test->add_option("--enum-cap", test_opt.enum_cap,
                   "log2 witness search budget");
  test->add_option("--seed", test_opt.seed, "rng seed");
  test->add_option("--samples", test_opt.samples, "vanilla sample count");
  test->add_option("--s", test_opt.s, "explicit input sample size");
  test->add_option("--t", test_opt.t, "explicit hidden sample size");
  test->add_option("--sizes", test_opt.sizes, "explicit deep sample sizes")
      ->delimiter(',');
  test->add_option("--bits", test_opt.bits, "near-constant target bits")
      ->delimiter(',');
  test->add_option("--target", test_opt.target, "monotone truth table file");
  test->add_option("--family", test_opt.family, "monotone family files")
      ->delimiter(',');

  std::string spec_path, exp_out;
  unsigned threads = 1;
  CLI::App* exp = app.add_subcommand("experiment", "run an experiment spec");
  exp->add_option("--spec", spec_path, "experiment JSON file")->required();
  exp->add_option("--out", exp_out, "CSV output path (default stdout)");
  exp->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen)) return run_gen(gen_opt);
    if (app.got_subcommand(test)) return run_test(test_opt);
    if (app.got_subcommand(exp)) {
      write_text(exp_out, run_experiment(read_text(spec_path), threads));
      return 0;
    }
  } catch (const EnumerationCapError& e) {
    std::cerr << "enumeration cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
