// Python bindings for the tester library.  Exact rationals cross the
// boundary as (numerator, denominator) decimal strings so the Python side
// can rebuild them as fractions.Fraction without precision loss; verdicts
// and game results cross as plain dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "relutest/brute.hpp"
#include "relutest/constructions.hpp"
#include "relutest/deep.hpp"
#include "relutest/distfree.hpp"
#include "relutest/experiment.hpp"
#include "relutest/io.hpp"
#include "relutest/model.hpp"
#include "relutest/monotone.hpp"
#include "relutest/rng.hpp"
#include "relutest/testers.hpp"

namespace py = pybind11;
using namespace relutest;

namespace {

BitVector to_bits(const std::vector<int>& xs, std::size_t n) {
  if (xs.size() != n) {
    throw std::invalid_argument("input length " + std::to_string(xs.size()) +
                                " does not match network inputs " +
                                std::to_string(n));
  }
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] != 0 && xs[i] != 1) {
      throw std::invalid_argument("inputs must be 0 or 1");
    }
    if (xs[i]) v.set(i, true);
  }
  return v;
}

std::vector<int> from_bits(const BitVector& v) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.test(i) ? 1 : 0;
  return out;
}

py::tuple rational_pair(const Rational& q) {
  std::ostringstream num, den;
  num << boost::multiprecision::numerator(q);
  den << boost::multiprecision::denominator(q);
  return py::make_tuple(num.str(), den.str());
}

Rational rational_from(const std::string& num, const std::string& den) {
  return Rational(BigInt(num), BigInt(den));
}

TesterConfig make_cfg(double epsilon, double delta, double lambda,
                      double constant_scale, std::uint64_t enum_cap,
                      std::uint64_t seed) {
  TesterConfig cfg;
  cfg.epsilon = epsilon;
  cfg.delta = delta;
  cfg.lambda = lambda;
  cfg.constant_scale = constant_scale;
  cfg.enum_cap = enum_cap;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["accept"] = v.accept;
  d["queries"] = v.queries;
  d["sizes"] = v.sizes;
  d["clamped"] = v.clamped;
  d["bias"] = v.bias;
  d["value_scale"] = v.value_scale;
  d["tester"] = v.tester;
  d["note"] = v.note;
  d["witness"] = v.witness.has_value() ? py::cast(from_bits(*v.witness))
                                       : py::object(py::none());
  return d;
}

Target parse_target(const std::string& name) {
  if (name == "zero") return Target::Zero;
  if (name == "or") return Target::Or;
  throw std::invalid_argument("target must be 'zero' or 'or'");
}

constexpr char kCfgDoc[] =
    "epsilon/delta/lambda/constant_scale/enum_cap/seed configure the tester";

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Property testers and adversarial constructions for small "
              "ReLU networks (C++ core)";

  py::register_exception<EnumerationCapError>(mod, "EnumerationCapError");
  py::register_exception<BudgetExceededError>(mod, "BudgetExceededError");

  // --- models ------------------------------------------------------------
  py::class_<ShlNetwork>(mod, "ShlNetwork")
      .def(py::init<std::size_t, std::size_t, std::vector<double>,
                    std::vector<double>>(),
           py::arg("n"), py::arg("m"), py::arg("a"), py::arg("w"),
           "a is row-major m*n; w has m entries; all weights in [-1, 1]")
      .def_readonly("n", &ShlNetwork::n)
      .def_readonly("m", &ShlNetwork::m)
      .def_readonly("a", &ShlNetwork::a)
      .def_readonly("w", &ShlNetwork::w)
      .def("value",
           [](const ShlNetwork& net, const std::vector<int>& xs) {
             return eval_shl(net, to_bits(xs, net.n)).value;
           },
           py::arg("x"), "pre-threshold output w^T relu(A x)")
      .def("bit",
           [](const ShlNetwork& net, const std::vector<int>& xs) {
             return eval_shl(net, to_bits(xs, net.n)).bit;
           },
           py::arg("x"))
      .def("__repr__", [](const ShlNetwork& net) {
        return "ShlNetwork(n=" + std::to_string(net.n) +
               ", m=" + std::to_string(net.m) + ")";
      });

  py::class_<MoNetwork>(mod, "MoNetwork")
      .def(py::init<std::size_t, std::size_t, std::size_t,
                    std::vector<double>, std::vector<double>>(),
           py::arg("n"), py::arg("m"), py::arg("r"), py::arg("a"),
           py::arg("wmat"),
           "a is row-major m*n; wmat is row-major m*r (output o reads "
           "wmat[j*r+o])")
      .def_readonly("n", &MoNetwork::n)
      .def_readonly("m", &MoNetwork::m)
      .def_readonly("r", &MoNetwork::r)
      .def("values",
           [](const MoNetwork& net, const std::vector<int>& xs) {
             return eval_mo(net, to_bits(xs, net.n)).values;
           },
           py::arg("x"))
      .def("bits",
           [](const MoNetwork& net, const std::vector<int>& xs) {
             return eval_mo(net, to_bits(xs, net.n)).bits;
           },
           py::arg("x"))
      .def("__repr__", [](const MoNetwork& net) {
        return "MoNetwork(n=" + std::to_string(net.n) +
               ", m=" + std::to_string(net.m) +
               ", r=" + std::to_string(net.r) + ")";
      });

  py::class_<DeepNetwork>(mod, "DeepNetwork")
      .def(py::init<std::vector<std::size_t>,
                    std::vector<std::vector<double>>>(),
           py::arg("dims"), py::arg("layers"),
           "dims = (m_0, ..., m_{ell+1}); layer k is row-major "
           "m_{k+1} x m_k")
      .def_readonly("dims", &DeepNetwork::dims)
      .def_property_readonly("depth", &DeepNetwork::depth)
      .def("values",
           [](const DeepNetwork& net, const std::vector<int>& xs) {
             return eval_deep(net, to_bits(xs, net.inputs())).values;
           },
           py::arg("x"))
      .def("bits",
           [](const DeepNetwork& net, const std::vector<int>& xs) {
             return eval_deep(net, to_bits(xs, net.inputs())).bits;
           },
           py::arg("x"))
      .def("__repr__", [](const DeepNetwork& net) {
        std::string s = "DeepNetwork(dims=[";
        for (std::size_t i = 0; i < net.dims.size(); ++i) {
          if (i) s += ", ";
          s += std::to_string(net.dims[i]);
        }
        return s + "])";
      });

  // --- serialization -----------------------------------------------------
  mod.def("to_json", [](const ShlNetwork& n) { return to_json(n); });
  mod.def("to_json", [](const MoNetwork& n) { return to_json(n); });
  mod.def("to_json", [](const DeepNetwork& n) { return to_json(n); });
  mod.def("network_from_json", [](const std::string& text) {
    return std::visit([](auto&& n) { return py::cast(std::move(n)); },
                      network_from_json(text));
  });
  mod.def("save_network", [](py::object net, const std::string& path) {
    if (py::isinstance<ShlNetwork>(net)) {
      save_network(net.cast<ShlNetwork>(), path);
    } else if (py::isinstance<MoNetwork>(net)) {
      save_network(net.cast<MoNetwork>(), path);
    } else {
      save_network(net.cast<DeepNetwork>(), path);
    }
  });
  mod.def("load_network", [](const std::string& path) {
    return std::visit([](auto&& n) { return py::cast(std::move(n)); },
                      load_network(path));
  });

  // --- exact combinatorial quantities ------------------------------------
  mod.def("xi", [](unsigned k) { return rational_pair(xi(k)); }, py::arg("k"));
  mod.def("parity_gap",
          [](unsigned k) { return rational_pair(parity_gap(k)); },
          py::arg("k"));
  mod.def("expectation_gap",
          [](unsigned ell, const std::string& num, const std::string& den) {
            return rational_pair(expectation_gap(ell, rational_from(num, den)));
          },
          py::arg("ell"), py::arg("gamma_num"), py::arg("gamma_den"));
  mod.def("check_k_minus_1_wise", &check_k_minus_1_wise, py::arg("k"));
  mod.def("coupled_tuple_is_uniform", &coupled_tuple_is_uniform, py::arg("k"));

  // --- constructions ------------------------------------------------------
  mod.def("vanilla_hardness_network",
          [](std::size_t n, double eps) {
            VanillaHard h = vanilla_hardness_network(n, eps);
            return py::make_tuple(std::move(h.net), h.block1, h.block2);
          },
          py::arg("n"), py::arg("eps"),
          "returns (network, block1, block2)");
  mod.def("sample_n1",
          [](std::size_t n, unsigned k, std::uint64_t seed) {
            Rng rng(seed);
            return sample_n1(n, k, rng).net;
          },
          py::arg("n"), py::arg("k"), py::arg("seed"));
  mod.def("sample_n2",
          [](std::size_t n, unsigned k, std::uint64_t seed) {
            Rng rng(seed);
            return sample_n2(n, k, rng).net;
          },
          py::arg("n"), py::arg("k"), py::arg("seed"));
  mod.def("partition_reduction", &partition_reduction, py::arg("items"));

  using FixedList =
      std::vector<std::tuple<int, std::uint32_t, std::uint32_t, double>>;
  auto to_fixed = [](const FixedList& entries) {
    FixedWeights fixed;
    for (const auto& [layer, row, col, value] : entries) {
      WeightCoord c;
      c.layer = layer;
      c.row = row;
      c.col = col;
      fixed[c] = value;
    }
    return fixed;
  };
  mod.def("complete_to_zero",
          [to_fixed](std::size_t n, std::size_t m, const FixedList& fixed) {
            return complete_to_zero(n, m, to_fixed(fixed));
          },
          py::arg("n"), py::arg("m"), py::arg("fixed") = FixedList{},
          "fixed: list of (layer, row, col, value); layer 1 entries ignore col");
  mod.def("complete_to_or",
          [to_fixed](std::size_t n, std::size_t m, const FixedList& fixed) {
            return complete_to_or(n, m, to_fixed(fixed));
          },
          py::arg("n"), py::arg("m"), py::arg("fixed") = FixedList{});
  mod.def("mean_preactivation",
          [](const ShlNetwork& net, std::uint64_t seed) {
            Rng rng(seed);
            return mean_preactivation(net, rng);
          },
          py::arg("net"), py::arg("seed") = 0);
  mod.def("repair_to_closest",
          [](const ShlNetwork& net, double eps, std::uint64_t seed) {
            Rng rng(seed);
            RepairResult res = repair_to_closest(net, eps, rng);
            py::dict d;
            d["net"] = py::cast(std::move(res.net));
            d["branch"] = res.branch;
            d["w_edits"] = res.w_edits;
            d["a_edits"] = res.a_edits;
            d["expectation"] = res.expectation;
            return d;
          },
          py::arg("net"), py::arg("eps"), py::arg("seed") = 0);

  // --- exact small-instance oracles ---------------------------------------
  mod.def("computes_exactly",
          [](const ShlNetwork& net, const std::string& target) {
            return computes_exactly(net, parse_target(target));
          },
          py::arg("net"), py::arg("target"));
  mod.def("computes_exactly",
          [](const DeepNetwork& net, const std::string& target) {
            return computes_exactly(net, parse_target(target));
          },
          py::arg("net"), py::arg("target"));
  mod.def("counterexample",
          [](const ShlNetwork& net, const std::string& target) -> py::object {
            auto w = counterexample(net, parse_target(target));
            if (!w.has_value()) return py::none();
            return py::cast(from_bits(*w));
          },
          py::arg("net"), py::arg("target"));
  mod.def("delta_distance",
          [](const ShlNetwork& net, const std::string& target) {
            return rational_pair(delta_distance(net, parse_target(target)));
          },
          py::arg("net"), py::arg("target"));

  // --- testers ------------------------------------------------------------
  auto bind_flat = [&mod](const char* name,
                          Verdict (*plain)(const ShlNetwork&,
                                           const TesterConfig&),
                          Verdict (*sized)(const ShlNetwork&,
                                           const TesterConfig&, std::uint64_t,
                                           std::uint64_t)) {
    mod.def(name,
            [plain, sized](const ShlNetwork& net, double epsilon, double delta,
                           double lambda, double constant_scale,
                           std::uint64_t enum_cap, std::uint64_t seed,
                           std::uint64_t s, std::uint64_t t) {
              TesterConfig cfg = make_cfg(epsilon, delta, lambda,
                                          constant_scale, enum_cap, seed);
              const Verdict v = (sized != nullptr && s > 0 && t > 0)
                                    ? sized(net, cfg, s, t)
                                    : plain(net, cfg);
              return verdict_dict(v);
            },
            py::arg("net"), py::arg("epsilon") = 0.25, py::arg("delta") = 1.0,
            py::arg("lambda_") = 0.25, py::arg("constant_scale") = 1.0,
            py::arg("enum_cap") = 24, py::arg("seed") = 0, py::arg("s") = 0,
            py::arg("t") = 0, kCfgDoc);
  };
  bind_flat("all_zero_tester", &all_zero_tester, &all_zero_tester_sized);
  bind_flat("or_tester", &or_tester, &or_tester_sized);
  bind_flat("one_sided_zero_tester", &one_sided_zero_tester, nullptr);
  bind_flat("one_sided_or_tester", &one_sided_or_tester, nullptr);

  mod.def("vanilla_tester",
          [](const ShlNetwork& net, std::uint64_t samples, std::uint64_t seed) {
            Rng rng(seed);
            return verdict_dict(vanilla_tester(net, samples, rng));
          },
          py::arg("net"), py::arg("samples") = 1000, py::arg("seed") = 0);

  auto bind_deep = [&mod](const char* name,
                          Verdict (*plain)(const DeepNetwork&,
                                           const TesterConfig&),
                          Verdict (*sized)(const DeepNetwork&,
                                           const TesterConfig&,
                                           const std::vector<std::uint64_t>&)) {
    mod.def(name,
            [plain, sized](const DeepNetwork& net, double epsilon, double delta,
                           double lambda, double constant_scale,
                           std::uint64_t enum_cap, std::uint64_t seed,
                           const std::vector<std::uint64_t>& sizes) {
              TesterConfig cfg = make_cfg(epsilon, delta, lambda,
                                          constant_scale, enum_cap, seed);
              const Verdict v =
                  sizes.empty() ? plain(net, cfg) : sized(net, cfg, sizes);
              return verdict_dict(v);
            },
            py::arg("net"), py::arg("epsilon") = 0.25, py::arg("delta") = 1.0,
            py::arg("lambda_") = 0.25, py::arg("constant_scale") = 1.0,
            py::arg("enum_cap") = 24, py::arg("seed") = 0,
            py::arg("sizes") = std::vector<std::uint64_t>{}, kCfgDoc);
  };
  bind_deep("all_zero_tester_deep", &all_zero_tester_mhl,
            &all_zero_tester_mhl_sized);
  bind_deep("or_tester_deep", &or_tester_mhl, &or_tester_mhl_sized);

  mod.def("monotone_property_tester",
          [](const ShlNetwork& net, std::vector<std::uint8_t> table,
             double epsilon, double delta, double lambda, double constant_scale,
             std::uint64_t enum_cap, std::uint64_t seed) {
            if (table.size() != (std::size_t{1} << net.n)) {
              throw std::invalid_argument(
                  "truth table must have 2^n entries");
            }
            TesterConfig cfg = make_cfg(epsilon, delta, lambda, constant_scale,
                                        enum_cap, seed);
            const GeneratorFn g = truth_table_generator(std::move(table), net.n);
            return verdict_dict(monotone_property_tester(net, g, cfg));
          },
          py::arg("net"), py::arg("table"), py::arg("epsilon") = 0.25,
          py::arg("delta") = 1.0, py::arg("lambda_") = 0.25,
          py::arg("constant_scale") = 1.0, py::arg("enum_cap") = 24,
          py::arg("seed") = 0,
          "table[i] is the generator value on the input with bit p = (i>>p)&1");

  mod.def("near_constant_tester",
          [](const MoNetwork& net, const std::vector<int>& b, double epsilon,
             double delta, double lambda, double constant_scale,
             std::uint64_t enum_cap, std::uint64_t seed) {
            TesterConfig cfg = make_cfg(epsilon, delta, lambda, constant_scale,
                                        enum_cap, seed);
            return verdict_dict(near_constant_tester(net, b, cfg));
          },
          py::arg("net"), py::arg("b"), py::arg("epsilon") = 0.25,
          py::arg("delta") = 1.0, py::arg("lambda_") = 0.25,
          py::arg("constant_scale") = 1.0, py::arg("enum_cap") = 24,
          py::arg("seed") = 0);

  // --- sample-access games ------------------------------------------------
  mod.def("completion_probability",
          [](std::size_t n, unsigned k, std::uint64_t q, std::uint64_t trials,
             std::uint64_t seed) {
            CompletionEstimate ce = completion_probability(n, k, q, trials, seed);
            py::dict d;
            d["empirical"] = ce.empirical;
            d["expected_count"] = ce.expected_count;
            return d;
          },
          py::arg("n"), py::arg("k"), py::arg("q"), py::arg("trials") = 1000,
          py::arg("seed") = 0);
  mod.def("distinguishing_game",
          [](std::size_t n, unsigned k, std::uint64_t budget,
             std::uint64_t trials, std::uint64_t seed, unsigned threads,
             const std::string& tester) {
            GameTester fn;
            if (tester == "pair-hunting") {
              fn = pair_hunting_tester;
            } else if (tester == "random-guess") {
              fn = random_guess_tester;
            } else {
              throw std::invalid_argument(
                  "tester must be 'pair-hunting' or 'random-guess'");
            }
            GameResult g = distinguishing_game(fn, n, k, budget, trials, seed,
                                               threads);
            py::dict d;
            d["p_n2_given_n2"] = g.p_n2_given_n2;
            d["p_n2_given_n1"] = g.p_n2_given_n1;
            d["advantage"] = g.advantage;
            d["ci_low"] = g.ci_low;
            d["ci_high"] = g.ci_high;
            d["mean_queries"] = g.mean_queries;
            d["trials"] = g.trials;
            d["budget"] = g.budget;
            return d;
          },
          py::arg("n"), py::arg("k"), py::arg("budget"), py::arg("trials"),
          py::arg("seed") = 0, py::arg("threads") = 1,
          py::arg("tester") = "pair-hunting");

  // --- experiment harness -------------------------------------------------
  mod.def("run_experiment", &run_experiment, py::arg("spec_text"),
          py::arg("threads") = 1, "returns the experiment results as CSV text");
  mod.attr("CSV_HEADER") = kExperimentCsvHeader;
}
