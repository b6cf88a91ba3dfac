"""End-to-end smoke tests for the Python package and the CLI binary.

Run via ctest (which sets PYTHONPATH to the staged package and RELUTEST_CLI
to the built binary) or manually after an editable install.
"""

import json
import os
import subprocess
from fractions import Fraction

import pytest

import relutest


def test_package_surface():
    assert relutest.__version__
    assert relutest.CSV_HEADER.startswith("row,")


def test_eval_matches_manual_arithmetic():
    net = relutest.ShlNetwork(
        n=3, m=2,
        a=[0.5, -0.25, 1.0, -1.0, 0.75, 0.5],
        w=[1.0, -0.5],
    )
    # x = (1,0,1): row 0 sums to 1.5 (kept), row 1 to -0.5 (cut by relu).
    assert net.value([1, 0, 1]) == pytest.approx(1.5)
    assert net.bit([1, 0, 1]) == 1
    assert net.bit([0, 0, 0]) == 0
    with pytest.raises(ValueError):
        net.value([1, 0])  # wrong arity
    with pytest.raises(ValueError):
        relutest.ShlNetwork(1, 1, [2.0], [1.0])  # weight out of range


def test_exact_rational_quantities():
    assert relutest.xi(2) == Fraction(1, 2)
    for k in (2, 4, 6):
        assert relutest.parity_gap(k) == relutest.xi(k)
        assert relutest.check_k_minus_1_wise(k)
        assert not relutest.coupled_tuple_is_uniform(k)
    gamma = Fraction(1, 32)
    for ell in (1, 3, 5):
        gap = relutest.expectation_gap(ell, gamma)
        assert gamma * ell / 4 <= gap <= 4 * gamma * ell


def test_tester_verdict_shape_and_query_bound():
    silent = relutest.ShlNetwork(6, 3, [0.0] * 18, [0.0] * 3)
    v = relutest.one_sided_zero_tester(silent, seed=7)
    assert v["accept"] is True
    assert v["witness"] is None
    s, t = v["sizes"]
    assert v["queries"] <= (s + 1) * t

    loud = relutest.ShlNetwork(4, 2, [1.0] * 8, [1.0, 1.0])
    v2 = relutest.all_zero_tester(loud, seed=11)
    assert v2["accept"] is False
    assert v2["tester"] == "all-zero"

    # Same seed, same verdict.
    a = relutest.vanilla_tester(loud, samples=100, seed=5)
    b = relutest.vanilla_tester(loud, samples=100, seed=5)
    assert a == b
    assert a["accept"] is False  # rejects as soon as a sampled input fires
    assert a["witness"] is not None
    assert loud.value(a["witness"]) > 0


def test_enumeration_cap_is_surfaced():
    dense = relutest.ShlNetwork(12, 4, [1.0] * 48, [1.0] * 4)
    with pytest.raises(relutest.EnumerationCapError):
        relutest.all_zero_tester(dense, enum_cap=1)


def test_oracles_and_completions():
    net = relutest.complete_to_zero(4, 6)
    assert relutest.computes_exactly(net, "zero")
    assert relutest.counterexample(net, "zero") is None
    assert relutest.delta_distance(net, "zero") == Fraction(0)

    ornet = relutest.complete_to_or(4, 6)
    assert relutest.computes_exactly(ornet, "or")

    # 3 = 1 + 2 splits evenly; 1,1,3 cannot.
    splittable = relutest.partition_reduction([3, 1, 2])
    assert relutest.counterexample(splittable, "zero") is not None
    assert not relutest.computes_exactly(splittable, "zero")
    stuck = relutest.partition_reduction([1, 1, 3])
    assert relutest.counterexample(stuck, "zero") is None


def test_json_roundtrip(tmp_path):
    net = relutest.ShlNetwork(
        3, 2, [0.5, -0.25, 1.0, -1.0, 0.75, 0.5], [1.0, -0.5]
    )
    again = relutest.network_from_json(relutest.to_json(net))
    for c in range(8):
        x = [(c >> p) & 1 for p in range(3)]
        assert again.value(x) == net.value(x)

    path = tmp_path / "net.json"
    relutest.save_network(net, str(path))
    loaded = relutest.load_network(str(path))
    assert loaded.n == 3 and loaded.m == 2
    assert loaded.value([1, 1, 1]) == net.value([1, 1, 1])


def test_deep_network_and_tester():
    deep = relutest.DeepNetwork(
        dims=[3, 2, 1],
        layers=[[1.0, 0.0, -0.5, 0.0, 1.0, 0.25], [-0.5, -1.0]],
    )
    assert deep.depth == 1
    assert deep.bits([1, 1, 1]) == [0]  # both output weights negative
    v = relutest.all_zero_tester_deep(deep, sizes=[3, 2], seed=3)
    assert v["tester"] == "all-zero-deep"
    assert v["accept"] is True


def test_constructions_round():
    net, b1, b2 = relutest.vanilla_hardness_network(100, 4e-4)
    assert (b1, b2) == (20, 40)
    assert net.n == 100 and net.m == 100

    n1 = relutest.sample_n1(32, 2, seed=9)
    assert n1.n == 32 and n1.m == 32

    rep = relutest.repair_to_closest(relutest.ShlNetwork(4, 2, [0.5] * 8, [0.5, -0.5]),
                                     eps=0.5, seed=1)
    assert set(rep) >= {"net", "branch", "w_edits", "a_edits", "expectation"}


def test_game_and_completion():
    comp = relutest.completion_probability(1000, 2, 5, trials=50, seed=2)
    assert 0.0 <= comp["empirical"] <= 1.0
    game = relutest.distinguishing_game(64, 2, budget=64, trials=10, seed=4)
    assert game["trials"] == 10
    assert 0.0 <= game["advantage"] <= 1.0


def test_experiment_csv_deterministic_across_threads():
    spec = json.dumps({
        "seed": 99,
        "rows": [
            {"kind": "tester", "trials": 2,
             "generator": {"kind": "random", "n": 10, "m": 6},
             "tester": {"name": "all-zero"}},
            {"kind": "game", "tester": "pair-hunting",
             "n": 16, "k": 2, "budget": 16, "trials": 4},
        ],
    })
    one = relutest.run_experiment(spec, 1)
    four = relutest.run_experiment(spec, 4)
    assert one == four
    assert one.splitlines()[0] == relutest.CSV_HEADER


# --- CLI ------------------------------------------------------------------

@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("RELUTEST_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("RELUTEST_CLI not set")
    return path


def run_cli(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def test_cli_gen_and_test_roundtrip(cli, tmp_path):
    net_path = tmp_path / "net.json"
    gen = run_cli(cli, "gen", "--kind", "random", "--n", "8", "--m", "4",
                  "--seed", "13", "--out", str(net_path))
    assert gen.returncode == 0, gen.stderr
    assert net_path.exists()

    res = run_cli(cli, "test", "--tester", "one-sided-zero",
                  "--net", str(net_path), "--seed", "13")
    assert res.returncode == 0, res.stderr
    verdict = json.loads(res.stdout)
    assert verdict["tester"] == "one-sided-zero"
    assert isinstance(verdict["accept"], bool)

    # The CLI and the bindings agree on the verdict for the same seed.
    lib_net = relutest.load_network(str(net_path))
    lib_verdict = relutest.one_sided_zero_tester(lib_net, seed=13)
    assert lib_verdict["accept"] == verdict["accept"]
    assert lib_verdict["queries"] == verdict["queries"]


def test_cli_error_codes(cli, tmp_path):
    bad = run_cli(cli, "test", "--tester", "no-such", "--net", "missing.json")
    assert bad.returncode == 2

    ones = tmp_path / "ones.json"
    gen = run_cli(cli, "gen", "--kind", "all-ones", "--n", "12", "--m", "4",
                  "--out", str(ones))
    assert gen.returncode == 0, gen.stderr
    capped = run_cli(cli, "test", "--tester", "all-zero", "--net", str(ones),
                     "--enum-cap", "1")
    assert capped.returncode == 3
    assert "cap" in capped.stderr


def test_cli_experiment(cli, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({
        "seed": 7,
        "rows": [
            {"kind": "tester", "trials": 2,
             "generator": {"kind": "all-zero", "n": 8, "m": 4},
             "tester": {"name": "all-zero"}},
        ],
    }))
    out_path = tmp_path / "out.csv"
    res = run_cli(cli, "experiment", "--spec", str(spec_path),
                  "--out", str(out_path), "--threads", "2")
    assert res.returncode == 0, res.stderr
    text = out_path.read_text()
    assert text.splitlines()[0] == relutest.CSV_HEADER
    assert text == relutest.run_experiment(spec_path.read_text(), 1)
