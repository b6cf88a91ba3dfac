"""Property testers and adversarial constructions for small ReLU networks.

Thin wrapper around the compiled ``_core`` extension.  Exact rational
quantities cross the C++ boundary as decimal-string pairs and are rebuilt
here as :class:`fractions.Fraction`.
"""

from fractions import Fraction

from . import _core
from ._core import (
    CSV_HEADER,
    BudgetExceededError,
    DeepNetwork,
    EnumerationCapError,
    MoNetwork,
    ShlNetwork,
    all_zero_tester,
    all_zero_tester_deep,
    check_k_minus_1_wise,
    complete_to_or,
    complete_to_zero,
    completion_probability,
    computes_exactly,
    counterexample,
    coupled_tuple_is_uniform,
    distinguishing_game,
    load_network,
    mean_preactivation,
    monotone_property_tester,
    near_constant_tester,
    network_from_json,
    one_sided_or_tester,
    one_sided_zero_tester,
    or_tester,
    or_tester_deep,
    partition_reduction,
    repair_to_closest,
    run_experiment,
    sample_n1,
    sample_n2,
    save_network,
    to_json,
    vanilla_hardness_network,
    vanilla_tester,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "BudgetExceededError",
    "DeepNetwork",
    "EnumerationCapError",
    "MoNetwork",
    "ShlNetwork",
    "all_zero_tester",
    "all_zero_tester_deep",
    "check_k_minus_1_wise",
    "complete_to_or",
    "complete_to_zero",
    "completion_probability",
    "computes_exactly",
    "counterexample",
    "coupled_tuple_is_uniform",
    "delta_distance",
    "distinguishing_game",
    "expectation_gap",
    "load_network",
    "mean_preactivation",
    "monotone_property_tester",
    "near_constant_tester",
    "network_from_json",
    "one_sided_or_tester",
    "one_sided_zero_tester",
    "or_tester",
    "or_tester_deep",
    "parity_gap",
    "partition_reduction",
    "repair_to_closest",
    "run_experiment",
    "sample_n1",
    "sample_n2",
    "save_network",
    "to_json",
    "vanilla_hardness_network",
    "vanilla_tester",
    "xi",
]


def _fraction(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def xi(k):
    """Exact signed-coupling gap for block size ``k``, as a Fraction."""
    return _fraction(_core.xi(k))


def parity_gap(k):
    """Enumerated gap for block size ``k`` (equals ``xi(k)``), as a Fraction."""
    return _fraction(_core.parity_gap(k))


def expectation_gap(ell, gamma):
    """Exact expectation gap for ``ell`` blocks at bias ``gamma``.

    ``gamma`` may be a Fraction, an int, or anything ``Fraction`` accepts.
    """
    g = Fraction(gamma)
    return _fraction(
        _core.expectation_gap(ell, str(g.numerator), str(g.denominator))
    )


def delta_distance(net, target):
    """Exact fraction of inputs where ``net`` disagrees with ``target``."""
    return _fraction(_core.delta_distance(net, target))
