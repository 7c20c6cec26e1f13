# pylint: disable = missing-function-docstring
"""Tests of the stationary solver and the epsilon sweep"""

import logging
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np
from pytest import LogCaptureFixture, approx, mark, raises

from src.cli.document import InputDocument
from src.oracle.brute_force import NotIrreducible
from src.oracle.numeric import (
    EmpiricalClass,
    MonomialSpec,
    NumericChain,
    RowNotStochastic,
    classify_sweep,
    componentwise_stationary,
    empirical_stability,
    stationary_distribution,
)

Arcs = Dict[Tuple[str, str], MonomialSpec]


def unit(alpha: int) -> MonomialSpec:
    return MonomialSpec(alpha=Fraction(alpha))


TWO_CYCLES: Arcs = {
    ("x", "y"): unit(3),
    ("y", "x"): unit(2),
    ("z", "t"): unit(9),
    ("t", "z"): unit(6),
}
UNIQUE_STABLE: Arcs = {
    ("x", "y"): unit(1),
    ("y", "x"): unit(2),
    ("z", "y"): unit(0),
}


def test_monomial_spec() -> None:
    spec = MonomialSpec(coeff=Fraction(1, 2), alpha=Fraction(2))
    assert spec.value(0.1) == approx(0.005)
    with raises(ValueError):
        MonomialSpec(coeff=Fraction(0), alpha=Fraction(1))
    with raises(ValueError):
        MonomialSpec(alpha=Fraction(-1))


def test_two_state_balance() -> None:
    chain = NumericChain(
        states=("a", "b"),
        offdiag={
            ("a", "b"): MonomialSpec(coeff=Fraction(3, 10), alpha=Fraction(0)),
            ("b", "a"): MonomialSpec(coeff=Fraction(1, 10), alpha=Fraction(0)),
        },
        epsilon=0.5,
    )
    mu = stationary_distribution(chain)
    assert mu["a"] == approx(0.25, abs=1e-12)
    assert mu["b"] == approx(0.75, abs=1e-12)


def test_uniform_complete_graph() -> None:
    states = ("a", "b", "c")
    third = MonomialSpec(coeff=Fraction(1, 3), alpha=Fraction(0))
    chain = NumericChain(
        states=states,
        offdiag={(u, v): third for u in states for v in states if u != v},
        epsilon=0.1,
    )
    matrix = chain.matrix()
    assert np.allclose(matrix.sum(axis=1), 1.0)
    assert matrix[0, 0] == approx(1 / 3)
    assert list(stationary_distribution(chain).values()) == approx([1 / 3] * 3)


def test_reducible_chain_is_solved_per_closed_class() -> None:
    epsilon = 1e-3
    chain = NumericChain(states=("x", "y", "z"), offdiag=UNIQUE_STABLE, epsilon=epsilon)
    assert chain.closed_classes() == [[0, 1]]
    with raises(NotIrreducible):
        stationary_distribution(chain)
    solved = componentwise_stationary(chain)
    mu = solved.distribution
    assert mu["y"] > 0.99
    assert mu["x"] == approx(epsilon * mu["y"], rel=1e-9)
    assert mu["z"] < 1e-2
    assert solved.residual <= 1e-12


def test_row_not_stochastic() -> None:
    full = MonomialSpec(alpha=Fraction(0))
    chain = NumericChain(
        states=("a", "b", "c"),
        offdiag={("a", "b"): full, ("a", "c"): full},
        epsilon=0.1,
    )
    with raises(RowNotStochastic):
        chain.generator()


@mark.parametrize("epsilon", [0.0, 1.5])
def test_epsilon_range(epsilon: float) -> None:
    with raises(ValueError):
        NumericChain(states=("a",), offdiag={}, epsilon=epsilon)


@mark.parametrize(
    "values, threshold, expected",
    [
        ([0.5, 0.5, 0.6], 0.01, EmpiricalClass.STABLE),
        ([0.1, 0.01, 0.001], 0.01, EmpiricalClass.VANISHING),
        ([0.3, 0.2, 0.1], 0.15, EmpiricalClass.VANISHING),
        ([0.0, 0.0], 0.01, EmpiricalClass.VANISHING),
        ([0.02, 0.03, 0.005], 0.01, EmpiricalClass.INCONCLUSIVE),
        ([0.001, 0.1, 0.001], 0.01, EmpiricalClass.INCONCLUSIVE),
    ],
)
def test_classify_sweep(
    values: list[float], threshold: float, expected: EmpiricalClass
) -> None:
    assert classify_sweep(values, threshold) is expected


def test_sweep_unique_stable() -> None:
    report = empirical_stability(("x", "y", "z"), UNIQUE_STABLE)
    assert report.stable == ("y",)
    assert report.with_class(EmpiricalClass.VANISHING) == ("x", "z")
    assert report.epsilons == (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)
    assert report.max_residual <= 1e-12


def test_sweep_two_cycles_per_component() -> None:
    report = empirical_stability(("x", "y", "z", "t"), TWO_CYCLES)
    assert report.stable == ("x", "z")
    assert report.with_class(EmpiricalClass.VANISHING) == ("t", "y")
    assert report.max_residual <= 1e-12


def test_sweep_with_coefficients(nested_vanishing_document: InputDocument) -> None:
    assert nested_vanishing_document.has_coefficients()
    report = empirical_stability(
        nested_vanishing_document.states,
        nested_vanishing_document.to_monomial_specs(),
    )
    assert report.stable == ("t",)
    assert report.with_class(EmpiricalClass.INCONCLUSIVE) == ()
    epsilon = report.epsilons[0]
    expected_t = 1 / (1 + 3 * epsilon + 2 * epsilon**2)
    assert report.table[0]["t"] == approx(expected_t, rel=1e-9)


def test_sweep_drops_ill_conditioned_epsilons(caplog: LogCaptureFixture) -> None:
    caplog.set_level(logging.WARNING)
    report = empirical_stability(
        ("x", "y", "z"), UNIQUE_STABLE, epsilons=[1e-7, 1e-1, 1e-2]
    )
    assert report.epsilons == (1e-1, 1e-2)
    assert report.dropped_epsilons == (1e-7,)
    assert "conditioning floor" in caplog.text
    with raises(ValueError):
        empirical_stability(("x", "y", "z"), UNIQUE_STABLE, epsilons=[1e-8])


def test_sweep_frame_and_workers() -> None:
    report = empirical_stability(("x", "y", "z"), UNIQUE_STABLE)
    parallel = empirical_stability(("x", "y", "z"), UNIQUE_STABLE, max_workers=3)
    assert parallel.table == report.table
    frame = report.to_frame()
    assert frame.index.name == "epsilon"
    assert list(frame.columns) == ["x", "y", "z"]
    assert frame.loc[1e-3, "y"] == approx(1 / (1 + 1e-3))
