# pylint: disable = missing-function-docstring
"""Tests of the exhaustive reference computations"""

from pytest import raises

from src.graph.perturbation_graph import PerturbationGraph, StateSet, monomial_graph
from src.oracle.brute_force import (
    NotIrreducible,
    TooLarge,
    brute_force_sink_sccs,
    closed_class_stable_states,
    max_arborescence_weight,
    reference_shrink,
    simple_path_max,
    young_stable_states,
)
from src.semiring.monomial import ONE, ZERO, MonomialClass


def e(alpha: str | int) -> MonomialClass:
    return MonomialClass.exp(alpha)


def s(*names: str) -> StateSet:
    return StateSet.of(*names)


def test_two_state_arborescences() -> None:
    graph = monomial_graph(["x", "y"], {("x", "y"): 1, ("y", "x"): 2})
    assert max_arborescence_weight(graph, s("x")) == e(2)
    assert max_arborescence_weight(graph, s("y")) == e(1)
    assert young_stable_states(graph) == (s("y"),)


def test_symmetric_pair_is_all_stable() -> None:
    graph = monomial_graph(["x", "y"], {("x", "y"): 1, ("y", "x"): 1})
    assert young_stable_states(graph) == (s("x"), s("y"))


def test_three_cycle() -> None:
    graph = monomial_graph(
        ["a", "b", "c"], {("a", "b"): 1, ("b", "c"): 2, ("c", "a"): 3}
    )
    weights = {v: max_arborescence_weight(graph, v) for v in graph.vertices}
    assert weights == {s("a"): e(5), s("b"): e(4), s("c"): e(3)}
    assert young_stable_states(graph) == (s("c"),)


def test_arborescence_picks_best_parent(
    nested_vanishing: PerturbationGraph[MonomialClass],
) -> None:
    weights = {
        v.names[0]: max_arborescence_weight(nested_vanishing, v)
        for v in nested_vanishing.vertices
    }
    assert weights == {"t": e(2), "x": e(4), "y": e(3), "z": e(3)}
    assert young_stable_states(nested_vanishing) == (s("t"),)


def test_single_vertex_arborescence(
    single_state: PerturbationGraph[MonomialClass],
) -> None:
    assert max_arborescence_weight(single_state, s("only")) == ONE
    assert young_stable_states(single_state) == (s("only"),)


def test_unreachable_root() -> None:
    graph = monomial_graph(["a", "b"], {("a", "b"): 1})
    assert max_arborescence_weight(graph, s("a")) == ZERO
    assert max_arborescence_weight(graph, s("b")) == e(1)


def test_cap() -> None:
    states = [f"s{i}" for i in range(9)]
    cycle = {(a, b): 1 for a, b in zip(states, states[1:] + states[:1])}
    graph = monomial_graph(states, cycle)
    with raises(TooLarge):
        max_arborescence_weight(graph, s("s0"))
    with raises(TooLarge):
        young_stable_states(graph)
    assert young_stable_states(graph, cap=9) == tuple(graph.vertices)


def test_young_needs_irreducible(two_cycles: PerturbationGraph[MonomialClass]) -> None:
    with raises(NotIrreducible):
        young_stable_states(two_cycles)


def test_simple_path_max(nested_vanishing: PerturbationGraph[MonomialClass]) -> None:
    transient = [s("x"), s("y")]
    assert simple_path_max(nested_vanishing, [s("z")], [s("t")], transient) == e(2)
    assert simple_path_max(nested_vanishing, [s("t")], [s("z")], transient) == e(3)
    assert simple_path_max(nested_vanishing, [s("z")], [s("t")], []) == ZERO
    assert simple_path_max(nested_vanishing, [s("z")], [s("x")], []) == e(1)


def test_reference_shrink(
    transient_paths: PerturbationGraph[MonomialClass],
    transient_paths_shrunk: PerturbationGraph[MonomialClass],
) -> None:
    assert reference_shrink(transient_paths) == transient_paths_shrunk
    with raises(TooLarge):
        reference_shrink(transient_paths, cap=5)


def test_brute_force_sink_sccs() -> None:
    arcs = [("a", "b"), ("b", "a"), ("c", "a"), ("d", "d")]
    assert brute_force_sink_sccs(["a", "b", "c", "d"], arcs) == [["a", "b"], ["d"]]


def test_closed_classes_are_ranked_separately(
    two_cycles: PerturbationGraph[MonomialClass],
    unique_stable: PerturbationGraph[MonomialClass],
    nested_vanishing: PerturbationGraph[MonomialClass],
) -> None:
    assert closed_class_stable_states(two_cycles) == (s("x"), s("z"))
    # z only feeds the closed class {x, y}
    assert closed_class_stable_states(unique_stable) == (s("y"),)
    assert closed_class_stable_states(nested_vanishing) == young_stable_states(
        nested_vanishing
    )


def test_closed_classes_of_isolated_states() -> None:
    graph = monomial_graph(["a", "b", "c"], {("a", "b"): 1, ("a", "c"): 2})
    assert closed_class_stable_states(graph) == (s("b"), s("c"))
    with raises(TooLarge):
        closed_class_stable_states(graph, cap=2)
