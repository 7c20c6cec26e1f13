"""Hypothesis strategies for monomial classes and random perturbation graphs"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from hypothesis import strategies as st

from src.semiring.monomial import ZERO, MonomialClass

Exponents = Dict[Tuple[str, str], Optional[Fraction]]
GraphData = Tuple[List[str], Exponents]

exponents = st.fractions(min_value=0, max_value=12, max_denominator=6)
nonzero_classes = exponents.map(MonomialClass)
monomial_classes = st.one_of(st.just(ZERO), nonzero_classes)
# signed exponents, for elements that never appear as graph weights
signed_classes = st.fractions(min_value=-12, max_value=12, max_denominator=6).map(
    MonomialClass
)

SMALL_ALPHABET: Tuple[Optional[Fraction], ...] = (
    None,
    Fraction(0),
    Fraction(1),
    Fraction(2),
)


def state_list(n: int) -> List[str]:
    """Names s0, s1, ... in canonical order"""
    return [f"s{i}" for i in range(n)]


@st.composite
def graphs(
    draw: st.DrawFn,
    min_size: int = 1,
    max_size: int = 6,
    weights: st.SearchStrategy[Optional[Fraction]] = st.one_of(
        st.none(), exponents
    ),
) -> GraphData:
    """Any digraph: every ordered pair gets an exponent or None (Zero)"""
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    states = state_list(n)
    arcs: Exponents = {}
    for source in states:
        for target in states:
            if source != target:
                arcs[(source, target)] = draw(weights)
    return states, arcs


@st.composite
def strongly_connected_graphs(
    draw: st.DrawFn, min_size: int = 2, max_size: int = 7
) -> GraphData:
    """A random Hamiltonian cycle with random extra arcs on top"""
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    states = state_list(n)
    order = draw(st.permutations(states))
    arcs: Exponents = {}
    for position, source in enumerate(order):
        arcs[(source, order[(position + 1) % n])] = draw(exponents)
    for source in states:
        for target in states:
            if source != target and (source, target) not in arcs:
                arcs[(source, target)] = draw(st.one_of(st.none(), exponents))
    return states, arcs


@st.composite
def graphs_with_merged_class(
    draw: st.DrawFn, min_size: int = 3, max_size: int = 7
) -> Tuple[List[str], Exponents, List[str]]:
    """Graphs whose first few states form an essential class of two or more.

    The class members are joined by a cycle of weight-one arcs and every
    other arc leaving them has a positive exponent.
    """
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    states = state_list(n)
    size = draw(st.integers(min_value=2, max_value=n - 1))
    members = states[:size]
    positive = st.fractions(min_value=Fraction(1, 6), max_value=12, max_denominator=6)
    arcs: Exponents = {}
    for source in states:
        for target in states:
            if source == target:
                continue
            if source in members:
                if target == members[(members.index(source) + 1) % size]:
                    arcs[(source, target)] = Fraction(0)
                else:
                    arcs[(source, target)] = draw(st.one_of(st.none(), positive))
            else:
                arcs[(source, target)] = draw(st.one_of(st.none(), exponents))
    return states, arcs, members
