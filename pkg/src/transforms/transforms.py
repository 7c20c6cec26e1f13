"""
Outgoing scaling, essential collapse and shrinking of perturbation graphs.

All three are pure: they read an immutable PerturbationGraph and return a
new one. Hub only needs outgoing_scale and shrink; essential_collapse is
kept public so the collapse/shrink commutation can be checked.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Generic, Iterable, List, Optional, Sequence

import numpy as np

from src.graph.perturbation_graph import (
    EssentialStructure,
    PerturbationGraph,
    StateSet,
    essential_structure,
)
from src.graph.semiring_paths import dijkstra_row
from src.semiring.ordered_division import F, Matrix, OrderedDivisionSemiring

logger = logging.getLogger(__name__)


class InvalidClass(ValueError):
    """Raised when a vertex set is not an essential class of the graph"""


@dataclass(frozen=True, kw_only=True)
class ScalingResult(Generic[F]):
    """Divisor M and the graph divided by it.

    When M is zero the graph is returned unchanged and there is nothing left
    to scale.
    """

    divisor: F
    scaled: PerturbationGraph[F]

    @property
    def terminal(self) -> bool:
        """True when every weight is zero"""
        return self.scaled.semiring.is_zero(self.divisor)


def outgoing_scale(graph: PerturbationGraph[F]) -> ScalingResult[F]:
    """Divide every weight by the le-greatest off-diagonal weight

    Args:
        graph (PerturbationGraph): graph with at least one vertex

    Returns:
        ScalingResult: the divisor and the scaled graph
    """
    semiring = graph.semiring
    divisor_cell = semiring.reduce_max(graph.matrix)
    divisor = semiring.decode(divisor_cell)
    if semiring.is_zero(divisor):
        return ScalingResult(divisor=divisor, scaled=graph)
    scaled = semiring.adiv(graph.matrix, semiring.as_scalar(divisor_cell))
    return ScalingResult(
        divisor=divisor,
        scaled=PerturbationGraph(semiring, graph.vertices, scaled),
    )


def essential_collapse(
    graph: PerturbationGraph[F], essential_class: Iterable[StateSet]
) -> PerturbationGraph[F]:
    """Merge an essential class into one vertex; its weights become le-maxima
    over the members

    Raises:
        InvalidClass: if the vertices are not a sink SCC of the essential graph
    """
    members = frozenset(essential_class)
    structure = essential_structure(graph)
    if members not in {frozenset(c) for c in structure.essential_classes}:
        raise InvalidClass(
            f"{{{'; '.join(sorted(map(str, members)))}}} is not an essential class"
        )
    semiring = graph.semiring
    inside = sorted(graph.index_of(v) for v in members)
    outside = [i for i in range(graph.n) if i not in set(inside)]

    matrix = semiring.zeros((len(outside) + 1, len(outside) + 1))
    matrix[:-1, :-1] = graph.matrix[np.ix_(outside, outside)]
    matrix[-1, :-1] = semiring.reduce_max(graph.matrix[np.ix_(inside, outside)], 0)
    matrix[:-1, -1] = semiring.reduce_max(graph.matrix[np.ix_(outside, inside)], 1)
    vertices = [graph.vertices[i] for i in outside] + [StateSet.union(members)]
    return PerturbationGraph.from_unordered(semiring, vertices, matrix)


def _class_column_max(
    semiring: OrderedDivisionSemiring[Any],
    rows: Matrix,
    columns: Sequence[Sequence[int]],
) -> Matrix:
    """For each class, the le-max of rows over that class's columns"""
    result = semiring.zeros((rows.shape[0], len(columns)))
    for j, cols in enumerate(columns):
        result[:, j] = semiring.reduce_max(rows[:, list(cols)], 1)
    return result


def shrink(
    graph: PerturbationGraph[F],
    structure: Optional[EssentialStructure] = None,
    max_workers: int = 1,
) -> PerturbationGraph[F]:
    """Replace every essential class by one vertex and drop the transients.

    The weight from class i to class j is the best product over simple paths
    from a member of i to a member of j whose interior is transient. Direct
    arcs are handled first; longer paths come from one Dijkstra run per
    transient vertex over the transient rows only, combined with the best
    first arc from each class.

    Args:
        graph (PerturbationGraph): scaled graph, every weight at most one
        structure (EssentialStructure, optional): precomputed essential data
        max_workers (int): threads for the per-transient Dijkstra runs

    Returns:
        PerturbationGraph: one vertex per essential class
    """
    semiring = graph.semiring
    if structure is None:
        structure = essential_structure(graph)
    if not structure.essential_classes:
        raise ValueError("a graph without vertices has nothing to shrink")

    class_rows: List[List[int]] = [
        [graph.index_of(v) for v in members] for members in structure.essential_classes
    ]
    transient = [graph.index_of(v) for v in structure.transient]
    k = len(class_rows)

    # best arc from each class towards every vertex
    leaving = semiring.zeros((k, graph.n))
    for i, rows in enumerate(class_rows):
        leaving[i] = semiring.reduce_max(graph.matrix[rows], 0)

    weights = _class_column_max(semiring, leaving, class_rows)

    if transient:
        expandable = np.zeros(graph.n, dtype=bool)
        expandable[transient] = True

        def from_transient(source: int) -> Matrix:
            return dijkstra_row(semiring, graph.matrix, source, expandable)

        if max_workers > 1 and len(transient) > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as pool:
                distances = list(pool.map(from_transient, transient))
        else:
            distances = [from_transient(source) for source in transient]

        through = semiring.zeros((k, graph.n))
        for position, source in enumerate(transient):
            through = semiring.amax(
                through,
                semiring.amul(
                    leaving[:, source : source + 1], distances[position][np.newaxis, :]
                ),
            )
        weights = semiring.amax(
            weights, _class_column_max(semiring, through, class_rows)
        )

    vertices = [StateSet.union(members) for members in structure.essential_classes]
    logger.debug(
        "shrunk %d vertices to %d classes (%d transient)",
        graph.n,
        k,
        len(transient),
    )
    return PerturbationGraph.from_unordered(semiring, vertices, weights)
