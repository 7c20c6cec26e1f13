"""
Maximum path products over an ordered-division semiring.

Every graph weight is at most one, so a product can only shrink as a path
grows. That makes Dijkstra's greedy extraction valid with "le-greatest"
in place of "smallest distance" and product in place of sum.
"""

from typing import Any, Dict, Optional

import numpy as np

from src.graph.perturbation_graph import PerturbationGraph, StateSet
from src.semiring.ordered_division import F, Matrix, OrderedDivisionSemiring


def dijkstra_row(
    semiring: OrderedDivisionSemiring[Any],
    matrix: Matrix,
    source: int,
    expandable: Optional[Any] = None,
) -> Matrix:
    """Best path products from source to every vertex of a dense matrix.

    Args:
        semiring: the semiring the matrix cells are encoded for
        matrix: n x n encoded weights, all at most one
        source: index of the start vertex; its distance is one
        expandable: optional boolean mask; arcs out of vertices outside it
            are ignored (the source is always expanded)

    Returns:
        Matrix: length-n vector of encoded distances, zero where unreachable
    """
    n = matrix.shape[0]
    if expandable is None:
        expandable = np.ones(n, dtype=bool)
    distance = semiring.zeros(n)
    distance[source] = semiring.one_cell
    settled = np.zeros(n, dtype=bool)
    current: Optional[int] = source
    while current is not None:
        settled[current] = True
        relaxed = semiring.amul(semiring.as_scalar(distance[current]), matrix[current])
        distance = np.where(settled, distance, semiring.amax(distance, relaxed))
        # vertices that are never expanded keep their distance once every
        # expandable one is settled; ties go to the lowest index
        current = semiring.argmax(distance, ~settled & expandable)
    return distance


def semiring_dijkstra(
    graph: PerturbationGraph[F], source: StateSet
) -> Dict[StateSet, F]:
    """Maximum over directed paths from source of the product of arc weights.

    Callers that need paths restricted to a vertex subset zero the rows of
    the other vertices first.
    """
    distance = dijkstra_row(graph.semiring, graph.matrix, graph.index_of(source))
    return {
        vertex: graph.semiring.decode(distance[i])
        for i, vertex in enumerate(graph.vertices)
    }
