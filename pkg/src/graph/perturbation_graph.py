"""
Weighted digraphs over an ordered-division semiring.

Vertices are StateSets (merged original states) kept in canonical order;
weights live in a dense matrix of encoded cells. Diagonal cells hold the
encoded zero and are never read, so self-loops cannot be expressed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Any,
    Dict,
    FrozenSet,
    Generic,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from src.graph.tarjan import sink_scc_indices
from src.semiring.monomial import DenseMonomialSemiring, MonomialClass, parse_exponent
from src.semiring.ordered_division import F, Matrix, OrderedDivisionSemiring

Arc = Tuple["StateSet", "StateSet"]


@dataclass(frozen=True, order=True)
class StateSet:
    """A sorted, duplicate-free, non-empty tuple of original state names"""

    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError("a state set cannot be empty")
        canonical = tuple(sorted(set(self.names)))
        if len(canonical) != len(self.names):
            raise ValueError(f"duplicate state names in {self.names}")
        object.__setattr__(self, "names", canonical)

    @classmethod
    def of(cls, *names: str) -> StateSet:
        """Build a state set from names given in any order"""
        return cls(tuple(names))

    @classmethod
    def union(cls, parts: Iterable[StateSet]) -> StateSet:
        """Disjoint union of state sets

        Raises:
            ValueError: if two parts share a name
        """
        return cls(tuple(name for part in parts for name in part.names))

    def __str__(self) -> str:
        return ",".join(self.names)

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True, kw_only=True)
class EssentialStructure:
    """Essential graph of a perturbation graph and its decomposition.

    Attributes:
        arcs: the arcs whose weight is the semiring one
        essential_classes: the sink SCCs of arcs, in canonical order
        transient: vertices outside every essential class
    """

    arcs: FrozenSet[Arc]
    essential_classes: Tuple[Tuple[StateSet, ...], ...]
    transient: Tuple[StateSet, ...]


class PerturbationGraph(Generic[F]):
    """Finite vertex set of StateSets with off-diagonal semiring weights.

    Instances are immutable: the matrix is copied and made read-only.
    """

    def __init__(
        self,
        semiring: OrderedDivisionSemiring[F],
        vertices: Sequence[StateSet],
        matrix: Matrix,
    ) -> None:
        vertices = tuple(vertices)
        if list(vertices) != sorted(vertices):
            raise ValueError("vertices must be given in canonical order")
        seen: set[str] = set()
        for vertex in vertices:
            if seen.intersection(vertex.names):
                raise ValueError(f"{vertex} overlaps another vertex")
            seen.update(vertex.names)
        n = len(vertices)
        if matrix.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {matrix.shape}")
        matrix = matrix.copy()
        if n:
            np.fill_diagonal(matrix, semiring.zero_cell)
        matrix.setflags(write=False)
        self.semiring = semiring
        self.vertices: Tuple[StateSet, ...] = vertices
        self.matrix = matrix
        self._index = {vertex: i for i, vertex in enumerate(vertices)}

    @classmethod
    def from_unordered(
        cls,
        semiring: OrderedDivisionSemiring[F],
        vertices: Sequence[StateSet],
        matrix: Matrix,
    ) -> PerturbationGraph[F]:
        """Build a graph, permuting vertices (and the matrix) into canonical order"""
        order = sorted(range(len(vertices)), key=lambda i: vertices[i])
        permuted = matrix[np.ix_(order, order)] if order else matrix
        return cls(semiring, [vertices[i] for i in order], permuted)

    @classmethod
    def from_weights(
        cls,
        semiring: OrderedDivisionSemiring[F],
        states: Sequence[str],
        weights: Mapping[Tuple[str, str], F],
    ) -> PerturbationGraph[F]:
        """Build a graph of singleton vertices; absent pairs weigh zero

        Raises:
            ValueError: on self-loops or undeclared states
        """
        vertices = [StateSet.of(name) for name in states]
        position = {name: i for i, name in enumerate(states)}
        if len(position) != len(states):
            raise ValueError("state names must be unique")
        matrix = semiring.zeros((len(states), len(states)))
        for (source, target), weight in weights.items():
            if source == target:
                raise ValueError(f"self-loop on {source} cannot be represented")
            if source not in position or target not in position:
                raise ValueError(f"arc {source}->{target} uses an undeclared state")
            matrix[position[source], position[target]] = semiring.encode(weight)
        return cls.from_unordered(semiring, vertices, matrix)

    @property
    def n(self) -> int:
        """Number of vertices"""
        return len(self.vertices)

    def index_of(self, vertex: StateSet) -> int:
        """Position of a vertex in canonical order"""
        return self._index[vertex]

    def weight(self, source: StateSet, target: StateSet) -> F:
        """Weight of an arc between distinct vertices

        Raises:
            ValueError: for the unrepresentable diagonal
        """
        if source == target:
            raise ValueError("diagonal weights are not represented")
        return self.semiring.decode(
            self.matrix[self.index_of(source), self.index_of(target)]
        )

    def arcs(self) -> Dict[Arc, F]:
        """All non-zero arcs with their weights"""
        nonzero = ~self.semiring.mask_zero(self.matrix)
        np.fill_diagonal(nonzero, False)
        return {
            (self.vertices[i], self.vertices[j]): self.semiring.decode(
                self.matrix[i, j]
            )
            for i, j in zip(*np.nonzero(nonzero))
        }

    def successors(self, mask: Any) -> List[List[int]]:
        """Adjacency lists of a boolean arc mask, diagonal excluded"""
        mask = np.array(mask, dtype=bool)
        if self.n:
            np.fill_diagonal(mask, False)
        return [np.flatnonzero(row).tolist() for row in mask]

    def relabel(self, renaming: Mapping[str, str]) -> PerturbationGraph[F]:
        """Rename original states; names absent from renaming are kept"""
        vertices = [
            StateSet(tuple(renaming.get(name, name) for name in vertex.names))
            for vertex in self.vertices
        ]
        return PerturbationGraph.from_unordered(self.semiring, vertices, self.matrix)

    def restrict(self, keep: Iterable[StateSet]) -> PerturbationGraph[F]:
        """Induced subgraph on the given vertices"""
        indices = sorted(self.index_of(vertex) for vertex in keep)
        return PerturbationGraph(
            self.semiring,
            [self.vertices[i] for i in indices],
            self.matrix[np.ix_(indices, indices)],
        )

    def with_semiring(
        self, semiring: OrderedDivisionSemiring[F]
    ) -> PerturbationGraph[F]:
        """The same graph re-encoded for another implementation of the semiring"""
        matrix = semiring.zeros((self.n, self.n))
        for i in range(self.n):
            for j in range(self.n):
                if i != j:
                    matrix[i, j] = semiring.encode(
                        self.semiring.decode(self.matrix[i, j])
                    )
        return PerturbationGraph(semiring, self.vertices, matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PerturbationGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs() == other.arcs()

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        arcs = ", ".join(
            f"{source}->{target}: {self.semiring.format(weight)}"
            for (source, target), weight in sorted(self.arcs().items())
        )
        return f"PerturbationGraph([{', '.join(map(str, self.vertices))}], {{{arcs}}})"


def monomial_graph(
    states: Sequence[str],
    exponents: Mapping[Tuple[str, str], Optional[str | int | Fraction]],
) -> PerturbationGraph[MonomialClass]:
    """Graph over the dense monomial semiring from arc exponents.

    An exponent of None stands for the Zero class, same as an absent arc.
    """
    weights = {
        arc: MonomialClass(None if alpha is None else parse_exponent(alpha))
        for arc, alpha in exponents.items()
    }
    semiring = DenseMonomialSemiring.fitted(
        (w.alpha for w in weights.values() if w.alpha is not None),
        path_length=len(states),
    )
    return PerturbationGraph.from_weights(semiring, states, weights)


def essential_graph(graph: PerturbationGraph[F]) -> FrozenSet[Arc]:
    """Arcs between distinct vertices whose weight is the semiring one"""
    successors = graph.successors(graph.semiring.mask_one(graph.matrix))
    return frozenset(
        (graph.vertices[i], graph.vertices[j])
        for i, targets in enumerate(successors)
        for j in targets
    )


def essential_structure(graph: PerturbationGraph[F]) -> EssentialStructure:
    """Essential graph, essential classes and transient vertices in one pass"""
    successors = graph.successors(graph.semiring.mask_one(graph.matrix))
    classes = sink_scc_indices(graph.n, successors)
    essential = {i for component in classes for i in component}
    return EssentialStructure(
        arcs=frozenset(
            (graph.vertices[i], graph.vertices[j])
            for i, targets in enumerate(successors)
            for j in targets
        ),
        essential_classes=tuple(
            tuple(graph.vertices[i] for i in component) for component in classes
        ),
        transient=tuple(
            vertex for i, vertex in enumerate(graph.vertices) if i not in essential
        ),
    )


def strongly_connected(graph: PerturbationGraph[F]) -> bool:
    """True when every vertex reaches every other one through non-zero arcs"""
    if graph.n <= 1:
        return True
    successors = graph.successors(~graph.semiring.mask_zero(graph.matrix))
    components = sink_scc_indices(graph.n, successors)
    return len(components) == 1 and len(components[0]) == graph.n
