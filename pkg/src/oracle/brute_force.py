"""
Exhaustive references for small graphs: maximum arborescences (the
spanning-tree characterisation of stable states), maximum simple-path
products, sink SCCs by pairwise reachability and, per closed class, the
stable states of a reducible graph.

Everything here works on decoded semiring elements with element
operations only, so it shares no code path with the vectorised kernels it
is used to check.
"""

from typing import (
    Dict,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
)

from src.graph.perturbation_graph import (
    EssentialStructure,
    PerturbationGraph,
    StateSet,
    essential_structure,
    strongly_connected,
)
from src.semiring.ordered_division import F

V = TypeVar("V", bound=Hashable)

DEFAULT_CAP = 8


class TooLarge(ValueError):
    """Raised when an exhaustive search is asked for more vertices than its cap"""


class NotIrreducible(ValueError):
    """Raised when a check needs a strongly connected graph or chain"""


def _check_size(graph: PerturbationGraph[F], cap: int) -> None:
    if graph.n > cap:
        raise TooLarge(f"{graph.n} vertices exceed the brute-force cap of {cap}")


def _dense_weights(graph: PerturbationGraph[F]) -> List[List[F]]:
    semiring = graph.semiring
    return [
        [
            semiring.zero if i == j else semiring.decode(graph.matrix[i, j])
            for j in range(graph.n)
        ]
        for i in range(graph.n)
    ]


def max_arborescence_weight(
    graph: PerturbationGraph[F], root: StateSet, cap: int = DEFAULT_CAP
) -> F:
    """Best product over spanning trees with every path directed to root.

    Each non-root vertex picks a parent; assignments closing a cycle are
    rejected. Parents are tried from the heaviest arc down and a branch is
    cut once its partial product cannot beat the best tree found, which is
    sound because no weight exceeds one.

    Raises:
        TooLarge: beyond cap vertices
    """
    _check_size(graph, cap)
    semiring = graph.semiring
    weights = _dense_weights(graph)
    root_index = graph.index_of(root)
    order = [v for v in range(graph.n) if v != root_index]

    candidates: Dict[int, List[Tuple[int, F]]] = {}
    for v in order:
        options = [
            (p, weights[v][p])
            for p in range(graph.n)
            if p != v and not semiring.is_zero(weights[v][p])
        ]
        if not options:
            return semiring.zero
        # heaviest first; stable sort keeps index order among equals
        ranked: List[Tuple[int, F]] = []
        for option in options:
            position = len(ranked)
            while position > 0 and not semiring.le(option[1], ranked[position - 1][1]):
                position -= 1
            ranked.insert(position, option)
        candidates[v] = ranked

    parent: Dict[int, int] = {}
    best: Optional[F] = None

    def closes_cycle(v: int, p: int) -> bool:
        u = p
        while u in parent:
            u = parent[u]
            if u == v:
                return True
        return u == v

    def extend(position: int, value: F) -> None:
        nonlocal best
        if position == len(order):
            if best is None or not semiring.le(value, best):
                best = value
            return
        v = order[position]
        for p, weight in candidates[v]:
            product = semiring.mul(value, weight)
            if best is not None and semiring.le(product, best):
                break
            if closes_cycle(v, p):
                continue
            parent[v] = p
            extend(position + 1, product)
            del parent[v]

    extend(0, semiring.one)
    return semiring.zero if best is None else best


def young_stable_states(
    graph: PerturbationGraph[F], cap: int = DEFAULT_CAP
) -> Tuple[StateSet, ...]:
    """Vertices whose maximum arborescence is le-greatest

    Raises:
        TooLarge: beyond cap vertices
        NotIrreducible: if the graph is not strongly connected
    """
    _check_size(graph, cap)
    if not strongly_connected(graph):
        raise NotIrreducible("arborescence roots only characterise irreducible chains")
    semiring = graph.semiring
    betas = {v: max_arborescence_weight(graph, v, cap) for v in graph.vertices}
    best = semiring.zero
    for beta in betas.values():
        best = semiring.semiring_max(best, beta)
    return tuple(v for v in graph.vertices if semiring.eq(betas[v], best))


def simple_path_max(
    graph: PerturbationGraph[F],
    sources: Iterable[StateSet],
    targets: Iterable[StateSet],
    interior: Iterable[StateSet],
    cap: int = DEFAULT_CAP,
) -> F:
    """Best product over simple paths from a source to a target with every
    intermediate vertex in interior

    Raises:
        TooLarge: beyond cap vertices
    """
    _check_size(graph, cap)
    semiring = graph.semiring
    weights = _dense_weights(graph)
    target_set = {graph.index_of(v) for v in targets}
    interior_set = {graph.index_of(v) for v in interior}
    best = semiring.zero

    def walk(v: int, value: F, visited: Set[int]) -> None:
        nonlocal best
        for w in range(graph.n):
            if w in visited or semiring.is_zero(weights[v][w]):
                continue
            product = semiring.mul(value, weights[v][w])
            if w in target_set:
                best = semiring.semiring_max(best, product)
            if w in interior_set:
                visited.add(w)
                walk(w, product, visited)
                visited.remove(w)

    for source in sources:
        start = graph.index_of(source)
        walk(start, semiring.one, {start})
    return best


def reference_shrink(
    graph: PerturbationGraph[F],
    structure: Optional[EssentialStructure] = None,
    cap: int = DEFAULT_CAP,
) -> PerturbationGraph[F]:
    """shrink computed entry by entry from simple_path_max"""
    if structure is None:
        structure = essential_structure(graph)
    semiring = graph.semiring
    classes = structure.essential_classes
    weights: Dict[Tuple[int, int], F] = {}
    for i, source in enumerate(classes):
        for j, target in enumerate(classes):
            if i != j:
                weights[(i, j)] = simple_path_max(
                    graph, source, target, structure.transient, cap
                )
    matrix = semiring.zeros((len(classes), len(classes)))
    for (i, j), weight in weights.items():
        matrix[i, j] = semiring.encode(weight)
    vertices = [StateSet.union(members) for members in classes]
    return PerturbationGraph.from_unordered(semiring, vertices, matrix)


def brute_force_sink_sccs(
    vertices: Sequence[V], arcs: Iterable[Tuple[V, V]]
) -> List[List[V]]:
    """Sink SCCs from the transitive closure, members and components in
    vertex order"""
    n = len(vertices)
    position = {v: i for i, v in enumerate(vertices)}
    reach = [[i == j for j in range(n)] for i in range(n)]
    arc_list = [(position[a], position[b]) for a, b in arcs]
    for a, b in arc_list:
        reach[a][b] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True

    components: List[List[int]] = []
    assigned: Set[int] = set()
    for i in range(n):
        if i in assigned:
            continue
        component = [j for j in range(n) if reach[i][j] and reach[j][i]]
        assigned.update(component)
        components.append(component)

    sinks = []
    for component in components:
        members = set(component)
        if all(b in members for a, b in arc_list if a in members):
            sinks.append([vertices[i] for i in component])
    return sinks


def closed_class_stable_states(
    graph: PerturbationGraph[F], cap: int = DEFAULT_CAP
) -> Tuple[StateSet, ...]:
    """Maximum arborescence roots of every closed class, for any graph.

    The closed classes are the sink SCCs of the non-zero arcs. Each one is an
    irreducible chain of its own and is ranked on its own; vertices outside
    every closed class are never returned.

    Raises:
        TooLarge: beyond cap vertices
    """
    _check_size(graph, cap)
    closed = brute_force_sink_sccs(graph.vertices, graph.arcs())
    roots = [
        root
        for members in closed
        for root in young_stable_states(graph.restrict(members), cap)
    ]
    return tuple(sorted(roots))
