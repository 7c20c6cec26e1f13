"""
Sink strongly connected components in a single depth-first pass.

A variant of Tarjan's algorithm that carries a "sink" flag per vertex: the
flag drops as soon as the search sees an arc leaving the current component,
so only components with no outgoing arcs are reported. The search uses an
explicit stack so deep graphs do not hit the recursion limit.
"""

from typing import Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple, TypeVar

V = TypeVar("V", bound=Hashable)


def sink_scc_indices(n: int, successors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Sink SCCs of the graph on 0..n-1 given by adjacency lists.

    Args:
        n (int): number of vertices
        successors (Sequence[Sequence[int]]): successors[v] lists the heads of
            the arcs leaving v; self-loops are ignored

    Returns:
        List[List[int]]: every sink component as a sorted list, components
            ordered by their smallest vertex
    """
    index = [-1] * n
    lowlink = [0] * n
    sink = [True] * n
    on_stack = [False] * n
    component_stack: List[int] = []
    found: List[List[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = lowlink[root] = counter
        counter += 1
        component_stack.append(root)
        on_stack[root] = True
        frames: List[Tuple[int, Iterator[int]]] = [(root, iter(successors[root]))]

        while frames:
            v, arcs = frames[-1]
            descended = False
            for w in arcs:
                if w == v:
                    continue
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    component_stack.append(w)
                    on_stack[w] = True
                    frames.append((w, iter(successors[w])))
                    descended = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
                else:
                    # w belongs to a component that is already closed
                    sink[v] = False
            if descended:
                continue

            frames.pop()
            if lowlink[v] == index[v]:
                component: List[int] = []
                while True:
                    w = component_stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                if sink[v]:
                    found.append(sorted(component))
                # whoever reaches this component from outside is not a sink
                sink[v] = False
            if frames:
                parent = frames[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
                sink[parent] = sink[parent] and sink[v]

    found.sort(key=lambda component: component[0])
    return found


def sink_sccs(vertices: Sequence[V], arcs: Iterable[Tuple[V, V]]) -> List[List[V]]:
    """Sink SCCs of a graph given by vertex and arc lists.

    Components and their members follow the order of vertices.

    Raises:
        KeyError: if an arc mentions an unknown vertex
    """
    position: Dict[V, int] = {v: i for i, v in enumerate(vertices)}
    successors: List[List[int]] = [[] for _ in vertices]
    for source, target in arcs:
        successors[position[source]].append(position[target])
    return [
        [vertices[i] for i in component]
        for component in sink_scc_indices(len(vertices), successors)
    ]
