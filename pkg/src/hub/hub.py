"""
The Hub recursion: scale, find the essential classes, shrink, repeat until
no arc is left. The vertices of the final graph hold the stochastically
stable states; every transient vertex met on the way vanishes at the time
scale given by the divisors collected so far.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Generic, List, Optional, Tuple

from src.graph.perturbation_graph import (
    Arc,
    PerturbationGraph,
    StateSet,
    essential_structure,
)
from src.semiring.ordered_division import F, OrderedDivisionSemiring
from src.transforms.transforms import outgoing_scale, shrink

logger = logging.getLogger(__name__)


class EmptyGraph(ValueError):
    """Raised when hub is given a graph without vertices"""


class DepthOutOfRange(ValueError):
    """Raised when a time scale is requested for a depth the trace lacks"""


@dataclass(frozen=True, kw_only=True)
class LevelRecord(Generic[F]):
    """What one recursion level saw and produced.

    Graph snapshots are None when hub ran with keep_snapshots=False. The
    terminal level has a zero divisor and no essential data.
    """

    depth: int
    vertex_count: int
    divisor: F
    graph: Optional[PerturbationGraph[F]] = None
    scaled: Optional[PerturbationGraph[F]] = None
    essential_arcs: FrozenSet[Arc] = frozenset()
    essential_classes: Tuple[Tuple[StateSet, ...], ...] = ()
    transient: Tuple[StateSet, ...] = ()
    shrunk: Optional[PerturbationGraph[F]] = None

    @property
    def terminal(self) -> bool:
        """True for the level at which no arc was left"""
        return self.shrunk is None and not self.essential_classes


@dataclass(frozen=True)
class TimeScale(Generic[F]):
    """The formal inverse of a product of divisors.

    inverse is None for semirings without inverses; the divisors are kept
    either way.
    """

    divisors: Tuple[F, ...]
    inverse: Optional[F]

    def describe(self, semiring: OrderedDivisionSemiring[F]) -> str:
        """Human-readable form, e.g. e^-2 or 1/(a*b)"""
        if self.inverse is not None:
            return semiring.format(self.inverse)
        if not self.divisors:
            return semiring.format(semiring.one)
        return "1/(" + "*".join(semiring.format(d) for d in self.divisors) + ")"


@dataclass(frozen=True)
class VanishedEntry(Generic[F]):
    """A vertex that was transient at some depth"""

    states: StateSet
    depth: int
    time_scale: TimeScale[F]


@dataclass(frozen=True)
class HubTrace(Generic[F]):
    """All recursion levels, the terminal one last"""

    semiring: OrderedDivisionSemiring[F]
    levels: Tuple[LevelRecord[F], ...]

    @property
    def divisors(self) -> Tuple[F, ...]:
        """Divisors of the non-terminal levels, outermost first"""
        return tuple(level.divisor for level in self.levels if not level.terminal)


@dataclass(frozen=True)
class StabilityReport(Generic[F]):
    """Stable original states and the vanished ones with their time scales"""

    stable: Tuple[str, ...]
    vanished: Tuple[VanishedEntry[F], ...] = field(default_factory=tuple)

    def vanished_names(self) -> Tuple[str, ...]:
        """Every vanished original state, sorted"""
        return tuple(sorted(n for entry in self.vanished for n in entry.states.names))

    def classify(self, name: str) -> Optional[VanishedEntry[F]]:
        """None when name is stable, otherwise the entry it vanished with

        Raises:
            KeyError: for a state the report does not know
        """
        if name in self.stable:
            return None
        for entry in self.vanished:
            if name in entry.states.names:
                return entry
        raise KeyError(name)


def time_scale_of(trace: HubTrace[F], depth: int) -> TimeScale[F]:
    """Time scale at which vertices transient at depth vanish

    Raises:
        DepthOutOfRange: unless 1 <= depth <= number of non-terminal levels
    """
    divisors = trace.divisors
    if not 1 <= depth <= len(divisors):
        raise DepthOutOfRange(
            f"depth {depth} is outside 1..{len(divisors)} for this trace"
        )
    selected = tuple(divisors[:depth])
    return TimeScale(selected, trace.semiring.inverse_product(selected))


def hub(
    graph: PerturbationGraph[F],
    max_workers: int = 1,
    keep_snapshots: bool = True,
) -> Tuple[StabilityReport[F], HubTrace[F]]:
    """Stochastically stable states of a perturbation graph.

    Args:
        graph (PerturbationGraph): the abstracted perturbation
        max_workers (int): threads for the Dijkstra runs inside shrink
        keep_snapshots (bool): keep per-level graph copies in the trace

    Returns:
        Tuple[StabilityReport, HubTrace]: the report and the level-by-level trace

    Raises:
        EmptyGraph: if the graph has no vertices
    """
    if graph.n == 0:
        raise EmptyGraph("hub needs at least one state")

    semiring = graph.semiring
    levels: List[LevelRecord[F]] = []
    vanished: List[VanishedEntry[F]] = []
    divisors: List[F] = []
    current = graph
    depth = 1

    while True:
        scaling = outgoing_scale(current)
        if scaling.terminal:
            logger.debug("depth %d: %d vertices, no arcs left", depth, current.n)
            levels.append(
                LevelRecord(
                    depth=depth,
                    vertex_count=current.n,
                    divisor=scaling.divisor,
                    graph=current if keep_snapshots else None,
                    scaled=current if keep_snapshots else None,
                )
            )
            break

        structure = essential_structure(scaling.scaled)
        divisors.append(scaling.divisor)
        time_scale = TimeScale(tuple(divisors), semiring.inverse_product(divisors))
        vanished.extend(
            VanishedEntry(vertex, depth, time_scale) for vertex in structure.transient
        )
        shrunk = shrink(scaling.scaled, structure, max_workers=max_workers)
        logger.debug(
            "depth %d: %d vertices, divisor %s, %d essential classes, %d transient",
            depth,
            current.n,
            semiring.format(scaling.divisor),
            len(structure.essential_classes),
            len(structure.transient),
        )
        if shrunk.n >= current.n:
            raise RuntimeError(
                f"depth {depth} did not reduce the graph ({current.n} -> {shrunk.n})"
            )
        levels.append(
            LevelRecord(
                depth=depth,
                vertex_count=current.n,
                divisor=scaling.divisor,
                graph=current if keep_snapshots else None,
                scaled=scaling.scaled if keep_snapshots else None,
                essential_arcs=structure.arcs,
                essential_classes=structure.essential_classes,
                transient=structure.transient,
                shrunk=shrunk if keep_snapshots else None,
            )
        )
        current = shrunk
        depth += 1

    stable = tuple(sorted(name for v in current.vertices for name in v.names))
    report = StabilityReport(stable=stable, vanished=tuple(vanished))
    return report, HubTrace(semiring, tuple(levels))


def stable_states(graph: PerturbationGraph[F], max_workers: int = 1) -> Tuple[str, ...]:
    """Shortcut for the stable set alone, without trace snapshots"""
    report, _ = hub(graph, max_workers=max_workers, keep_snapshots=False)
    return report.stable


def vanishing_depths(report: StabilityReport[F]) -> Dict[str, int]:
    """Depth at which each vanished original state left the graph"""
    return {
        name: entry.depth for entry in report.vanished for name in entry.states.names
    }
