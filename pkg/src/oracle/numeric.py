"""
Numerical cross-check: evaluate the concrete chains at a handful of epsilon
values, solve for their stationary distributions and watch which states keep
a non-negligible share as epsilon shrinks.

Finitely many epsilon values cannot prove a limit, so the outcome is always
labelled empirical.
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import pandas as pd
import scipy.linalg as la
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.oracle.brute_force import NotIrreducible

logger = logging.getLogger(__name__)

DEFAULT_EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)
DEFAULT_THRESHOLD = 0.01
DEFAULT_MIN_EPSILON = 1e-5
DEFAULT_TOLERANCE = 1e-12
ROW_SLACK = 1e-12


class RowNotStochastic(ValueError):
    """Raised when the outgoing probabilities of a state exceed one"""


class ResidualTooLarge(RuntimeError):
    """Raised when a stationary solve misses the residual bound"""


class EmpiricalClass(enum.Enum):
    """Outcome of the epsilon sweep for one state"""

    STABLE = "stable"
    VANISHING = "vanishing"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, kw_only=True)
class MonomialSpec:
    """The map eps -> coeff * eps^alpha"""

    coeff: Fraction = Fraction(1)
    alpha: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.coeff <= 0:
            raise ValueError(f"coefficient {self.coeff} must be positive")
        if self.alpha < 0:
            raise ValueError(f"exponent {self.alpha} must be non-negative")

    def value(self, epsilon: float) -> float:
        """Evaluate at epsilon"""
        return float(self.coeff) * epsilon ** float(self.alpha)


Arcs = Mapping[Tuple[str, str], MonomialSpec]


@dataclass(frozen=True, kw_only=True)
class NumericChain:
    """A concrete Markov chain at one epsilon; self-loops take the remainder"""

    states: Tuple[str, ...]
    offdiag: Arcs
    epsilon: float

    def __post_init__(self) -> None:
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon {self.epsilon} is outside (0, 1]")

    def _offdiag_values(self) -> npt.NDArray[np.float64]:
        position = {name: i for i, name in enumerate(self.states)}
        values = np.zeros((len(self.states), len(self.states)))
        for (source, target), spec in self.offdiag.items():
            values[position[source], position[target]] = spec.value(self.epsilon)
        return values

    def generator(self) -> npt.NDArray[np.float64]:
        """P - I, with the diagonal formed as minus the row sum

        Raises:
            RowNotStochastic: if a row's outgoing mass exceeds one
        """
        values = self._offdiag_values()
        leaving = values.sum(axis=1)
        for i in np.flatnonzero(leaving > 1 + ROW_SLACK):
            raise RowNotStochastic(
                f"row {self.states[i]} leaves with mass {leaving[i]} "
                f"at eps={self.epsilon}"
            )
        np.fill_diagonal(values, -leaving)
        return values

    def matrix(self) -> npt.NDArray[np.float64]:
        """The row-stochastic transition matrix"""
        return self.generator() + np.eye(len(self.states))

    def closed_classes(self) -> List[List[int]]:
        """Communicating classes no arc leaves, ordered by smallest member"""
        support = self._offdiag_values() > 0
        count, labels = connected_components(
            csr_matrix(support), directed=True, connection="strong"
        )
        closed: List[List[int]] = []
        for label in range(count):
            inside = labels == label
            if not support[inside][:, ~inside].any():
                closed.append(np.flatnonzero(inside).tolist())
        return sorted(closed, key=lambda members: members[0])

    def restrict(self, members: Sequence[int]) -> "NumericChain":
        """The chain on a subset of states, arcs leaving it dropped"""
        names = tuple(self.states[i] for i in members)
        kept = set(names)
        return NumericChain(
            states=names,
            offdiag={
                arc: spec
                for arc, spec in self.offdiag.items()
                if arc[0] in kept and arc[1] in kept
            },
            epsilon=self.epsilon,
        )


@dataclass(frozen=True, kw_only=True)
class StationarySolve:
    """A stationary vector with its residual"""

    distribution: Dict[str, float]
    residual: float


def _solve(chain: NumericChain, tolerance: float) -> StationarySolve:
    generator = chain.generator()
    n = len(chain.states)
    system = generator.T.copy()
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    mu = la.solve(system, rhs)
    residual = float(np.abs(mu @ generator).max(initial=0.0))
    total_error = abs(float(mu.sum()) - 1.0)
    if residual > tolerance or total_error > tolerance:
        raise ResidualTooLarge(
            f"stationary solve at eps={chain.epsilon}: residual {residual:.3e}, "
            f"mass error {total_error:.3e}"
        )
    return StationarySolve(
        distribution={name: float(mu[i]) for i, name in enumerate(chain.states)},
        residual=residual,
    )


def stationary_distribution(
    chain: NumericChain, tolerance: float = DEFAULT_TOLERANCE
) -> Dict[str, float]:
    """The unique stationary distribution of an irreducible chain.

    Solves mu (P - I) = 0 with one equation swapped for sum(mu) = 1 by LU
    with partial pivoting.

    Raises:
        NotIrreducible: if the chain has transient states or several closed classes
        RowNotStochastic: if a row's outgoing mass exceeds one
        ResidualTooLarge: if |mu P - mu| or |sum(mu) - 1| exceed tolerance
    """
    classes = chain.closed_classes()
    if len(classes) != 1 or len(classes[0]) != len(chain.states):
        raise NotIrreducible("the chain is not irreducible")
    return _solve(chain, tolerance).distribution


def componentwise_stationary(
    chain: NumericChain, tolerance: float = DEFAULT_TOLERANCE
) -> StationarySolve:
    """Stationary weights of every closed class solved on its own.

    Each state gets its share within its own closed class; states outside
    every closed class get zero. For an irreducible chain this is the
    stationary distribution.
    """
    chain.generator()
    distribution = {name: 0.0 for name in chain.states}
    residual = 0.0
    for members in chain.closed_classes():
        solved = _solve(chain.restrict(members), tolerance)
        distribution.update(solved.distribution)
        residual = max(residual, solved.residual)
    return StationarySolve(distribution=distribution, residual=residual)


@dataclass(frozen=True, kw_only=True)
class EmpiricalReport:
    """Sweep results: one stationary vector per epsilon and a verdict per state"""

    states: Tuple[str, ...]
    epsilons: Tuple[float, ...]
    table: Tuple[Dict[str, float], ...]
    classification: Dict[str, EmpiricalClass]
    max_residual: float
    dropped_epsilons: Tuple[float, ...] = field(default_factory=tuple)

    def with_class(self, kind: EmpiricalClass) -> Tuple[str, ...]:
        """States given the verdict kind, sorted"""
        return tuple(sorted(s for s, c in self.classification.items() if c is kind))

    @property
    def stable(self) -> Tuple[str, ...]:
        """Empirically stable states"""
        return self.with_class(EmpiricalClass.STABLE)

    def to_frame(self) -> pd.DataFrame:
        """The sweep as a DataFrame indexed by epsilon, one column per state"""
        frame = pd.DataFrame(list(self.table), columns=list(self.states))
        frame.index = pd.Index(self.epsilons, name="epsilon")
        return frame


def classify_sweep(
    values: Sequence[float], threshold: float, tolerance: float = DEFAULT_TOLERANCE
) -> EmpiricalClass:
    """Verdict for one state from its weights at decreasing epsilon"""
    if min(values) >= threshold:
        return EmpiricalClass.STABLE
    non_increasing = all(
        later <= earlier + tolerance for earlier, later in zip(values, values[1:])
    )
    if non_increasing and values[-1] < threshold:
        return EmpiricalClass.VANISHING
    return EmpiricalClass.INCONCLUSIVE


def empirical_stability(
    states: Sequence[str],
    arcs: Arcs,
    epsilons: Iterable[float] = DEFAULT_EPSILONS,
    threshold: float = DEFAULT_THRESHOLD,
    min_epsilon: float = DEFAULT_MIN_EPSILON,
    tolerance: float = DEFAULT_TOLERANCE,
    max_workers: int = 1,
) -> EmpiricalReport:
    """Classify states by their stationary weight over an epsilon sweep.

    Reducible chains are split into their closed classes first. Epsilon
    values below min_epsilon are dropped because the solves become too
    ill-conditioned for the residual bound.

    Args:
        states: state names
        arcs: off-diagonal maps, absent pairs are zero
        epsilons: sweep values, any order
        threshold: smallest weight that still counts as stable
        min_epsilon: conditioning floor
        tolerance: residual bound for each solve
        max_workers: threads for the independent solves

    Returns:
        EmpiricalReport: the sweep table and per-state verdicts

    Raises:
        ValueError: if no epsilon survives the floor
        RowNotStochastic: if a row exceeds one at some epsilon
    """
    requested = sorted(set(epsilons), reverse=True)
    dropped = tuple(e for e in requested if e < min_epsilon)
    for epsilon in dropped:
        logger.warning(
            "dropping eps=%g: below the conditioning floor %g", epsilon, min_epsilon
        )
    kept = [e for e in requested if e >= min_epsilon]
    if not kept:
        raise ValueError("no epsilon value left to sweep")

    names = tuple(states)

    def solve_at(epsilon: float) -> StationarySolve:
        chain = NumericChain(states=names, offdiag=arcs, epsilon=epsilon)
        return componentwise_stationary(chain, tolerance)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            solves = list(pool.map(solve_at, kept))
    else:
        solves = [solve_at(epsilon) for epsilon in kept]

    classification = {
        name: classify_sweep(
            [solve.distribution[name] for solve in solves], threshold, tolerance
        )
        for name in names
    }
    for name, kind in classification.items():
        if kind is EmpiricalClass.INCONCLUSIVE:
            logger.warning("sweep is inconclusive for state %s", name)
    return EmpiricalReport(
        states=names,
        epsilons=tuple(kept),
        table=tuple(solve.distribution for solve in solves),
        classification=classification,
        max_residual=max(solve.residual for solve in solves),
        dropped_epsilons=dropped,
    )
