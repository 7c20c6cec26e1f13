"""
Independent checks of a hub run, as run by analyze --verify.

Three checks, each reported as agree, disagree, skipped (with a reason) or,
for the numerical sweep only, inconclusive:

- arborescence: the roots of maximum spanning trees, taken per closed
  class so reducible graphs are checked too;
- shrink: the first level's shrunken graph against exhaustive path search;
- numeric: stationary distributions of the concrete chains over an epsilon
  sweep, using the document's coefficients.
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from src.cli.document import InputDocument
from src.cli.report import (
    CheckModel,
    CheckStatus,
    NumericCheckModel,
    VerificationModel,
)
from src.graph.perturbation_graph import PerturbationGraph
from src.hub.hub import HubTrace, StabilityReport
from src.oracle.brute_force import (
    TooLarge,
    closed_class_stable_states,
    reference_shrink,
)
from src.oracle.numeric import (
    EmpiricalClass,
    EmpiricalReport,
    ResidualTooLarge,
    RowNotStochastic,
    empirical_stability,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class SweepOptions:
    """Parameters of the numerical check"""

    epsilons: Sequence[float]
    threshold: float
    min_epsilon: float
    tolerance: float
    max_workers: int = 1


@dataclass(frozen=True, kw_only=True)
class VerificationResult:
    """The checks and, when it ran, the sweep behind the numerical one"""

    checks: VerificationModel
    sweep: Optional[EmpiricalReport] = None


def check_arborescence(
    graph: PerturbationGraph[Any], report: StabilityReport[Any], cap: int
) -> CheckModel:
    """Compare the stable set with the maximum arborescence roots of every
    closed class"""
    roots = closed_class_stable_states(graph, cap)
    expected = sorted(name for root in roots for name in root.names)
    if expected == list(report.stable):
        return CheckModel(status="agree")
    return CheckModel(
        status="disagree", detail=f"arborescence roots are {' '.join(expected)}"
    )


def check_shrink(trace: HubTrace[Any], cap: int) -> CheckModel:
    """Compare the first shrink with exhaustive simple-path search"""
    first = trace.levels[0]
    if first.terminal:
        return CheckModel(status="skipped", detail="no arcs to shrink")
    if first.scaled is None or first.shrunk is None:
        return CheckModel(status="skipped", detail="trace has no graph snapshots")
    expected = reference_shrink(first.scaled, cap=cap)
    if expected == first.shrunk:
        return CheckModel(status="agree")
    return CheckModel(status="disagree", detail=f"path search gives {expected!r}")


def check_numeric(
    document: InputDocument,
    report: StabilityReport[Any],
    options: SweepOptions,
) -> tuple[NumericCheckModel, Optional[EmpiricalReport]]:
    """Compare the stable set with an epsilon sweep of the concrete chains"""
    try:
        sweep = empirical_stability(
            document.states,
            document.to_monomial_specs(),
            epsilons=options.epsilons,
            threshold=options.threshold,
            min_epsilon=options.min_epsilon,
            tolerance=options.tolerance,
            max_workers=options.max_workers,
        )
    except RowNotStochastic as e:
        logger.warning("numeric check skipped: %s", e)
        detail = f"rows are not stochastic on the sweep ({e})"
        return NumericCheckModel(status="skipped", detail=detail), None
    except (ValueError, ResidualTooLarge) as e:
        logger.warning("numeric check skipped: %s", e)
        return NumericCheckModel(status="skipped", detail=str(e)), None

    stable = set(report.stable)
    contradictions = [
        name
        for name, kind in sorted(sweep.classification.items())
        if (kind is EmpiricalClass.STABLE) != (name in stable)
        and kind is not EmpiricalClass.INCONCLUSIVE
    ]
    unclear = sweep.with_class(EmpiricalClass.INCONCLUSIVE)
    status: CheckStatus
    if contradictions:
        status = "disagree"
        detail = "sweep contradicts hub on " + " ".join(contradictions)
    elif unclear:
        status = "inconclusive"
        detail = "no clear trend for " + " ".join(unclear)
    else:
        status = "agree"
        detail = ""
    check = NumericCheckModel(
        status=status,
        detail=detail,
        epsilons=list(sweep.epsilons),
        classification={
            name: kind.value for name, kind in sorted(sweep.classification.items())
        },
        max_residual=sweep.max_residual,
    )
    return check, sweep


def verify(  # pylint: disable=too-many-arguments
    document: InputDocument,
    graph: PerturbationGraph[Any],
    report: StabilityReport[Any],
    trace: HubTrace[Any],
    cap: int,
    options: SweepOptions,
) -> VerificationResult:
    """Run every check

    Raises:
        TooLarge: when the graph exceeds the brute-force cap
    """
    if graph.n > cap:
        raise TooLarge(f"{graph.n} states exceed the verification cap of {cap}")
    numeric, sweep = check_numeric(document, report, options)
    checks = VerificationModel(
        arborescence=check_arborescence(graph, report, cap),
        shrink=check_shrink(trace, cap),
        numeric=numeric,
    )
    for name, check in (
        ("arborescence", checks.arborescence),
        ("shrink", checks.shrink),
        ("numeric", checks.numeric),
    ):
        logger.info("verify %s: %s %s", name, check.status, check.detail)
    return VerificationResult(checks=checks, sweep=sweep)
