"""
The report schema shared by text and JSON output, and the conversion from a
hub run into it.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.graph.perturbation_graph import PerturbationGraph
from src.hub.hub import HubTrace, LevelRecord, StabilityReport, TimeScale
from src.semiring.monomial import MonomialClass, exponent_text
from src.semiring.ordered_division import OrderedDivisionSemiring

CheckStatus = Literal["agree", "disagree", "skipped", "inconclusive"]

COEFFICIENT_NOTE = (
    "the stable set depends only on the exponents; "
    "coefficients are used by the numerical check alone"
)


class ArcModel(BaseModel):
    """A non-zero arc of a trace graph"""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    weight: str


class VanishedModel(BaseModel):
    """A vertex that was transient at some depth.

    time_scale is the signed exponent of the formal inverse when the semiring
    has inverses; divisors always lists the divisors up to depth.
    """

    model_config = ConfigDict(frozen=True)

    states: List[str]
    depth: int
    time_scale: Optional[str] = None
    divisors: List[str] = Field(default_factory=list)


class LevelModel(BaseModel):
    """One recursion level of the trace"""

    model_config = ConfigDict(frozen=True)

    depth: int
    vertex_count: int
    divisor: str
    scaled: List[ArcModel] = Field(default_factory=list)
    essential_arcs: List[ArcModel] = Field(default_factory=list)
    essential_classes: List[List[str]] = Field(default_factory=list)
    transient: List[str] = Field(default_factory=list)
    shrunk: List[ArcModel] = Field(default_factory=list)


class CheckModel(BaseModel):
    """Outcome of one independent check"""

    model_config = ConfigDict(frozen=True)

    status: CheckStatus
    detail: str = ""


class NumericCheckModel(CheckModel):
    """The epsilon sweep; its verdicts are empirical by nature"""

    empirical: bool = True
    epsilons: List[float] = Field(default_factory=list)
    classification: Dict[str, str] = Field(default_factory=dict)
    max_residual: Optional[float] = None


class VerificationModel(BaseModel):
    """All checks run under --verify"""

    model_config = ConfigDict(frozen=True)

    arborescence: CheckModel
    shrink: CheckModel
    numeric: NumericCheckModel
    note: str = COEFFICIENT_NOTE

    @property
    def disagreement(self) -> bool:
        """True when any check contradicts hub"""
        return any(
            check.status == "disagree"
            for check in (self.arborescence, self.shrink, self.numeric)
        )


class ReportDocument(BaseModel):
    """Stable states, vanished states and optional trace and verification"""

    model_config = ConfigDict(frozen=True)

    stable: List[str]
    vanished: List[VanishedModel] = Field(default_factory=list)
    trace: Optional[List[LevelModel]] = None
    verification: Optional[VerificationModel] = None


def time_scale_text(
    time_scale: TimeScale[Any], semiring: OrderedDivisionSemiring[Any]
) -> Optional[str]:
    """Signed exponent of a monomial time scale, None for other semirings"""
    inverse = time_scale.inverse
    if isinstance(inverse, MonomialClass) and inverse.alpha is not None:
        return exponent_text(inverse.alpha)
    if inverse is not None:
        return semiring.format(inverse)
    return None


def _arcs(graph: Optional[PerturbationGraph[Any]]) -> List[ArcModel]:
    if graph is None:
        return []
    return [
        ArcModel(
            source=str(source), target=str(target), weight=graph.semiring.format(w)
        )
        for (source, target), w in sorted(graph.arcs().items())
    ]


def _level(
    level: LevelRecord[Any], semiring: OrderedDivisionSemiring[Any]
) -> LevelModel:
    scaled = level.scaled
    return LevelModel(
        depth=level.depth,
        vertex_count=level.vertex_count,
        divisor=semiring.format(level.divisor),
        scaled=_arcs(scaled),
        essential_arcs=[
            ArcModel(
                source=str(source),
                target=str(target),
                weight=semiring.format(semiring.one),
            )
            for source, target in sorted(level.essential_arcs)
        ],
        essential_classes=[
            [str(vertex) for vertex in members] for members in level.essential_classes
        ],
        transient=[str(vertex) for vertex in level.transient],
        shrunk=_arcs(level.shrunk),
    )


def build_report(
    report: StabilityReport[Any],
    trace: HubTrace[Any],
    include_trace: bool = False,
) -> ReportDocument:
    """ReportDocument for a hub run"""
    semiring = trace.semiring
    return ReportDocument(
        stable=list(report.stable),
        vanished=[
            VanishedModel(
                states=list(entry.states.names),
                depth=entry.depth,
                time_scale=time_scale_text(entry.time_scale, semiring),
                divisors=[semiring.format(d) for d in entry.time_scale.divisors],
            )
            for entry in report.vanished
        ],
        trace=[_level(level, semiring) for level in trace.levels]
        if include_trace
        else None,
    )


def _arc_text(arcs: List[ArcModel]) -> str:
    return " ".join(f"{a.source}->{a.target}:{a.weight}" for a in arcs) or "-"


def render_text(document: ReportDocument) -> str:
    """Plain report: stable states, then one line per vanished vertex"""
    lines = ["stable: " + " ".join(document.stable)]
    for entry in document.vanished:
        if entry.time_scale is not None:
            scale = f"eps^{entry.time_scale}"
        else:
            scale = "1/(" + "*".join(entry.divisors) + ")"
        lines.append(
            f"{','.join(entry.states)} vanishes depth={entry.depth} timescale={scale}"
        )
    for level in document.trace or []:
        lines.append(
            f"level {level.depth}: vertices={level.vertex_count} "
            f"divisor={level.divisor}"
        )
        lines.append(f"  scaled: {_arc_text(level.scaled)}")
        lines.append(f"  essential: {_arc_text(level.essential_arcs)}")
        classes = " ".join("{" + ";".join(c) + "}" for c in level.essential_classes)
        lines.append(f"  classes: {classes or '-'}")
        lines.append(f"  transient: {' '.join(level.transient) or '-'}")
        lines.append(f"  shrunk: {_arc_text(level.shrunk)}")
    verification = document.verification
    if verification is not None:
        for name, check in (
            ("arborescence", verification.arborescence),
            ("shrink", verification.shrink),
        ):
            lines.append(f"verify {name}: {check.status} {check.detail}".rstrip())
        numeric = verification.numeric
        lines.append(
            f"verify numeric (empirical): {numeric.status} {numeric.detail}".rstrip()
        )
        lines.append(f"note: {verification.note}")
    return "\n".join(lines) + "\n"


def render_json(document: ReportDocument) -> str:
    """Machine-readable report; parse_report reads it back"""
    return document.model_dump_json(indent=2, by_alias=True, exclude_none=True) + "\n"


def parse_report(text: str | bytes) -> ReportDocument:
    """Inverse of render_json"""
    return ReportDocument.model_validate_json(text)
