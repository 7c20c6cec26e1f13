"""
Reading perturbation documents.

Two formats carry the same information. JSON:

    {"states": ["x", "y"], "arcs": [{"from": "x", "to": "y", "exp": "1"}]}

and a line format, one arc per line after the state declaration:

    states x y
    x y 1 1/2

Exponents and coefficients stay strings until they are turned into exact
fractions, so nothing is lost to floating point.
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.graph.perturbation_graph import PerturbationGraph, monomial_graph
from src.oracle.numeric import MonomialSpec
from src.semiring.monomial import ONE_KEYWORD, ZERO_KEYWORD, MonomialClass
from src.utils.file_utils import looks_like_json

logger = logging.getLogger(__name__)

COMMENT = "#"
STATES_KEYWORD = "states"


class DocumentParseError(ValueError):
    """Raised when a document cannot be read at all"""

    def __init__(
        self, message: str, line: Optional[int] = None, field: Optional[str] = None
    ) -> None:
        self.line = line
        self.field = field
        where: List[str] = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class DocumentValidationError(ValueError):
    """Raised with every problem found in a readable but invalid document"""

    def __init__(self, violations: List[str]) -> None:
        self.violations = violations
        super().__init__("; ".join(violations))


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{what} '{text}' is not a rational number") from e


class ArcSpec(BaseModel):
    """One arc: its exponent (or a weight keyword) and optional coefficient"""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    source: str = Field(alias="from", min_length=1)
    target: str = Field(alias="to", min_length=1)
    exp: Optional[str] = None
    weight: Optional[str] = None
    coeff: Optional[str] = None

    @field_validator("exp")
    @classmethod
    def _non_negative_exponent(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and _rational(value, "exponent") < 0:
            raise ValueError(f"exponent '{value}' is negative")
        return value

    @field_validator("weight")
    @classmethod
    def _weight_keyword(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value.strip() not in (ZERO_KEYWORD, ONE_KEYWORD):
            raise ValueError(f"weight must be '{ZERO_KEYWORD}' or '{ONE_KEYWORD}'")
        return value

    @field_validator("coeff")
    @classmethod
    def _positive_coefficient(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and _rational(value, "coefficient") <= 0:
            raise ValueError(f"coefficient '{value}' is not positive")
        return value

    def exponent(self) -> Optional[Fraction]:
        """The arc's exponent, None for a zero weight"""
        if self.exp is not None:
            return _rational(self.exp, "exponent")
        if self.weight is not None and self.weight.strip() == ONE_KEYWORD:
            return Fraction(0)
        return None

    def coefficient(self) -> Fraction:
        """The arc's coefficient, one when absent"""
        if self.coeff is None:
            return Fraction(1)
        return _rational(self.coeff, "coefficient")


class InputDocument(BaseModel):
    """States and arcs of a perturbation"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    states: List[str]
    arcs: List[ArcSpec] = Field(default_factory=list)

    def violations(self) -> List[str]:
        """Every structural problem: empty or repeated states, self-loops,
        undeclared states, repeated arcs and arcs with two weights"""
        found: List[str] = []
        if not self.states:
            found.append("states: at least one state is needed")
        seen_states: set[str] = set()
        for name in self.states:
            if not name:
                found.append("states: empty state name")
            elif name in seen_states:
                found.append(f"states: '{name}' is declared twice")
            seen_states.add(name)
        seen_arcs: set[Tuple[str, str]] = set()
        for i, arc in enumerate(self.arcs):
            where = f"arcs[{i}]"
            if arc.source == arc.target:
                found.append(f"{where}: self-loop on '{arc.source}'")
            for name in (arc.source, arc.target):
                if name not in seen_states:
                    found.append(f"{where}: state '{name}' is not declared")
            if (arc.exp is None) == (arc.weight is None):
                found.append(f"{where}: give exactly one of 'exp' and 'weight'")
            if (arc.source, arc.target) in seen_arcs:
                found.append(f"{where}: arc {arc.source}->{arc.target} repeated")
            seen_arcs.add((arc.source, arc.target))
        return found

    def exponents(self) -> Dict[Tuple[str, str], Optional[Fraction]]:
        """Arc exponents keyed by (from, to); None marks an explicit zero"""
        return {(arc.source, arc.target): arc.exponent() for arc in self.arcs}

    def to_graph(self) -> PerturbationGraph[MonomialClass]:
        """The abstracted perturbation graph"""
        return monomial_graph(self.states, self.exponents())

    def to_monomial_specs(self) -> Dict[Tuple[str, str], MonomialSpec]:
        """Concrete maps for the numerical check; zero arcs are left out"""
        specs: Dict[Tuple[str, str], MonomialSpec] = {}
        for arc in self.arcs:
            alpha = arc.exponent()
            if alpha is not None:
                specs[(arc.source, arc.target)] = MonomialSpec(
                    coeff=arc.coefficient(), alpha=alpha
                )
        return specs

    def has_coefficients(self) -> bool:
        """True when some arc gives a coefficient other than one"""
        return any(arc.coefficient() != 1 for arc in self.arcs)


def _read_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentParseError(e.msg, line=e.lineno) from e


def _read_lines(text: str) -> Dict[str, Any]:
    states: Optional[List[str]] = None
    arcs: List[Dict[str, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(COMMENT, 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if states is None:
            if tokens[0] != STATES_KEYWORD:
                raise DocumentParseError(
                    f"expected '{STATES_KEYWORD} ...' first",
                    line=number,
                    field="states",
                )
            states = tokens[1:]
            continue
        if tokens[0] == STATES_KEYWORD:
            raise DocumentParseError(
                "states declared twice", line=number, field="states"
            )
        if len(tokens) not in (3, 4):
            raise DocumentParseError(
                "expected 'from to exponent [coeff]'", line=number, field="arc"
            )
        arc = {"from": tokens[0], "to": tokens[1], "exp": tokens[2]}
        if len(tokens) == 4:
            arc["coeff"] = tokens[3]
        arcs.append(arc)
    if states is None:
        raise DocumentParseError("no states declared", field="states")
    return {"states": states, "arcs": arcs}


def _describe(error: Any) -> str:
    location = ".".join(str(part) for part in error["loc"])
    return f"{location}: {error['msg']}" if location else str(error["msg"])


def parse_document(data: bytes | str) -> InputDocument:
    """Read and validate a document in either format.

    The format is picked from the first non-blank character: '{' means JSON.

    Raises:
        DocumentParseError: when the bytes are not a readable document
        DocumentValidationError: listing every violation otherwise
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise DocumentParseError("document is not UTF-8") from e
    raw = _read_json(text) if looks_like_json(data) else _read_lines(text)

    try:
        document = InputDocument.model_validate(raw)
    except ValidationError as e:
        raise DocumentValidationError([_describe(err) for err in e.errors()]) from e
    violations = document.violations()
    if violations:
        raise DocumentValidationError(violations)
    logger.debug(
        "read %d states and %d arcs", len(document.states), len(document.arcs)
    )
    return document
