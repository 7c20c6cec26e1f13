"""
Tropical monomials: the classes of eps -> c * eps^alpha up to asymptotic
equivalence. The coefficient is forgotten, so a class is the exponent alone
(or Zero for the constant-zero map).

Exp(a) * Exp(b) = Exp(a + b), Exp(a) <= Exp(b) iff b <= a, and
Exp(a) / Exp(b) = Exp(a - b) for b <= a.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from src.semiring.ordered_division import (
    Matrix,
    OrderedDivisionSemiring,
    PreconditionViolation,
)

logger = logging.getLogger(__name__)

ZERO_KEYWORD = "0"
ONE_KEYWORD = "1"
EXACT_FLOAT_LIMIT = 2**53


def parse_exponent(text: str | int | Fraction) -> Fraction:
    """Read an exponent given as an integer, a decimal string or a "p/q" string

    Raises:
        ValueError: if the text is not a rational number
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{text}' is not a rational exponent") from e


def exponent_text(alpha: Fraction) -> str:
    """Exponent as it is printed: integers plainly, everything else as p/q"""
    if alpha.denominator == 1:
        return str(alpha.numerator)
    return f"{alpha.numerator}/{alpha.denominator}"


@dataclass(frozen=True)
class MonomialClass:
    """The class of eps -> eps^alpha, or Zero when alpha is None.

    Graph weights always carry alpha >= 0; negative exponents only appear as
    formal inverses (vanishing time scales).
    """

    alpha: Optional[Fraction]

    def __post_init__(self) -> None:
        if self.alpha is not None:
            object.__setattr__(self, "alpha", parse_exponent(self.alpha))

    @classmethod
    def exp(cls, alpha: str | int | Fraction) -> "MonomialClass":
        """The class of eps^alpha"""
        return cls(parse_exponent(alpha))

    @property
    def is_zero(self) -> bool:
        """True for the class of the zero map"""
        return self.alpha is None

    def __str__(self) -> str:
        if self.alpha is None:
            return ZERO_KEYWORD
        return f"e^{exponent_text(self.alpha)}"


ZERO = MonomialClass(None)
ONE = MonomialClass(Fraction(0))


class MonomialSemiring(OrderedDivisionSemiring[MonomialClass]):
    """Element operations on MonomialClass; array kernels stay generic"""

    @property
    def zero(self) -> MonomialClass:
        return ZERO

    @property
    def one(self) -> MonomialClass:
        return ONE

    def mul(self, a: MonomialClass, b: MonomialClass) -> MonomialClass:
        if a.alpha is None or b.alpha is None:
            return ZERO
        return MonomialClass(a.alpha + b.alpha)

    def le(self, a: MonomialClass, b: MonomialClass) -> bool:
        if a.alpha is None:
            return True
        if b.alpha is None:
            return False
        return b.alpha <= a.alpha

    def div(self, a: MonomialClass, b: MonomialClass) -> MonomialClass:
        if not self.le(a, b):
            raise PreconditionViolation(f"cannot divide {a} by the smaller {b}")
        if b.alpha is None:
            # only Zero / Zero gets here; any value satisfies the law
            return ONE
        if a.alpha is None:
            return ZERO
        return MonomialClass(a.alpha - b.alpha)

    def eq(self, a: MonomialClass, b: MonomialClass) -> bool:
        return a == b

    def is_zero(self, a: MonomialClass) -> bool:
        return a.alpha is None

    def is_one(self, a: MonomialClass) -> bool:
        return a.alpha == 0

    def inverse_product(self, divisors: Sequence[MonomialClass]) -> MonomialClass:
        total = Fraction(0)
        for divisor in divisors:
            if divisor.alpha is None:
                raise ValueError("Zero has no inverse")
            total += divisor.alpha
        return MonomialClass(-total)

    def format(self, a: MonomialClass) -> str:
        return str(a)

    def parse(self, text: str) -> MonomialClass:
        """Accepts the weight keywords "0" and "1" and the forms e^alpha, eps^alpha"""
        text = text.strip()
        if text == ZERO_KEYWORD:
            return ZERO
        if text == ONE_KEYWORD:
            return ONE
        for prefix in ("eps^", "e^"):
            if text.startswith(prefix):
                return MonomialClass.exp(text[len(prefix) :])
        raise ValueError(f"'{text}' is not a monomial class")


class DenseMonomialSemiring(MonomialSemiring):
    """MonomialSemiring with exact vectorised kernels.

    Exponents are multiplied by a common scale (the lcm of their
    denominators) so every cell is an integer; Zero is +inf. Cells are
    float64 while every path product stays below 2**53, otherwise Python
    integers in object arrays. Either way the arithmetic is exact: products
    are additions, maxima are minima and divisions are subtractions.
    """

    def __init__(self, scale: int = 1, exact_float: bool = True) -> None:
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        self.scale = scale
        self.exact_float = exact_float
        self._dtype: type = np.float64 if exact_float else object

    @classmethod
    def fitted(
        cls, exponents: Iterable[Fraction], path_length: int = 1
    ) -> "DenseMonomialSemiring":
        """A semiring whose encoding holds the given exponents and every
        product of up to path_length of them exactly
        """
        values = list(exponents)
        scale = math.lcm(1, *(value.denominator for value in values))
        largest = max((abs(value) * scale for value in values), default=Fraction(0))
        exact_float = largest * max(path_length, 1) < EXACT_FLOAT_LIMIT
        if not exact_float:
            logger.debug("exponents too large for float cells, using integer cells")
        return cls(scale=scale, exact_float=exact_float)

    def __repr__(self) -> str:
        return (
            f"DenseMonomialSemiring(scale={self.scale}, "
            f"exact_float={self.exact_float})"
        )

    def encode(self, a: MonomialClass) -> Any:
        if a.alpha is None:
            return math.inf
        scaled = a.alpha * self.scale
        if scaled.denominator != 1:
            raise ValueError(f"{a} is not representable with scale {self.scale}")
        return float(scaled.numerator) if self.exact_float else scaled.numerator

    def decode(self, cell: Any) -> MonomialClass:
        if cell == math.inf:
            return ZERO
        return MonomialClass(Fraction(int(cell), self.scale))

    def zeros(self, shape: int | tuple[int, ...]) -> Matrix:
        return np.full(shape, math.inf, dtype=self._dtype)

    def as_scalar(self, cell: Any) -> Matrix:
        return np.asarray(cell, dtype=self._dtype)

    def amul(self, a: Matrix, b: Matrix) -> Matrix:
        return np.asarray(np.add(a, b), dtype=self._dtype)

    def adiv(self, a: Matrix, b: Matrix) -> Matrix:
        if np.any(np.less(a, b)):
            raise PreconditionViolation("cannot divide by a smaller class")
        with np.errstate(invalid="ignore"):
            quotient = np.subtract(a, b)
        # Zero / Zero is one
        return np.asarray(
            np.where(np.equal(b, math.inf), 0, quotient), dtype=self._dtype
        )

    def amax(self, a: Matrix, b: Matrix) -> Matrix:
        return np.asarray(np.minimum(a, b), dtype=self._dtype)

    def reduce_max(self, a: Matrix, axis: Optional[int] = None) -> Any:
        return np.minimum.reduce(a, axis=axis, initial=math.inf)

    def mask_zero(self, a: Matrix) -> Any:
        return np.asarray(np.equal(a, math.inf), dtype=bool)

    def mask_one(self, a: Matrix) -> Any:
        return np.asarray(np.equal(a, 0), dtype=bool)

    def argmax(self, vector: Matrix, mask: Any) -> Optional[int]:
        candidates = np.where(mask, vector, math.inf)
        if candidates.size == 0:
            return None
        index = int(np.argmin(candidates))
        if candidates[index] == math.inf:
            return None
        return index
