"""
The ordered-division semiring contract every graph algorithm is written against.

A semiring supplies element operations (mul, le, div, semiring_max) over a
carrier with a distinguished zero and one. Graph algorithms run on dense
numpy matrices of *encoded* cells, so the contract also carries array
kernels. The base class implements those kernels over object arrays using
the element operations; a semiring that can do better (see
DenseMonomialSemiring) overrides them.
"""

from abc import ABC, abstractmethod
from functools import cached_property
from typing import Any, Generic, Optional, Sequence, Tuple, TypeVar

import numpy as np
import numpy.typing as npt

F = TypeVar("F")
Matrix = npt.NDArray[Any]


class PreconditionViolation(ValueError):
    """Raised when div(a, b) is requested although a is not below b"""


def object_scalar(value: Any) -> Matrix:
    """Wrap a value as a 0-d object array so numpy never unpacks it"""
    cell = np.empty((), dtype=object)
    cell[()] = value
    return cell


class OrderedDivisionSemiring(ABC, Generic[F]):
    """A totally ordered commutative semiring (F, zero, one, max_le, mul) with
    maximum one and an ordered division satisfying div(f, g) * g = f for f <= g.

    Subclasses implement the element operations; everything else has a
    default derived from them.
    """

    @property
    @abstractmethod
    def zero(self) -> F:
        """The absorbing minimum"""

    @property
    @abstractmethod
    def one(self) -> F:
        """The multiplicative identity and maximum"""

    @abstractmethod
    def mul(self, a: F, b: F) -> F:
        """Semiring product"""

    @abstractmethod
    def le(self, a: F, b: F) -> bool:
        """Total order, zero lowest and one highest"""

    @abstractmethod
    def div(self, a: F, b: F) -> F:
        """Ordered division, only defined when le(a, b)

        Raises:
            PreconditionViolation: if a is above b
        """

    def semiring_max(self, a: F, b: F) -> F:
        """The le-larger of a and b"""
        return b if self.le(a, b) else a

    def eq(self, a: F, b: F) -> bool:
        """Equality of classes"""
        return self.le(a, b) and self.le(b, a)

    def is_zero(self, a: F) -> bool:
        """True when a is the semiring zero"""
        return self.eq(a, self.zero)

    def is_one(self, a: F) -> bool:
        """True when a is the semiring one"""
        return self.eq(a, self.one)

    def inverse_product(self, divisors: Sequence[F]) -> Optional[F]:
        """The formal inverse of the product of divisors.

        Semirings without inverses return None and callers keep the divisor
        list instead.
        """
        return None

    def format(self, a: F) -> str:
        """Render an element for reports and DOT labels"""
        return str(a)

    def parse(self, text: str) -> F:
        """Inverse of format"""
        raise NotImplementedError(f"{type(self).__name__} cannot parse elements")

    # encoded cells

    def encode(self, a: F) -> Any:
        """Element to matrix cell"""
        return a

    def decode(self, cell: Any) -> F:
        """Matrix cell to element"""
        return cell  # type: ignore[no-any-return]

    @property
    def zero_cell(self) -> Any:
        """Encoded zero"""
        return self.encode(self.zero)

    @property
    def one_cell(self) -> Any:
        """Encoded one"""
        return self.encode(self.one)

    def zeros(self, shape: int | Tuple[int, ...]) -> Matrix:
        """An array filled with the encoded zero"""
        array = np.empty(shape, dtype=object)
        array.fill(self.zero_cell)
        return array

    def as_scalar(self, cell: Any) -> Matrix:
        """A cell in a form that broadcasts against matrices"""
        return object_scalar(cell)

    # array kernels, generic over object arrays

    @cached_property
    def _ufunc_mul(self) -> np.ufunc:
        return np.frompyfunc(self.mul, 2, 1)

    @cached_property
    def _ufunc_div(self) -> np.ufunc:
        return np.frompyfunc(self.div, 2, 1)

    @cached_property
    def _ufunc_max(self) -> np.ufunc:
        return np.frompyfunc(self.semiring_max, 2, 1)

    @cached_property
    def _ufunc_is_zero(self) -> np.ufunc:
        return np.frompyfunc(self.is_zero, 1, 1)

    @cached_property
    def _ufunc_is_one(self) -> np.ufunc:
        return np.frompyfunc(self.is_one, 1, 1)

    def amul(self, a: Matrix, b: Matrix) -> Matrix:
        """Elementwise product with broadcasting"""
        return np.asarray(self._ufunc_mul(a, b), dtype=object)

    def adiv(self, a: Matrix, b: Matrix) -> Matrix:
        """Elementwise ordered division with broadcasting"""
        return np.asarray(self._ufunc_div(a, b), dtype=object)

    def amax(self, a: Matrix, b: Matrix) -> Matrix:
        """Elementwise semiring_max with broadcasting"""
        return np.asarray(self._ufunc_max(a, b), dtype=object)

    def reduce_max(self, a: Matrix, axis: Optional[int] = None) -> Any:
        """le-maximum along an axis (all cells when axis is None); zero when empty"""
        if axis is None:
            a = a.ravel()
            axis = 0
        if a.shape[axis] == 0:
            shape = tuple(size for i, size in enumerate(a.shape) if i != axis)
            return self.zeros(shape) if shape else self.zero_cell
        return self._ufunc_max.reduce(a, axis=axis)

    def mask_zero(self, a: Matrix) -> npt.NDArray[np.bool_]:
        """Boolean mask of the zero cells"""
        return np.asarray(self._ufunc_is_zero(a), dtype=bool)

    def mask_one(self, a: Matrix) -> npt.NDArray[np.bool_]:
        """Boolean mask of the one cells"""
        return np.asarray(self._ufunc_is_one(a), dtype=bool)

    def argmax(self, vector: Matrix, mask: npt.NDArray[np.bool_]) -> Optional[int]:
        """Index of the le-greatest non-zero cell among those selected by mask.

        Ties go to the lowest index; None when every selected cell is zero.
        """
        best: Optional[int] = None
        for index in np.flatnonzero(mask):
            cell = self.decode(vector[index])
            if self.is_zero(cell):
                continue
            if best is None or not self.le(cell, self.decode(vector[best])):
                best = int(index)
        return best
