"""3x3 matrices over a cyclotomic field.

Storage is a ``(3, 3, phi)`` integer array with one common positive
denominator, kept in lowest terms.  A product ``m @ x`` is one float64 BLAS
call against ``m``'s cached left-multiplication operator (the field's
reduction tensor folded into ``m``); that path is only taken when a bound on
the result keeps every partial sum an exactly representable integer.  Larger
coefficients fall back to Python integers.

Entry access is 1-based (``m.entry(1, 3)`` is the top-right corner) so that
the parity pattern of cross matrices reads the same as in matrix notation.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .cyclo import (
    DEFAULT_CONDUCTOR,
    CycloNum,
    CyclotomicField,
    ConductorMismatch,
    field,
    rational,
)

_INT64_SAFE = 2**62
_FLOAT_EXACT = 2**52


class OrderCapExceeded(ArithmeticError):
    """Raised when a matrix has no finite order below the requested cap."""


def _reduce(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den < 0:
        num, den = -num, -den
    if num.dtype == object:
        g = math.gcd(den, *(int(x) for x in num.ravel()))
    else:
        g = math.gcd(den, int(np.gcd.reduce(num.ravel())))
    if not num.any():
        return np.zeros(num.shape, dtype=np.int64), 1
    if g > 1:
        num = num // g
        den //= g
    if num.dtype == object and max(abs(int(x)) for x in num.ravel()) < _INT64_SAFE:
        num = num.astype(np.int64)
    return num, den


class Mat3:
    __slots__ = ("field", "num", "den", "_key", "_hash", "_lop", "_absmax")

    def __init__(self, fld: CyclotomicField, num: np.ndarray, den: int = 1):
        num, den = _reduce(np.asarray(num), int(den))
        num.setflags(write=False)
        self.field = fld
        self.num = num
        self.den = den
        self._key = None
        self._hash = None
        self._lop = None
        self._absmax = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[CycloNum | int]], n: int | None = None) -> Mat3:
        flat = [x for row in rows for x in row]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 array")
        if n is None:
            n = next((x.conductor for x in flat if isinstance(x, CycloNum)), DEFAULT_CONDUCTOR)
        fld = field(n)
        ents = [x if isinstance(x, CycloNum) else rational(x, n) for x in flat]
        for x in ents:
            if x.field is not fld:
                raise ConductorMismatch("entries live in different fields")
        lcd = math.lcm(*(x.den for x in ents))
        big = any(abs(v) * (lcd // x.den) >= _INT64_SAFE for x in ents for v in x.num)
        arr = np.empty((3, 3, fld.phi), dtype=object if big else np.int64)
        for idx, x in enumerate(ents):
            arr[idx // 3, idx % 3] = [v * (lcd // x.den) for v in x.num]
        return cls(fld, arr, lcd)

    @classmethod
    def identity(cls, n: int = DEFAULT_CONDUCTOR) -> Mat3:
        return cls.scalar(rational(1, n))

    @classmethod
    def scalar(cls, c: CycloNum) -> Mat3:
        z = rational(0, c.conductor)
        return cls.from_entries([[c, z, z], [z, c, z], [z, z, c]])

    @classmethod
    def diag(cls, a, b, c) -> Mat3:
        return cls.from_entries([[a, 0, 0], [0, b, 0], [0, 0, c]], _conductor_of(a, b, c))

    @classmethod
    def antidiag(cls, a, b, c) -> Mat3:
        """Matrix with ``a`` at (1,3), ``b`` at (2,2), ``c`` at (3,1)."""
        return cls.from_entries([[0, 0, a], [0, b, 0], [c, 0, 0]], _conductor_of(a, b, c))

    # -- access -----------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.field.n

    def entry(self, i: int, j: int) -> CycloNum:
        if not (1 <= i <= 3 and 1 <= j <= 3):
            raise IndexError("Mat3 entries are indexed 1..3")
        return CycloNum(self.field, [int(v) for v in self.num[i - 1, j - 1]], self.den)

    def rows(self) -> list[list[CycloNum]]:
        return [[self.entry(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]

    def key(self):
        if self._key is None:
            if self.num.dtype == object:
                self._key = (tuple(int(v) for v in self.num.ravel()), self.den)
            else:
                self._key = (self.num.tobytes(), self.den)
        return self._key

    def sort_key(self) -> tuple:
        """Lexicographic key on the 9 entries' rational coefficient vectors."""
        from fractions import Fraction

        return tuple(Fraction(int(v), self.den) for v in self.num.ravel())

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return self.field is other.field and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # -- algebra ----------------------------------------------------------

    def _check(self, other: Mat3):
        if other.field is not self.field:
            raise ConductorMismatch(f"conductors differ: {self.conductor} vs {other.conductor}")

    def __matmul__(self, other: Mat3) -> Mat3:
        if not isinstance(other, Mat3):
            return NotImplemented
        self._check(other)
        fld = self.field
        phi = fld.phi
        a, b = self.num, other.num
        bound = self._coeff_bound() * other._coeff_bound() * 3 * phi * phi * fld.max_red
        if bound < _FLOAT_EXACT:
            x = b.astype(float).transpose(0, 2, 1).reshape(3 * phi, 3)
            p = (self._left_operator() @ x).reshape(3, phi, 3).transpose(0, 2, 1)
            prod = np.rint(p).astype(np.int64)
        else:
            ab = np.einsum("ija,jkb->ikab", a.astype(object), b.astype(object))
            prod = np.tensordot(ab, fld.reduction.astype(object), axes=([2, 3], [0, 1]))
        return Mat3(fld, prod, self.den * other.den)

    def _coeff_bound(self) -> int:
        if self._absmax is None:
            self._absmax = max(abs(int(v)) for v in self.num.ravel()) if self.num.dtype == object \
                else int(np.abs(self.num).max())
        return self._absmax

    def _left_operator(self) -> np.ndarray:
        # L[(i,c),(j,b)] = sum_a num[i,j,a] * red[a,b,c]
        if self._lop is None:
            phi = self.field.phi
            lop = np.tensordot(self.num.astype(float), self.field.reduction.astype(float), axes=(2, 0))
            self._lop = lop.transpose(0, 3, 1, 2).reshape(3 * phi, 3 * phi)
        return self._lop

    __mul__ = __matmul__

    def scale(self, c: CycloNum | int) -> Mat3:
        if not isinstance(c, CycloNum):
            c = rational(c, self.conductor)
        return Mat3.scalar(c) @ self

    def __neg__(self) -> Mat3:
        return Mat3(self.field, -self.num, self.den)

    def __add__(self, other: Mat3) -> Mat3:
        self._check(other)
        return Mat3(self.field, self.num.astype(object) * other.den + other.num.astype(object) * self.den,
                    self.den * other.den)

    def __sub__(self, other: Mat3) -> Mat3:
        return self + (-other)

    def __pow__(self, k: int) -> Mat3:
        if k < 0:
            return self.inverse() ** (-k)
        result = Mat3.identity(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> Mat3:
        return Mat3(self.field, self.num.transpose(1, 0, 2), self.den)

    def conj(self) -> Mat3:
        cm = self.field.conj_matrix
        if self.num.dtype == object:
            cm = cm.astype(object)
        return Mat3(self.field, self.num @ cm, self.den)

    def dagger(self) -> Mat3:
        return self.conj().transpose()

    def inverse(self) -> Mat3:
        """Inverse of a unitary matrix (its conjugate transpose)."""
        if not is_unitary(self):
            raise ValueError("inverse() is only defined for unitary matrices; use adjugate_inverse()")
        return self.dagger()

    def adjugate_inverse(self) -> Mat3:
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        m = self.rows()
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [x for x in range(3) if x != i]
                c = [x for x in range(3) if x != j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                cof[j][i] = minor if (i + j) % 2 == 0 else -minor
        dinv = d.inv()
        return Mat3.from_entries([[x * dinv for x in row] for row in cof])

    def trace(self) -> CycloNum:
        return self.entry(1, 1) + self.entry(2, 2) + self.entry(3, 3)

    def det(self) -> CycloNum:
        m = self.rows()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def is_identity(self) -> bool:
        return self == Mat3.identity(self.conductor)

    def is_diagonal(self) -> bool:
        return all(not self.num[i, j].any() for i in range(3) for j in range(3) if i != j)

    def approx(self) -> np.ndarray:
        out = np.empty((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                out[i, j] = self.entry(i + 1, j + 1).approx()
        return out

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list:
        return [self.entry(i, j).to_json() for i in (1, 2, 3) for j in (1, 2, 3)]

    @classmethod
    def from_json(cls, data, n: int = DEFAULT_CONDUCTOR) -> Mat3:
        if not isinstance(data, list) or len(data) != 9:
            raise ValueError("a matrix is a list of 9 entries in row-major order")
        ents = [CycloNum.from_json(x, n) for x in data]
        return cls.from_entries([ents[0:3], ents[3:6], ents[6:9]], n)

    def __repr__(self):
        return "Mat3(" + "; ".join(", ".join(str(x) for x in row) for row in self.rows()) + ")"


def _conductor_of(*xs) -> int:
    return next((x.conductor for x in xs if isinstance(x, CycloNum)), DEFAULT_CONDUCTOR)


def is_unitary(m: Mat3) -> bool:
    return (m @ m.dagger()).is_identity()


def is_special_unitary(m: Mat3) -> bool:
    return is_unitary(m) and m.det() == 1


def is_cross(m: Mat3) -> bool:
    """Zero wherever exactly one of the (1-based) row/column indices is even."""
    return all(m.entry(i, j).is_zero() for i, j in ((1, 2), (2, 1), (2, 3), (3, 2)))


def element_order(m: Mat3, cap: int = 648) -> int:
    ident = Mat3.identity(m.conductor)
    p = m
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = p @ m
    raise OrderCapExceeded(f"order exceeds cap {cap}")


def conjugate(g: Mat3, m: Mat3) -> Mat3:
    """g m g^-1, using the conjugate transpose when g is unitary."""
    ginv = g.dagger() if is_unitary(g) else g.adjugate_inverse()
    return g @ m @ ginv


def product(mats: Iterable[Mat3], n: int = DEFAULT_CONDUCTOR) -> Mat3:
    out = None
    for m in mats:
        out = m if out is None else out @ m
    return Mat3.identity(n) if out is None else out
