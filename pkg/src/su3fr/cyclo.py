"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as an integer coefficient vector over the power basis
1, z, ..., z^(phi(n)-1) together with a positive common denominator.  The
vector is always the remainder modulo the n-th cyclotomic polynomial and the
fraction is always in lowest terms, so equality and hashing are structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

DEFAULT_CONDUCTOR = 72


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic; the division is exact
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """Per-conductor tables shared by every element of Q(zeta_n)."""

    def __init__(self, n: int):
        if n < 2 or n % 2:
            raise ValueError(f"conductor must be a positive even integer, got {n}")
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        # reduced coefficient vectors of x^k for 0 <= k < n
        pows = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(n):
            pows.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(phi):
                    vec[j] -= top * self.poly[j]
        self.powers = tuple(pows)
        red = np.zeros((phi, phi, phi), dtype=np.int64)
        for a in range(phi):
            for b in range(phi):
                red[a, b] = pows[(a + b) % n]
        self.reduction = red
        # row a holds the coefficients of x^(-a)
        self.conj_matrix = np.array([pows[(-a) % n] for a in range(phi)], dtype=np.int64)
        self.embedding = np.exp(2j * np.pi * np.arange(phi) / n)
        self.max_red = int(np.abs(red).max())

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def mul_vectors(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
        phi = self.phi
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [0] * phi
        for k, c in enumerate(prod):
            if c:
                for j, p in enumerate(self.powers[k]):
                    if p:
                        out[j] += c * p
        return out


@lru_cache(maxsize=None)
def field(n: int = DEFAULT_CONDUCTOR) -> CyclotomicField:
    return CyclotomicField(n)


def _normalize(num, den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    num = [int(x) for x in num]
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


class ConductorMismatch(ValueError):
    pass


class CycloNum:
    """An element of Q(zeta_n) in canonical reduced form.

    Instances are immutable; use the module-level constructors
    (:func:`root_of_unity`, :func:`rational`) or the arithmetic operators.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField | int, num, den: int = 1):
        if isinstance(fld, int):
            fld = field(fld)
        if len(num) != fld.phi:
            raise ValueError(f"expected {fld.phi} coefficients, got {len(num)}")
        self.field = fld
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def from_poly(cls, fld: CyclotomicField, coeffs, den: int = 1) -> CycloNum:
        """Reduce an arbitrary-length integer polynomial in zeta."""
        out = [0] * fld.phi
        for k, c in enumerate(coeffs):
            if c:
                for j, p in enumerate(fld.powers[k % fld.n]):
                    out[j] += c * p
        return cls(fld, out, den)

    @property
    def conductor(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise ConductorMismatch(
                    f"conductors differ: {self.conductor} vs {other.conductor}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return rational(other, self.field.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.den * other.den
        return CycloNum(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.field, self.field.mul_vectors(self.num, other.num), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = one(self.field.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == rational(other, self.field.n)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.num, self.den))
        return self._hash

    def __bool__(self):
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def conj(self) -> CycloNum:
        """Complex conjugate, i.e. the automorphism zeta -> zeta^-1."""
        vec = np.array(self.num, dtype=object) @ self.field.conj_matrix.astype(object)
        return CycloNum(self.field, list(vec), self.den)

    def inv(self) -> CycloNum:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        # polynomials over Q, low-to-high, trailing zeros stripped
        r0 = [Fraction(c) for c in self.field.poly]
        r1 = [Fraction(c, self.den) for c in self.num]
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        r1 = _strip(r1)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant: s1 * a == r1 (mod Phi)
        c = r1[0]
        coeffs = [x / c for x in s1]
        lcd = math.lcm(*(x.denominator for x in coeffs)) if coeffs else 1
        out = [0] * self.field.phi
        for k, x in enumerate(coeffs):
            v = int(x * lcd)
            if v:
                for j, p in enumerate(self.field.powers[k % self.field.n]):
                    out[j] += v * p
        return CycloNum(self.field, out, lcd)

    def approx(self) -> complex:
        """Value under the standard embedding zeta -> exp(2 pi i / n)."""
        vals = [x / self.den for x in self.num]  # int/int true division is correctly rounded
        return complex(np.dot(vals, self.field.embedding))

    def to_json(self) -> list[list[int]]:
        return [[Fraction(x, self.den).numerator, Fraction(x, self.den).denominator] for x in self.num]

    @classmethod
    def from_json(cls, data, n: int = DEFAULT_CONDUCTOR) -> CycloNum:
        fld = field(n)
        if not isinstance(data, list) or len(data) != fld.phi:
            raise ValueError(f"expected a list of {fld.phi} [num, den] pairs")
        fr = []
        for pair in data:
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
                    or pair[1] == 0):
                raise ValueError(f"malformed coefficient {pair!r}")
            fr.append(Fraction(pair[0], pair[1]))
        lcd = math.lcm(*(f.denominator for f in fr))
        return cls(fld, [int(f * lcd) for f in fr], lcd)

    def __repr__(self):
        return f"CycloNum({self})"

    def __str__(self):
        terms = []
        for k, x in enumerate(self.num):
            if not x:
                continue
            c = Fraction(x, self.den)
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.field.n}^{k}" if k > 1 else f"z{self.field.n}"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _strip(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _strip([Fraction(x) for x in out])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a = _strip(a)
    return _strip(q), a


def rational(q, n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    fld = field(n)
    q = Fraction(q)
    return CycloNum(fld, [q.numerator] + [0] * (fld.phi - 1), q.denominator)


def zero(n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return rational(0, n)


def one(n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return rational(1, n)


def root_of_unity(n: int, k: int) -> CycloNum:
    """zeta_n^k = exp(2 pi i k / n), reduced."""
    fld = field(n)
    return CycloNum(fld, fld.powers[k % n])


def root_in(conductor: int, order: int, k: int) -> CycloNum:
    """exp(2 pi i k / order) expressed inside Q(zeta_conductor)."""
    if conductor % order:
        raise ValueError(f"Q(zeta_{order}) does not embed in Q(zeta_{conductor})")
    return root_of_unity(conductor, k * (conductor // order))


def sqrt2(n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return root_in(n, 8, 1) + root_in(n, 8, -1)


def sqrt3(n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return root_in(n, 12, 1) + root_in(n, 12, -1)


def imag_unit(n: int = DEFAULT_CONDUCTOR) -> CycloNum:
    return root_in(n, 4, 1)
