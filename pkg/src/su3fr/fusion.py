"""Level-4 Kauffman-Lins recoupling: quantum dimensions, thetas, Tet, unitary 6j.

The Kauffman-Lins variable is ``A = i exp(i pi / 12) = zeta_72^21``, chosen so
that the loop value ``delta = -A^2 - A^-2`` equals ``+sqrt(3)`` and every
quantum dimension ``Delta_n = (-1)^n [n+1]`` is positive:
``Delta = (1, sqrt3, 2, sqrt3, 1)`` for ``n = 0..4``.

Unitary symbols need square roots of these numbers (``3^(1/4)`` appears), so
they are carried as :class:`SurdNum` values ``coeff * sqrt(radicand)`` with
cyclotomic ``coeff`` and a totally positive real cyclotomic ``radicand``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclo import DEFAULT_CONDUCTOR, CycloNum, field, rational, root_of_unity
from .mat3 import Mat3

LEVEL = 4
N = DEFAULT_CONDUCTOR
LABELS = tuple(range(LEVEL + 1))


# -- square roots inside Q(zeta_n) --------------------------------------------------


@lru_cache(maxsize=None)
def _embedding_data(n: int):
    fld = field(n)
    units = [k for k in range(1, n) if math.gcd(k, n) == 1]
    vander = np.exp(2j * np.pi * np.outer(units, np.arange(fld.phi)) / n)
    # pair each unit k with n-k; the standard embedding (k=1) comes first
    reps = [k for k in units if k < n - k]
    pair_of = [reps.index(min(k, n - k)) for k in units]
    return units, vander, np.linalg.inv(vander), reps, pair_of


def embeddings(x: CycloNum) -> np.ndarray:
    """Values of ``x`` under every embedding zeta -> exp(2 pi i k / n), gcd(k, n) = 1."""
    _, vander, *_ = _embedding_data(x.conductor)
    return vander @ (np.array(x.num, dtype=float) / x.den)


def is_totally_positive(x: CycloNum) -> bool:
    if x != x.conj():
        return False
    vals = embeddings(x)
    return bool(np.all(vals.real > 1e-12))


@lru_cache(maxsize=4096)
def sqrt_in_field(r: CycloNum) -> CycloNum | None:
    """The square root of ``r`` with positive standard embedding, if it lies in the field.

    Such a root is real, so it sits in the maximal real subfield and ``r`` must be
    totally positive.  Each real embedding of the root is then ``+-sqrt`` of the
    matching embedding of ``r``; the sign patterns are enumerated, the power-basis
    coefficients recovered by solving the Vandermonde system, and a candidate is
    kept only if ``den(r) * root`` is integral and squares back to ``r`` exactly.
    """
    n = r.conductor
    if r.is_zero():
        return r
    if r.is_rational():
        q = r.to_fraction()
        if q < 0:
            return None
        a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if a * a == q.numerator and b * b == q.denominator:
            return rational(Fraction(a, b), n)
        return None
    if not is_totally_positive(r):
        return None
    units, _, vinv, reps, pair_of = _embedding_data(n)
    roots = np.sqrt(embeddings(r).real)
    # a rational radicand is handled above, so den(r) bounds the root's denominator
    scale = r.den
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=len(reps) - 1)))
    signs = np.hstack([np.ones((len(signs), 1)), signs])
    per_unit = signs[:, pair_of] * roots[None, :]
    coeffs = (per_unit @ vinv.T).real * scale
    near = np.all(np.abs(coeffs - np.rint(coeffs)) < 1e-6, axis=1)
    for row in coeffs[near]:
        cand = CycloNum(field(n), [int(v) for v in np.rint(row)], scale)
        if cand * cand == r and cand.approx().real > 0:
            return cand
    return None


# -- SurdNum ------------------------------------------------------------------------


class SurdNum:
    """``coeff * sqrt(radicand)`` with a totally positive real radicand."""

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff: CycloNum | int, radicand: CycloNum | int = 1, n: int = N):
        if not isinstance(coeff, CycloNum):
            coeff = rational(coeff, n)
        if not isinstance(radicand, CycloNum):
            radicand = rational(radicand, coeff.conductor)
        if radicand.is_zero():
            raise ValueError("radicand must be nonzero")
        if radicand != radicand.conj() or radicand.approx().real <= 0:
            raise ValueError("radicand must be real with positive standard embedding")
        root = sqrt_in_field(radicand)
        if root is not None:
            coeff, radicand = coeff * root, rational(1, coeff.conductor)
        self.coeff = coeff
        self.radicand = radicand

    @classmethod
    def sqrt(cls, r: CycloNum | int, n: int = N) -> SurdNum:
        return cls(1, r, n)

    @property
    def conductor(self) -> int:
        return self.coeff.conductor

    def is_cyclotomic(self) -> bool:
        return self.radicand == 1

    def square(self) -> CycloNum:
        return self.coeff * self.coeff * self.radicand

    def approx(self) -> complex:
        return self.coeff.approx() * math.sqrt(self.radicand.approx().real)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def _lift(self, other) -> SurdNum:
        return other if isinstance(other, SurdNum) else SurdNum(other, 1, self.conductor)

    def __mul__(self, other) -> SurdNum:
        other = self._lift(other)
        return SurdNum(self.coeff * other.coeff, self.radicand * other.radicand)

    __rmul__ = __mul__

    def inverse(self) -> SurdNum:
        if self.is_zero():
            raise ZeroDivisionError("SurdNum division by zero")
        return SurdNum((self.coeff * self.radicand).inv(), self.radicand)

    def __truediv__(self, other) -> SurdNum:
        return self * self._lift(other).inverse()

    def __neg__(self) -> SurdNum:
        return SurdNum(-self.coeff, self.radicand)

    def __add__(self, other) -> SurdNum:
        other = self._lift(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.radicand == other.radicand:
            return SurdNum(self.coeff + other.coeff, self.radicand)
        ratio = sqrt_in_field(other.radicand / self.radicand)
        if ratio is None:
            raise ArithmeticError("cannot add surds with incommensurable radicands")
        return SurdNum(self.coeff + other.coeff * ratio, self.radicand)

    __radd__ = __add__

    def __sub__(self, other) -> SurdNum:
        return self + (-self._lift(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycloNum)):
            other = self._lift(other)
        if not isinstance(other, SurdNum):
            return NotImplemented
        if self.square() != other.square():
            return False
        if self.is_zero():
            return True
        # equal squares: the values agree up to sign
        return abs(self.approx() - other.approx()) < 1e-9 * max(1.0, abs(self.approx()))

    __hash__ = None

    def __str__(self):
        if self.is_cyclotomic():
            return str(self.coeff)
        return f"({self.coeff}) * sqrt({self.radicand})"

    def __repr__(self):
        return f"SurdNum({self})"


# -- quantum integers and symbols -----------------------------------------------------


def kl_variable(n: int = N) -> CycloNum:
    """A = zeta_72^21 = i exp(i pi / 12)."""
    if n % 24:
        raise ValueError("the level-4 variable needs a conductor divisible by 24")
    return root_of_unity(n, 21 * n // 72) if n % 72 == 0 else root_of_unity(n, 7 * n // 24)


@lru_cache(maxsize=None)
def qint(k: int, n: int = N) -> CycloNum:
    """[k] = (A^2k - A^-2k) / (A^2 - A^-2)."""
    a = kl_variable(n)
    a2 = a * a
    return (a2 ** k - a2 ** (-k)) / (a2 - a2.inv())


@lru_cache(maxsize=None)
def qfact(k: int, n: int = N) -> CycloNum:
    out = rational(1, n)
    for j in range(1, k + 1):
        out = out * qint(j, n)
    return out


def _check_label(*labels: int):
    for x in labels:
        if not isinstance(x, int) or not 0 <= x <= LEVEL:
            raise ValueError(f"label {x!r} is outside 0..{LEVEL}")


def is_admissible(a: int, b: int, c: int) -> bool:
    if not all(isinstance(x, int) and 0 <= x <= LEVEL for x in (a, b, c)):
        return False
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * LEVEL


def _require(a: int, b: int, c: int):
    _check_label(a, b, c)
    if not is_admissible(a, b, c):
        raise ValueError(f"({a},{b},{c}) is not an admissible triple at level {LEVEL}")


@lru_cache(maxsize=None)
def qdim_exact(a: int, n: int = N) -> CycloNum:
    _check_label(a)
    return (-1) ** a * qint(a + 1, n)


def qdim(a: int, n: int = N) -> SurdNum:
    return SurdNum(qdim_exact(a, n), 1, n)


@lru_cache(maxsize=None)
def theta_exact(a: int, b: int, c: int, n: int = N) -> CycloNum:
    _require(a, b, c)
    m, p, q = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    num = qfact(m + p + q + 1, n) * qfact(m, n) * qfact(p, n) * qfact(q, n)
    den = qfact(m + p, n) * qfact(p + q, n) * qfact(m + q, n)
    return (-1) ** (m + p + q) * num / den


def theta(a: int, b: int, c: int, n: int = N) -> SurdNum:
    return SurdNum(theta_exact(a, b, c, n), 1, n)


def theta_u(a: int, b: int, c: int, n: int = N) -> SurdNum:
    _require(a, b, c)
    return SurdNum.sqrt(qdim_exact(a, n) * qdim_exact(b, n) * qdim_exact(c, n), n)


def _faces(G, B, E, C, D, F):
    return ((G, D, E), (B, C, E), (G, B, F), (C, D, F))


@lru_cache(maxsize=None)
def tet_exact(G: int, B: int, E: int, C: int, D: int, F: int, n: int = N) -> CycloNum:
    """Tetrahedral net with faces (G,D,E), (B,C,E), (G,B,F), (C,D,F)."""
    faces = _faces(G, B, E, C, D, F)
    for f in faces:
        _require(*f)
    a = [sum(f) // 2 for f in faces]
    b = [(B + D + E + F) // 2, (G + C + E + F) // 2, (G + B + C + D) // 2]
    inner = rational(1, n)
    for ai in a:
        for bj in b:
            inner = inner * qfact(bj - ai, n)
    edges = rational(1, n)
    for x in (G, B, E, C, D, F):
        edges = edges * qfact(x, n)
    total = rational(0, n)
    for s in range(max(a), min(b) + 1):
        den = rational(1, n)
        for ai in a:
            den = den * qfact(s - ai, n)
        for bj in b:
            den = den * qfact(bj - s, n)
        total = total + (-1) ** s * qfact(s + 1, n) / den
    return inner / edges * total


def tet(G: int, B: int, E: int, C: int, D: int, F: int, n: int = N) -> SurdNum:
    return SurdNum(tet_exact(G, B, E, C, D, F, n), 1, n)


def six_j_admissible(G, B, E, C, D, F) -> bool:
    return all(is_admissible(*f) for f in _faces(G, B, E, C, D, F))


def six_j_unitary(G: int, B: int, E: int, C: int, D: int, F: int, n: int = N) -> SurdNum:
    """Unitary 6j symbol {G B E; C D F}^u."""
    top = tet_exact(G, B, E, C, D, F, n)
    thetas = [theta_exact(*f, n) for f in _faces(G, B, E, C, D, F)]
    num = SurdNum(top, 1, n) * SurdNum.sqrt(qdim_exact(E, n), n) * SurdNum.sqrt(qdim_exact(F, n), n)
    den = SurdNum(1, 1, n)
    for t in thetas:
        den = den * SurdNum.sqrt(t, n)
    return num / den


def f_matrix(G: int, B: int, C: int, D: int, n: int = N) -> tuple[list[int], list[int], list[list[SurdNum]]]:
    """F-move matrix rows E, columns F for fixed external labels."""
    rows = [E for E in LABELS if is_admissible(G, D, E) and is_admissible(B, C, E)]
    cols = [F for F in LABELS if is_admissible(G, B, F) and is_admissible(C, D, F)]
    mat = [[six_j_unitary(G, B, E, C, D, F, n) for F in cols] for E in rows]
    return rows, cols, mat


def f_matrix_is_orthogonal(G: int, B: int, C: int, D: int, n: int = N) -> bool:
    """Exact check that the real F-move matrix has orthonormal rows and is square."""
    rows, cols, mat = f_matrix(G, B, C, D, n)
    if len(rows) != len(cols):
        return False
    for i, j in itertools.product(range(len(rows)), repeat=2):
        acc = SurdNum(0, 1, n)
        for k in range(len(cols)):
            acc = acc + mat[i][k] * mat[j][k]
        if acc != (1 if i == j else 0):
            return False
    return True


def external_configurations() -> list[tuple[int, int, int, int]]:
    out = []
    for G, B, C, D in itertools.product(LABELS, repeat=4):
        if f_matrix(G, B, C, D)[0]:
            out.append((G, B, C, D))
    return out


# -- the fusion pipeline ---------------------------------------------------------------

# the charge k on the edge labelled 0 fuses to i = 4 - k
PAIRS = ((0, 4), (2, 2), (4, 0))


def fusion_steps(k: int, n: int = N) -> dict[str, SurdNum]:
    """The factors whose product is the coefficient mapping |k> to |4-k>."""
    i = LEVEL - k
    first = six_j_unitary(k, 4, 0, 4, k, i, n)
    outer = six_j_unitary(2, i, k, 4, 2, 2, n)
    loop = theta_u(4, 2, 2, n) / qdim(2, n)
    return {"edge0": first, "outer_left": outer, "outer_right": outer, "loop_left": loop, "loop_right": loop}


def fusion_coefficient(k: int, n: int = N) -> SurdNum:
    out = SurdNum(1, 1, n)
    for v in fusion_steps(k, n).values():
        out = out * v
    return out


def derive_fusion_matrix(n: int = N) -> Mat3:
    """Basis |0>, |2>, |4>; entry (row of 4-k, column of k) is the coefficient for k."""
    pos = {0: 0, 2: 1, 4: 2}
    entries = [[rational(0, n)] * 3 for _ in range(3)]
    for k, i in PAIRS:
        c = fusion_coefficient(k, n)
        if not c.is_cyclotomic():
            raise ArithmeticError(f"coefficient for k={k} is not cyclotomic: {c!r}")
        entries[pos[i]][pos[k]] = c.coeff
    return Mat3.from_entries(entries, n)


def su3_normalize(m: Mat3) -> Mat3:
    """Rescale by -exp(2 i pi / 3) and insist the result has determinant 1."""
    out = m.scale(-root_of_unity(m.conductor, m.conductor // 3))
    if out.det() != 1:
        raise ValueError("the rescaled matrix does not have determinant 1")
    return out


def symbol_table(n: int = N) -> list[tuple[str, SurdNum]]:
    """Every level-4 quantum dimension, theta, Tet and unitary 6j value."""
    out: list[tuple[str, SurdNum]] = []
    for a in LABELS:
        out.append((f"Delta({a})", qdim(a, n)))
    for a, b, c in itertools.product(LABELS, repeat=3):
        if is_admissible(a, b, c) and a <= b <= c:
            out.append((f"theta({a},{b},{c})", theta(a, b, c, n)))
    for labels in itertools.product(LABELS, repeat=6):
        if six_j_admissible(*labels):
            G, B, E, C, D, F = labels
            out.append((f"tet[{G} {B} {E}; {C} {D} {F}]", tet(*labels, n=n)))
            out.append((f"6j[{G} {B} {E}; {C} {D} {F}]", six_j_unitary(*labels, n=n)))
    return out
