"""Named matrices and generator sets.

Everything is built exactly in Q(zeta_72) unless a different conductor is
requested.  Scalar shorthands used below:

    e(k, m)  = exp(2 pi i k / m)
    omega    = e(1, 3)
    eps      = e(2, 9)     (= exp(4 i pi / 9))
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .cyclo import DEFAULT_CONDUCTOR, CycloNum, imag_unit, rational, root_in, sqrt2, sqrt3
from .mat3 import Mat3, is_special_unitary

N = DEFAULT_CONDUCTOR


def e(k: int, m: int, n: int = N) -> CycloNum:
    return root_in(n, m, k)


def _half(n: int = N) -> CycloNum:
    return rational(1, n) / 2


def _inv_sqrt2(n: int = N) -> CycloNum:
    return sqrt2(n) / 2


@dataclass(frozen=True)
class NamedGeneratorSet:
    name: str
    generators: tuple[Mat3, ...]
    provenance: str
    labels: tuple[str, ...] = dc_field(default=())

    def __post_init__(self):
        for g in self.generators:
            if not is_special_unitary(g):
                raise ValueError(f"{self.name}: generator is not in SU(3)")


@dataclass(frozen=True)
class SeriesParams:
    n: int
    a: int
    b: int
    d: int | None = None
    r: int | None = None
    s: int | None = None

    def __post_init__(self):
        if self.n < 1 or (self.d is not None and self.d < 1):
            raise ValueError("n and d must be positive")


# -- braid generators and FUM ----------------------------------------------------


@lru_cache(maxsize=None)
def braid_g1(n: int = N) -> Mat3:
    return Mat3.diag(e(7, 18, n), -e(4, 18, n), -e(7, 18, n))


@lru_cache(maxsize=None)
def braid_g2(n: int = N) -> Mat3:
    h, r = _half(n), _inv_sqrt2(n)
    a, b = e(4, 18, n), e(7, 18, n)
    z = rational(0, n)
    return Mat3.from_entries([
        [-h * a, r * b, h * a],
        [r * b, z, r * b],
        [h * a, r * b, -h * a],
    ])


@lru_cache(maxsize=None)
def fum(n: int = N) -> Mat3:
    w = -e(1, 3, n)
    return Mat3.antidiag(w, w, w)


# -- cross matrices and the S3 complement--------------------------------------------------------


@lru_cache(maxsize=None)
def matrix_A(n: int = N) -> Mat3:
    h, p, q = _half(n), e(5, 18, n), e(1, 6, n)
    z = rational(0, n)
    d = h * p * (q - 1)
    o = h * p * (q + 1)
    return Mat3.from_entries([[d, z, o], [z, -p, z], [o, z, d]])


@lru_cache(maxsize=None)
def matrix_B(n: int = N) -> Mat3:
    h, w = _half(n), e(1, 3, n)
    z = rational(0, n)
    d = h * (w + 1)
    o = h * (w - 1)
    return Mat3.from_entries([[d, z, o], [z, -e(1, 6, n), z], [o, z, d]])


@lru_cache(maxsize=None)
def h_matrix(i: int, n: int = N) -> Mat3:
    if i not in range(5):
        raise ValueError(f"H index must be in 0..4, got {i}")
    if i == 0:
        return Mat3.diag(rational(-1, n), rational(-1, n), rational(1, n))
    h, r = _half(n), _inv_sqrt2(n)
    z = rational(0, n)
    table = {
        1: [[-h, -r, -h], [-r, z, r], [-h, r, -h]],
        2: [[-h, -r, h], [-r, z, -r], [h, -r, -h]],
        3: [[h, r, -h], [r, z, r], [h, -r, -h]],
        4: [[h, r, h], [r, z, -r], [-h, r, -h]],
    }
    return Mat3.from_entries(table[i])


def h_group(n: int = N) -> list[Mat3]:
    return [Mat3.identity(n)] + [h_matrix(i, n) for i in range(5)]


@lru_cache(maxsize=None)
def klein_V(n: int = N) -> tuple[Mat3, ...]:
    f3 = fum(n) ** 3
    g1 = braid_g1(n)
    t = g1 @ f3 @ g1.inverse()
    return (Mat3.identity(n), f3, t, t @ f3)


@lru_cache(maxsize=None)
def c18(n: int = N) -> Mat3:
    return matrix_A(n) @ fum(n) ** 3


@lru_cache(maxsize=None)
def c6(n: int = N) -> Mat3:
    return matrix_B(n) @ klein_V(n)[2]


# -- C/D series generators ------------------------------------------


def _check_embeds(m: int, n: int):
    if n % m:
        raise ValueError(
            f"e^(2 pi i/{m}) is not in Q(zeta_{n}); rerun with a conductor divisible by {m}"
        )


def F(nn: int, a: int, b: int, n: int = N) -> Mat3:
    """diag(eta^a, eta^b, eta^(-a-b)) with eta = exp(2 pi i / nn)."""
    _check_embeds(nn, n)
    return Mat3.diag(e(a, nn, n), e(b, nn, n), e(-a - b, nn, n))


def F_prime(nn: int = 18, a: int = 1, b: int = 1, n: int = N) -> Mat3:
    return E(n) @ F(nn, a, b, n) @ E(n).inverse()


def F_second(nn: int = 18, a: int = 1, b: int = 1, n: int = N) -> Mat3:
    return E(n) @ F_prime(nn, a, b, n) @ E(n).inverse()


@lru_cache(maxsize=None)
def E(n: int = N) -> Mat3:
    return Mat3.from_entries([[0, 1, 0], [0, 0, 1], [1, 0, 0]], n)


@lru_cache(maxsize=None)
def Btilde(n: int = N) -> Mat3:
    return Mat3.from_entries([[-1, 0, 0], [0, 0, -1], [0, -1, 0]], n)


def Gtilde(d: int, r: int, s: int, n: int = N) -> Mat3:
    _check_embeds(d, n)
    z = rational(0, n)
    return Mat3.from_entries([
        [e(r, d, n), z, z],
        [z, z, e(s, d, n)],
        [z, -e(-r - s, d, n), z],
    ])


def W(i: int, n: int = N) -> Mat3:
    """Diagonal Klein group: W1 = I, W2, W3, W4."""
    signs = {1: (1, 1, 1), 2: (-1, 1, -1), 3: (1, -1, -1), 4: (-1, -1, 1)}[i]
    return Mat3.diag(*(rational(x, n) for x in signs))


def klein_VD(n: int = N) -> tuple[Mat3, ...]:
    return tuple(W(i, n) for i in (1, 2, 3, 4))


def c_group(nn: int, a: int, b: int, n: int = N) -> NamedGeneratorSet:
    return NamedGeneratorSet(
        f"c{nn}-{a}-{b}", (E(n), F(nn, a, b, n)), "series (C): <E, F(n,a,b)>", ("E", "F")
    )


def d_group(nn: int, a: int, b: int, d: int, r: int, s: int, n: int = N) -> NamedGeneratorSet:
    return NamedGeneratorSet(
        f"d{nn}-{a}-{b}-{d}-{r}-{s}",
        (E(n), F(nn, a, b, n), Gtilde(d, r, s, n)),
        "series (D): <E, F(n,a,b), Gtilde(d,r,s)>",
        ("E", "F", "G"),
    )


# -- the exceptional group and the conjugator------------------------------------------------------------


@lru_cache(maxsize=None)
def sigma_D(n: int = N) -> Mat3:
    eps, w = e(2, 9, n), e(1, 3, n)
    return Mat3.diag(eps, eps, eps * w)


@lru_cache(maxsize=None)
def sigma_V(n: int = N) -> Mat3:
    w = e(1, 3, n)
    w2 = w * w
    # i*sqrt(3) = omega - omega^2
    c = (imag_unit(n) * sqrt3(n)).inv()
    assert c == (w - w2).inv()
    return Mat3.from_entries([[1, 1, 1], [1, w, w2], [1, w2, w]], n).scale(c)


def sigma216x3(n: int = N) -> NamedGeneratorSet:
    return NamedGeneratorSet(
        "sigma216x3", (sigma_D(n), sigma_V(n)), "exceptional Sigma(216x3) = <D, V>", ("D", "V")
    )


@lru_cache(maxsize=None)
def conjugator_O(n: int = N) -> Mat3:
    r = _inv_sqrt2(n)
    z = rational(0, n)
    return Mat3.from_entries([[r, z, r], [z, rational(1, n), z], [-r, z, r]])


# -- triple graph --------------------------------------------------------------

_MOVES = ((1, 1, -2), (1, -2, 1), (-2, 1, 1), (-1, -1, 2), (-1, 2, -1), (2, -1, -1))


def triple_graph(nn: int, start: tuple[int, int, int]) -> set[tuple[int, int, int]]:
    """Breadth-first closure of ``start`` under the six (1,1,-2)-type moves, mod nn."""
    if sum(start) % nn:
        raise ValueError(f"start triple {start} does not sum to 0 mod {nn}")
    first = tuple(k % nn for k in start)
    seen = {first}
    queue = deque([first])
    while queue:
        t = queue.popleft()
        for mv in _MOVES:
            u = tuple((x + y) % nn for x, y in zip(t, mv))
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def triple_graph_closure(nn: int, start: tuple[int, int, int], n: int = N) -> set[Mat3]:
    _check_embeds(nn, n)
    return {Mat3.diag(*(e(k, nn, n) for k in t)) for t in triple_graph(nn, start)}


# -- registry ------------------------------------------------------------------


def fr162(n: int = N) -> NamedGeneratorSet:
    return NamedGeneratorSet("fr162", (braid_g1(n), braid_g2(n)), "Fr(162) = <G1, G2>", ("G1", "G2"))


def fr162x4(n: int = N) -> NamedGeneratorSet:
    return NamedGeneratorSet(
        "fr162x4", (braid_g1(n), braid_g2(n), fum(n)), "Fr(162x4) = <G1, G2, FUM>", ("G1", "G2", "FUM")
    )


STANDARD_NAMES = (
    "fr162",
    "fr162x4",
    "d9-1-1-2-1-1",
    "d18-1-1-2-1-1",
    "c9-1-1",
    "sigma216x3",
)

_C_RE = re.compile(r"^c(\d+)-(-?\d+)-(-?\d+)$")
_D_RE = re.compile(r"^d(\d+)-(-?\d+)-(-?\d+)-(\d+)-(-?\d+)-(-?\d+)$")


def get(name: str, n: int = N) -> NamedGeneratorSet:
    """Look up a generator set by name; c/d series names are parsed."""
    if name == "fr162":
        return fr162(n)
    if name == "fr162x4":
        return fr162x4(n)
    if name == "sigma216x3":
        return sigma216x3(n)
    if m := _C_RE.match(name):
        return c_group(*map(int, m.groups()), n=n)
    if m := _D_RE.match(name):
        return d_group(*map(int, m.groups()), n=n)
    raise KeyError(name)


def named_sets(n: int = N) -> list[NamedGeneratorSet]:
    return [get(name, n) for name in STANDARD_NAMES]
