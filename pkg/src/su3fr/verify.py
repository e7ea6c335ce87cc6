"""Executable verification suite.

Each item is a named check over the catalog groups.  Item ids follow the
numbering of the statements they check (``thm1.order``, ``eq21``,
``lemma11.spectrum`` ...).  Items run in registry order and every item
reports exactly once.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import catalog as C
from . import engine as En
from . import fp
from . import fusion as Fu
from .cyclo import DEFAULT_CONDUCTOR, rational
from .mat3 import Mat3, element_order, is_cross


class UnknownSelector(ValueError):
    pass


@dataclass
class Item:
    id: str
    status: str
    detail: str
    elapsed: float  # milliseconds


@dataclass
class Report:
    items: list[Item] = field(default_factory=list)
    cap_exceeded: bool = False

    @property
    def summary(self) -> dict[str, int]:
        passed = sum(it.status == "pass" for it in self.items)
        return {"total": len(self.items), "pass": passed, "fail": len(self.items) - passed}

    @property
    def ok(self) -> bool:
        return all(it.status == "pass" for it in self.items)

    def lines(self) -> list[str]:
        return [f"{it.id}\t{it.status}\t{it.detail}" for it in self.items]

    def to_json(self) -> dict:
        return {"items": [asdict(it) for it in self.items], "summary": self.summary}


Check = Callable[["Context"], "tuple[bool, str] | bool"]
REGISTRY: list[tuple[str, Check]] = []


def check(item_id: str):
    def deco(fn: Check) -> Check:
        if any(i == item_id for i, _ in REGISTRY):
            raise ValueError(f"duplicate suite id {item_id}")
        REGISTRY.append((item_id, fn))
        return fn
    return deco


def _family(item_id: str) -> str:
    return item_id.split(".", 1)[0]


def select(selector: str) -> list[tuple[str, Check]]:
    """Items matching ``all``, a family (``thm14``) or a single id (``thm1.order``)."""
    if selector == "all":
        return list(REGISTRY)
    chosen = [(i, fn) for i, fn in REGISTRY if i == selector or _family(i) == selector]
    if not chosen:
        raise UnknownSelector(f"unknown suite selector {selector!r}")
    return chosen


def families() -> list[str]:
    return list(dict.fromkeys(_family(i) for i, _ in REGISTRY))


def run(selector: str = "all", cap: int = 10000, n: int = DEFAULT_CONDUCTOR) -> Report:
    items = select(selector)
    ctx = Context(n=n, cap=cap)
    report = Report()
    for item_id, fn in items:
        t0 = time.perf_counter()
        try:
            res = fn(ctx)
            ok, detail = res if isinstance(res, tuple) else (bool(res), "")
            status = "pass" if ok else "fail"
        except En.ClosureCapExceeded as exc:
            status, detail = "fail", str(exc)
            report.cap_exceeded = True
        except Exception as exc:  # a crashing check is a failing check
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        ms = (time.perf_counter() - t0) * 1000.0
        report.items.append(Item(item_id, status, detail or "ok", round(ms, 1)))
    return report


class Context:
    """Lazily built matrices and groups shared by the checks of one run."""

    def __init__(self, n: int = DEFAULT_CONDUCTOR, cap: int = 10000):
        self.n = n
        self.cap = cap
        self.I = Mat3.identity(n)
        self.G1, self.G2, self.FUM = C.braid_g1(n), C.braid_g2(n), C.fum(n)
        self.A, self.B = C.matrix_A(n), C.matrix_B(n)
        self.H = [C.h_matrix(i, n) for i in range(5)]
        self.F3 = self.FUM ** 3
        self.T = C.klein_V(n)[2]
        self.c18, self.c6 = C.c18(n), C.c6(n)
        self.F = C.F(18, 1, 1, n)
        self.Fp, self.Fs = C.F_prime(n=n), C.F_second(n=n)
        self.E, self.Bt = C.E(n), C.Btilde(n)
        self.W = {i: C.W(i, n) for i in (1, 2, 3, 4)}
        self.O = C.conjugator_O(n)

    def gen(self, mats, name="") -> En.MatrixGroup:
        return En.generate(mats, cap=self.cap, name=name, n=self.n)

    def named(self, name: str) -> En.MatrixGroup:
        return self.gen(C.get(name, self.n).generators, name)

    @cached_property
    def fr162(self):
        return self.named("fr162")

    @cached_property
    def fr(self):
        return self.named("fr162x4")

    @cached_property
    def d9(self):
        return self.named("d9-1-1-2-1-1")

    @cached_property
    def d18(self):
        return self.named("d18-1-1-2-1-1")

    @cached_property
    def sigma(self):
        return self.named("sigma216x3")

    @cached_property
    def X(self) -> Mat3:
        # F (F'')^-1, the order-6 triple (3, 0, -3)
        return self.F @ self.Fs.dagger()

    @cached_property
    def fB(self) -> Mat3:
        return self.F ** 12 @ self.X ** 2

    @cached_property
    def calF(self) -> list[Mat3]:
        """The order-27 diagonal group <F^2> x <(F F''^-1)^2>."""
        return self.gen([self.F ** 2, self.X ** 2]).elements

    @cached_property
    def gC18(self) -> Mat3:
        E, F = self.E, self.F
        return F ** 2 @ (E @ E @ F @ E @ F.dagger()) ** 3

    @cached_property
    def gC6(self) -> Mat3:
        E, g = self.E, self.gC18
        return E @ g @ E.dagger() ** 2 @ g ** 8 @ E.dagger() ** 2 @ g ** 3

    def sub(self, G, mats) -> En.SubgroupHandle:
        return En.subgroup(G, mats)

    @cached_property
    def N(self):
        return self.sub(self.fr, [self.A, self.B])

    @cached_property
    def V(self):
        return self.sub(self.fr, C.klein_V(self.n))

    @cached_property
    def S3F(self):
        return self.sub(self.fr, [self.A, self.B, self.H[3]])

    @cached_property
    def S3D(self):
        return self.sub(self.d18, [self.F ** 2, self.X ** 2, self.E])

    @cached_property
    def VD(self):
        return self.sub(self.d18, C.klein_VD(self.n))

    @cached_property
    def S(self):
        return self.gen([self.A, self.B, self.H[2]], "S")


def inv(m: Mat3) -> Mat3:
    return m.dagger()


def _sets_equal(xs, ys) -> bool:
    xs, ys = list(xs), list(ys)
    return len(set(xs)) == len(xs) and set(xs) == set(ys)


def _handle_set(H: En.SubgroupHandle) -> set[Mat3]:
    return set(H.elements())


def _spectrum_text(spec: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(spec.items()))


def _ad(n, a, b, c) -> Mat3:
    return Mat3.antidiag(rational(a, n), rational(b, n), rational(c, n))


def _dg(n, a, b, c) -> Mat3:
    return Mat3.diag(rational(a, n), rational(b, n), rational(c, n))


# -- thm1: structure of the order-648 group -------------------------------------------------------------------


@check("thm1.order")
def _(c: Context):
    return c.fr.order == 648, f"|<G1,G2,FUM>| = {c.fr.order}"


@check("thm1.fr162-order")
def _(c: Context):
    return c.fr162.order == 162, f"|<G1,G2>| = {c.fr162.order}"


@check("thm1.extension")
def _(c: Context):
    H = c.sub(c.fr, c.fr162.generators)
    ok = En.is_subset(c.fr162, c.fr) and c.fr.order == 4 * H.order
    normal = "normal" if En.is_normal(H) else "self-normalizing" if En.normalizer(H) == H else "not normal"
    return ok, f"Fr(162) is a subgroup of index 4 ({normal})"


@check("thm1.factorization")
def _(c: Context):
    AB = [c.A ** i @ c.B ** j for i in range(9) for j in range(3)]
    ok = En.unique_factorization_check(c.fr, [AB, C.klein_V(c.n), C.h_group(c.n)])
    return ok, "A^i B^j T H: 27*4*6 = 648 distinct products"


@check("thm1.kernel")
def _(c: Context):
    K = c.sub(c.fr, [c.c18, c.c6])
    Hs = c.sub(c.fr, C.h_group(c.n))
    spec = En.order_spectrum(K)
    z18z6 = _z18xz6_spectrum()
    ok = (K.order == 108 and En.is_normal(K) and spec == z18z6 and Hs.order == 6
          and K.member_set & Hs.member_set == {0}
          and all(c.fr.mul(x, y) == c.fr.mul(y, x) for x in K.members for y in K.members))
    return ok, f"kernel <C18,C6> abelian normal of order {K.order}, spectrum {_spectrum_text(spec)}"


def _z18xz6_spectrum() -> dict[int, int]:
    out: dict[int, int] = {}
    for a in range(18):
        for b in range(6):
            o = math.lcm(18 // math.gcd(a, 18), 6 // math.gcd(b, 6))
            out[o] = out.get(o, 0) + 1
    return out


@check("thm1.complement")
def _(c: Context):
    Hs = c.sub(c.fr, C.h_group(c.n))
    spec = En.order_spectrum(Hs)
    return spec == {1: 1, 2: 3, 3: 2} and len(Hs.members) == 6, f"H = S3, spectrum {_spectrum_text(spec)}"


@check("thm1.klein")
def _(c: Context):
    ok = (element_order(c.FUM) == 6 and c.V.order == 4 and En.is_normal(c.V)
          and all(element_order(v) == 2 for v in C.klein_V(c.n)[1:]))
    return ok, "V = {I, FUM^3, G1 FUM^3 G1^-1, product} is a normal Klein group"


@check("thm1.intersections")
def _(c: Context):
    NV = c.sub(c.fr, [c.A, c.B] + list(C.klein_V(c.n)))
    Hs = c.sub(c.fr, C.h_group(c.n))
    commute = all(x @ v == v @ x for x in (c.A, c.B) for v in C.klein_V(c.n))
    ok = (En.is_normal(c.N) and c.N.member_set & c.V.member_set == {0}
          and NV.member_set & Hs.member_set == {0} and commute)
    return ok, "<A,B> normal, <A,B> n V = 1, (<A,B>.V) n H = 1, A and B commute with V"


@check("thm1.fum-cubed")
def _(c: Context):
    return En.set_equal(c.gen([c.G1, c.G2, c.F3]), c.fr), "<G1, G2, FUM> = <G1, G2, FUM^3>"


@check("thm1.c6-forms")
def _(c: Context):
    H1, c6, c18 = c.H[1], c.c6, c.c18
    lhs = H1 @ c6 @ inv(H1)
    return lhs == inv(c6) @ c18 ** 6 and lhs == c6 ** 5 @ c18 ** 6, "H1 C6 H1^-1 = C6^-1 C18^6 = C6^5 C18^6"


@check("thm1.presentation")
def _(c: Context):
    bad = fp.check_presentation(fp.fr648_assignment(c.n), fp.fr648_presentation())
    return not bad, f"failing relators: {bad}" if bad else "all relators hold on C6, C18, H1, H3"


@check("thm1.todd-coxeter")
def _(c: Context):
    k = fp.todd_coxeter(fp.fr648_presentation())
    return k == 648, f"coset enumeration order {k}"


# -- eq1-eq18: braid and diagonal relations ---------------------------------------------


def _eqs_sec1(c: Context) -> dict[int, bool]:
    G1, G2, FUM, A, B, T, F3 = c.G1, c.G2, c.FUM, c.A, c.B, c.T, c.F3
    return {
        1: G1 @ G2 ** 2 @ inv(G1) == A,
        2: G1 @ inv(G2) ** 2 @ G1 == B,
        3: G2 @ T @ inv(G2) == F3 @ T,
        4: inv(G2) @ T @ G2 == F3 @ T,
        5: FUM @ T @ inv(FUM) == T,
        6: inv(FUM) @ T @ FUM == T,
        7: G2 @ F3 @ T @ inv(G2) == T,
        8: inv(G2) @ F3 @ T @ G2 == T,
        9: FUM ** 4 @ T @ inv(FUM) == F3 @ T,
        10: FUM ** 2 @ T @ FUM == F3 @ T,
        11: FUM @ A @ inv(FUM) == A,
        12: FUM @ B @ inv(FUM) == B,
        13: FUM == A ** 3 @ F3,
    }


for _k in range(1, 14):
    check(f"eq{_k}")(lambda c, k=_k: _eqs_sec1(c)[k])


@check("eq14")
def _(c: Context):
    ok = c.E @ c.Bt == c.F3 and En.set_equal(c.gen([c.G1, c.G2, c.E @ c.Bt]), c.fr)
    return ok, "E Bt = FUM^3 and <G1, G2, E Bt> = Fr(162x4)"


@check("eq15")
def _(c: Context):
    return En.set_equal(c.gen([c.E, c.Bt, c.F]), c.d18), "<E, Bt, F> = D(18,1,1;2,1,1)"


@check("eq16")
def _(c: Context):
    return c.Fp == inv(c.F @ c.Fs)


@check("eq17")
def _(c: Context):
    return c.Fs == inv(c.F @ c.Fp)


@check("eq18")
def _(c: Context):
    return c.Fp == inv(c.F) ** 2 @ c.F @ inv(c.Fs)


# -- eq19-eq31: conjugation relations of the presentation ----------------------


def _eqs_pres(c: Context) -> dict[int, bool]:
    n, H1, H3, c18, c6, FUM = c.n, c.H[1], c.H[3], c.c18, c.c6, c.FUM
    w = C.e(-1, 3, n)
    lhs27 = (H1 @ c18 @ inv(H1)) @ (FUM @ c18 ** 4 @ c6 ** 5)
    return {
        19: H3 @ c18 @ inv(H3) == c18 ** 10 @ c6 ** 4 @ _ad(n, -1, -1, -1) @ _dg(n, -1, 1, -1),
        20: c6 ** 3 == _ad(n, 1, -1, 1),
        21: H3 @ c18 @ inv(H3) == c18 ** 10 @ c6 ** 7,
        22: c18 ** 2 == c.A ** 2,
        23: c18 ** 3 == FUM,
        24: H1 @ c6 @ inv(H1) == c6 ** 2 @ FUM ** 2 @ _ad(n, 1, -1, 1),
        25: H1 @ c6 @ inv(H1) == c6 ** 5 @ c18 ** 6,
        26: ((H3 @ c6 @ inv(H3)) @ (FUM @ c18 ** 6 @ c6 ** 5) == Mat3.diag(w, w, w)
             and Mat3.diag(w, w, w) == FUM ** 2),
        27: lhs27 == Mat3.diag(C.e(2, 9, n), -C.e(1, 18, n), C.e(2, 9, n)),
        29: H3 @ c6 @ inv(H3) == c6 ** -5 @ c18 ** -3,
        30: lhs27 == c6 ** 2 @ c18 ** 8,
        31: H1 @ c18 @ inv(H1) == c6 ** 3 @ c18,
    }


for _k in (19, 20, 21, 22, 23, 24, 25, 26, 27):
    check(f"eq{_k}")(lambda c, k=_k: _eqs_pres(c)[k])


@check("eq28")
def _(c: Context):
    # degree <= 2 in each variable, so agreement on a 5x5x5 grid proves the identity
    n = c.n
    for a, b, cc in itertools.product(range(-2, 3), repeat=3):
        lhs = Mat3.from_entries([[a, 0, b], [0, cc, 0], [b, 0, a]], n) @ \
            Mat3.from_entries([[a, 0, -b], [0, cc, 0], [-b, 0, a]], n)
        if lhs != _dg(n, a * a - b * b, cc * cc, a * a - b * b):
            return False, f"fails at a={a}, b={b}, c={cc}"
    return True, "polynomial identity checked on a full interpolation grid"


for _k in (29, 30, 31):
    check(f"eq{_k}")(lambda c, k=_k: _eqs_pres(c)[k])


# -- 3-Sylows of the order-162 groups ------------------------------------------


@check("eq32")
def _(c: Context):
    N = c.sub(c.fr162, [c.A, c.B]).elements()
    cosets = [set(N), {x @ c.H[3] for x in N}, {x @ c.H[3] @ c.H[3] for x in N}]
    syl = En.sylow(c.fr162, 3)
    disjoint = sum(map(len, cosets)) == 81 and len(set().union(*cosets)) == 81
    ok = len(syl) == 1 and disjoint and set().union(*cosets) == _handle_set(syl[0])
    return ok, "S3(F) = N u N H3 u N H3^2 (disjoint)"


@check("eq33")
def _(c: Context):
    calF = c.calF
    cosets = [set(calF), {x @ c.E for x in calF}, {x @ c.E @ c.E for x in calF}]
    syl = En.sylow(c.d9, 3)
    union = set().union(*cosets)
    ok = len(syl) == 1 and len(union) == 81 and union == _handle_set(syl[0])
    return ok, "S3(D) = F u F E u F E^2 (disjoint)"


@check("thm2")
def _(c: Context):
    return _thm6_map(c)


@check("thm3")
def _(c: Context):
    syl = En.sylow(c.fr162, 3)
    return len(syl) == 1 and syl[0].order == 81, f"{len(syl)} 3-Sylow(s) of order {syl[0].order}"


@check("lemma1")
def _(c: Context):
    ok = is_cross(c.A) and is_cross(c.B) and not is_cross(c.H[3])
    return ok, "A and B are cross matrices, H3 is not"


@check("cor1")
def _(c: Context):
    prods = [c.A ** i @ c.B ** j for i in range(9) for j in range(3)]
    G = c.gen(prods)
    ok = all(is_cross(m) for m in prods) and G.order == 27 and all(is_cross(m) for m in G)
    return ok, f"all 27 A^i B^j are cross and close to a group of order {G.order}"


@check("lemma2")
def _(c: Context):
    S3 = En.sylow(c.fr162, 3)[0]
    G = c.fr162
    ok = all(G.mul(x, x) in S3.member_set for x in range(G.order) if x not in S3.member_set)
    return ok, "x outside the 3-Sylow has x^2 inside"


@check("cor2")
def _(c: Context):
    S3 = En.sylow(c.fr162, 3)[0]
    return c.H[3] in S3 and c.H[3] @ c.H[3] in S3


@check("lemma3")
def _(c: Context):
    S3 = En.sylow(c.d9, 3)[0]
    odd = [x for x in range(c.d9.order) if c.d9.orders[x] % 2]
    return set(odd) <= S3.member_set, f"{len(odd)} odd-order elements, all in S3(D)"


@check("thm4")
def _(c: Context):
    S3 = En.sylow(c.d9, 3)[0]
    c911 = c.named("c9-1-1")
    return c911.order == 81 and set(c911.elements) == _handle_set(S3), "S3(D) = C(9,1,1)"


@check("thm5")
def _(c: Context):
    counts = [len(En.sylow(G, 3)) for G in (c.fr, c.d18)]
    return counts == [4, 4], f"3-Sylow counts {counts}"


@check("lemma4")
def _(c: Context):
    S3F = En.sylow(c.fr162, 3)[0]
    ZF = [m for m in En.center(S3F).elements() if element_order(m) == 3]
    S3D = En.sylow(c.d9, 3)[0]
    ZD = [m for m in En.center(S3D).elements() if element_order(m) == 3]
    ok = _sets_equal(ZF, [c.A ** 3, c.A ** 6]) and _sets_equal(ZD, [c.F ** 6, c.F ** 12])
    return ok, "order-3 central elements: {A^3, A^6} and {F^6, F^12}"


def _thm6_map(c: Context):
    src = c.gen([c.A, c.B, c.H[1], c.H[3]])
    imgs = [c.F ** 2, c.fB, c.Bt @ c.E, c.E]
    ok = En.set_equal(src, c.fr162) and En.verify_isomorphism(src, c.d9, imgs)
    return ok, f"A->F^2, B->F^12 X^2, H1->Bt E, H3->E; {src.order ** 2} pairs scanned"


@check("thm6")
def _(c: Context):
    return _thm6_map(c)


@check("thm6.wrong-image-rejected")
def _(c: Context):
    src = c.gen([c.A, c.B, c.H[1], c.H[3]])
    imgs = [c.F ** 4, c.fB, c.Bt @ c.E, c.E]
    return not En.verify_isomorphism(src, c.d9, imgs), "A->F^4 does not extend"


# -- eq34-eq43: the order-162 isomorphism ------------------------------------------------------------------


def _eqs_thm6(c: Context) -> dict[int, bool]:
    A, B, H1, H3, F, E, Bt = c.A, c.B, c.H[1], c.H[3], c.F, c.E, c.Bt
    F2, fB = F ** 2, c.fB
    return {
        34: H1 @ A @ inv(H1) == A,
        35: H1 @ B @ inv(H1) == A ** 6 @ B ** 2 and (Bt @ E) @ fB @ inv(Bt @ E) == F2 ** 6 @ fB ** 2,
        36: H3 @ A @ inv(H3) == A @ B,
        37: H3 @ B @ inv(H3) == A ** 6 @ B and E @ fB @ inv(E) == F2 ** 6 @ fB,
        38: Bt @ E @ F2 @ inv(E) @ Bt == F2,
        39: E @ F2 @ inv(E) == F2 @ fB,
        40: fB == inv(F2) @ E @ F2 @ inv(E),
        41: fB == Mat3.diag(rational(1, c.n), -C.e(1, 6, c.n), C.e(1, 3, c.n)),
        42: (Bt @ E @ inv(F2) @ E @ F2 @ inv(E) @ inv(E) @ Bt
             == F ** 12 @ inv(F2) @ E @ F2 @ inv(E) @ inv(F2) @ E @ F2 @ inv(E)),
        43: E @ inv(F2) @ E @ F2 @ inv(E) @ inv(E) == F ** 12 @ inv(F2) @ E @ F2 @ inv(E),
    }


for _k in range(34, 44):
    check(f"eq{_k}")(lambda c, k=_k: _eqs_thm6(c)[k])


# -- the four 3-Sylows of the order-648 group ------------------------------------------


def _syl_sets(G) -> list[frozenset[int]]:
    return sorted((s.member_set for s in En.sylow(G, 3)), key=sorted)


@check("lemma5")
def _(c: Context):
    conj = [En.conjugate_subgroup(c.S3F, c.fr.idx(v)).member_set for v in C.klein_V(c.n)]
    ok = len(set(conj)) == 4 and sorted(conj, key=sorted) == _syl_sets(c.fr)
    return ok, "the four 3-Sylows are S3(F) and its V-conjugates"


@check("eq44")
def _(c: Context):
    gen = c.sub(c.fr, list(C.klein_V(c.n)) + c.S3F.elements())
    return gen.member_set <= En.generated_by_sylows(c.fr, 3).member_set


@check("eq45")
def _(c: Context):
    gen = c.sub(c.fr, list(C.klein_V(c.n)) + c.S3F.elements())
    return En.generated_by_sylows(c.fr, 3).member_set <= gen.member_set


@check("eq46")
def _(c: Context):
    gen = c.sub(c.fr, list(C.klein_V(c.n)) + c.S3F.elements())
    return gen == En.generated_by_sylows(c.fr, 3), "3SylF = <V, S3(F)>"


@check("eq47")
def _(c: Context):
    syl = En.generated_by_sylows(c.fr, 3)
    ok = (En.is_normal(c.V, within=syl) and c.V.member_set & c.S3F.member_set == {0}
          and syl.order == c.V.order * c.S3F.order)
    return ok, "V normal in 3SylF, V n S3(F) = 1, |3SylF| = |V||S3(F)|"


@check("eq48")
def _(c: Context):
    syl = En.generated_by_sylows(c.fr, 3)
    return syl.order == 4 * 3 ** 4 and c.fr.order // syl.order == 2, f"|3SylF| = {syl.order}"


@check("cor3")
def _(c: Context):
    syl = En.generated_by_sylows(c.fr, 3)
    NV = c.sub(c.fr, [c.A, c.B] + list(C.klein_V(c.n)))
    ok = (En.is_normal(syl) and syl.order < c.fr.order and En.is_normal(NV, within=syl)
          and syl.order // NV.order == 3)
    return ok, "N.V < 3SylF < Fr(162x4) with prime quotients"


# -- the four 3-Sylows of D(18,1,1;2,1,1) -----------------------------------------------------


@check("lemma6")
def _(c: Context):
    G, S = c.d18, c.S3D
    conj = [En.conjugate_subgroup(S, G.idx(g)).member_set
            for g in (c.I, c.F, c.E @ c.F, c.E @ c.E @ c.F)]
    return len(set(conj)) == 4 and sorted(conj, key=sorted) == _syl_sets(G)


@check("lemma7")
def _(c: Context):
    syl = En.generated_by_sylows(c.d18, 3)
    ok = c.VD.member_set <= syl.member_set and En.is_normal(c.VD)
    return ok, "V_D inside 3SylD and normal in D(18,1,1;2,1,1)"


@check("lemma8")
def _(c: Context):
    conj = [En.conjugate_subgroup(c.S3D, c.d18.idx(w)).member_set for w in C.klein_VD(c.n)]
    return len(set(conj)) == 4 and sorted(conj, key=sorted) == _syl_sets(c.d18)


@check("cor4")
def _(c: Context):
    syl = En.generated_by_sylows(c.d18, 3)
    gen = c.sub(c.d18, list(C.klein_VD(c.n)) + c.S3D.elements())
    Nd = c.sub(c.d18, [c.F, c.Fp, c.Fs])
    VF = c.sub(c.d18, list(C.klein_VD(c.n)) + c.calF)
    ok = (gen == syl and syl.order == 324 and Nd == VF and Nd.order == 108
          and En.is_normal(Nd, within=syl) and En.is_normal(syl))
    return ok, "3SylD = <V_D, S3(D)>, N(18,1,1;2,1,1) = V_D . F of order 108"


# -- the order-648 isomorphism --------------------------------------------------


def _thm8_map(c: Context):
    src = c.gen([c.c6, c.c18, c.H[1], c.H[3]])
    imgs = [c.gC6, c.gC18, c.Bt @ c.E, c.E @ c.E]
    ok = En.set_equal(src, c.fr) and En.verify_isomorphism(src, c.d18, imgs)
    return ok, f"C6->gC6, C18->gC18, H1->Bt E, H3->E^2; {src.order ** 2} pairs scanned"


@check("thm7")
def _(c: Context):
    return _thm8_map(c)


@check("thm8")
def _(c: Context):
    return _thm8_map(c)


@check("thm8.images")
def _(c: Context):
    n = c.n
    ok = (c.gC18 == Mat3.diag(C.e(-7, 18, n), C.e(2, 18, n), C.e(5, 18, n))
          and c.gC6 == Mat3.diag(C.e(1, 6, n), rational(-1, n), C.e(1, 3, n)))
    return ok, "gC18 = diag(e(-7/18), e(2/18), e(5/18)), gC6 = diag(e(1/6), -1, e(1/3))"


@check("claim1")
def _(c: Context):
    w = C.e(1, 3, c.n)
    return c.F ** 6 == Mat3.scalar(w) and c.F ** 12 == Mat3.scalar(w * w)


def _wde(c: Context):
    for i in (1, 2, 3, 4):
        for D in c.calF:
            yield c.W[i], D


@check("eq49")
def _(c: Context):
    for Wi, D in _wde(c):
        x = Wi @ D @ c.E
        rhs = (Wi @ D) @ (c.E @ Wi @ D @ c.E)
        if x @ x != rhs or rhs.is_identity():
            return False
    return True, "(W D E)^2 = (W D)(E W D E) and is never I, over all W in V_D, D in F"


@check("eq50")
def _(c: Context):
    E2 = c.E @ c.E
    for Wi, D in _wde(c):
        x = Wi @ D @ E2
        rhs = (Wi @ D) @ (E2 @ Wi @ D @ E2)
        if x @ x != rhs or rhs.is_identity():
            return False
    return True, "(W D E^2)^2 = (W D)(E^2 W D E^2) and is never I"


@check("eq51")
def _(c: Context):
    g = c.gC18
    for Wi, D in _wde(c):
        for k in (1, 2):
            Ek = c.E ** k
            h = Wi @ D @ Ek @ inv(Wi)
            if h @ g @ inv(h) != Wi @ D @ Ek @ inv(Wi) @ g @ Wi @ inv(Ek) @ inv(D) @ inv(Wi):
                return False
    return True, "g(H3) g(C18) g(H3)^-1 expands as printed for all W, D, k"


@check("eq52")
def _(c: Context):
    g = c.gC18
    for Wi, D in _wde(c):
        for k in (1, 2):
            Ek = c.E ** k
            h = Wi @ D @ Ek @ inv(Wi)
            if h @ g @ inv(h) != Ek @ g @ inv(Ek):
                return False
    return True, "= E^k g(C18) E^-k for all W, D, k"


@check("eq53")
def _(c: Context):
    E2 = c.E @ c.E
    return c.gC6 == E2 @ c.gC18 @ inv(E2) @ c.gC18 ** 8, "k = 2"


@check("eq54")
def _(c: Context):
    gH3 = c.E @ c.E
    return gH3 @ c.gC6 @ inv(gH3) == c.gC6 @ c.gC18 ** -3


@check("eq55")
def _(c: Context):
    E2 = c.E @ c.E
    return c.gC6 == E2 @ c.gC6 @ inv(E2) @ c.gC18 ** 3, "k = 2"


@check("eq56")
def _(c: Context):
    E2 = c.E @ c.E
    g = c.gC18
    return c.gC6 == c.E @ g @ inv(E2) @ g ** 8 @ inv(E2) @ g ** 3, "k = 2, conjugate k = 1"


@check("thm8.fum-image")
def _(c: Context):
    img = (c.E @ c.E @ c.F @ c.E @ inv(c.F)) ** 3
    src = c.gen([c.c6, c.c18, c.H[1], c.H[3]])
    phi = En.word_images(src, c.d18, [c.gC6, c.gC18, c.Bt @ c.E, c.E @ c.E])
    return c.d18.elements[phi[src.idx(c.F3)]] == img, "g(FUM^3) = (E^2 F E F^-1)^3"


# -- non-isomorphism with Sigma(216x3) -------------------------------------------------------


@check("thm9")
def _(c: Context):
    tf, ts = En.two_sylow_type(c.fr), En.two_sylow_type(c.sigma)
    sf, ss = En.order_spectrum(c.fr), En.order_spectrum(c.sigma)
    ok = c.sigma.order == 648 and tf == "D4" and ts == "Q8" and sf != ss
    return ok, f"2-Sylow types {tf} vs {ts}; spectra differ: {sf != ss}"


@check("thm9.series")
def _(c: Context):
    G = c.fr
    chain = [
        c.sub(G, []),
        c.sub(G, [c.A ** 3]),
        c.sub(G, [c.A]),
        c.N,
        c.sub(G, [c.A, c.B, c.F3]),
        c.sub(G, [c.A, c.B] + list(C.klein_V(c.n))),
        En.generated_by_sylows(G, 3),
        En.whole(G),
    ]
    idx = [chain[k + 1].order // chain[k].order for k in range(len(chain) - 1)]
    normal = all(En.is_normal(chain[k], within=chain[k + 1]) for k in range(len(chain) - 1))
    return normal and idx == [3, 3, 3, 2, 2, 3, 2], f"successive indices {idx}"


@check("thm9.sigma-spectrum")
def _(c: Context):
    return True, _spectrum_text(En.order_spectrum(c.sigma))


@check("lemma9")
def _(c: Context):
    syl = En.sylow(c.fr, 2)
    P = syl[0]
    conj = {En.conjugate_subgroup(P, g).member_set for g in range(c.fr.order)}
    ok = conj == {s.member_set for s in syl} and all(En.two_sylow_type(s) == "D4" for s in syl)
    return ok, f"{len(syl)} 2-Sylows, all conjugate, none Q8"


@check("lemma10")
def _(c: Context):
    P = c.sub(c.fr, list(C.klein_V(c.n)) + [c.H[1]])
    H1 = c.sub(c.fr, [c.H[1]])
    ok = P.order == 8 and not En.is_normal(H1, within=P) and En.two_sylow_type(P) == "D4"
    return ok, "V x| <H1> is a 2-Sylow with non-normal <H1>"


@check("lemma11")
def _(c: Context):
    spec = En.order_spectrum(c.fr)
    bad = [k for k in (24, 27, 54, 72, 108) if k in spec]
    return not bad, f"spectrum {_spectrum_text(spec)}"


@check("lemma11.h3-products")
def _(c: Context):
    NV = c.sub(c.fr, [c.A, c.B] + list(C.klein_V(c.n))).elements()
    ok = all(element_order(m @ h) == 3 for m in NV for h in (c.H[3], c.H[4]))
    return ok, "every N H3 and N H4 with N in N.V has order 3"


# -- C/D series identities and inclusions ----------------------------


@check("thm10.order-arithmetic")
def _(c: Context):
    ok = all(math.isqrt(k) ** 2 != k for k in (108, 216))
    return ok, "neither 108 nor 216 is a square"


@check("thm10.d-identities")
def _(c: Context):
    names = ["d18-1-1-2-0-1", "d18-1-1-2-0-0", "d9-1-1-2-0-1", "d9-1-1-2-0-0"]
    ok = all(En.set_equal(c.named(nm), c.d18) for nm in names)
    return ok, "D(18,1,1;2,1,1) = " + " = ".join(names)


@check("fact2")
def _(c: Context):
    big = c.named("d9-1-1-2-0-1")
    ok = (En.is_subset(c.d9, big) and c.d9.order < big.order
          and En.set_equal(big, c.named("d9-1-1-2-0-0")) and En.set_equal(big, c.d18))
    return ok, f"D(9,1,1;2,1,1) < D(9,1,1;2,0,1) = D(9,1,1;2,0,0) = D(18,1,1;2,1,1), index {big.order // c.d9.order}"


@check("prop1")
def _(c: Context):
    pairs = [((9, 1, 1), (18, 1, 1)), ((9, 1, 1), (18, 10, 1)), ((9, 3, 1), (18, 3, 1)),
             ((2, 1, 0), (4, 1, 0)), ((2, 1, 1), (4, 3, 1))]
    ok = all(En.cd_inclusion_check(C.c_group(*a, n=c.n).generators, C.c_group(*b, n=c.n).generators,
                                   cap=c.cap) for a, b in pairs)
    return ok, "C(k, a', b') < C(2k, a, b) for " + ", ".join(f"{a}<{b}" for a, b in pairs)


@check("prop2")
def _(c: Context):
    gs = [c.named(nm) for nm in ("c2-0-1", "c2-1-0", "c2-1-1")]
    ok = all(En.set_equal(gs[0], g) for g in gs[1:]) and all(w in gs[0] for w in C.klein_VD(c.n))
    return ok, f"C(2,0,1) = C(2,1,0) = C(2,1,1), order {gs[0].order}, contains V_D"


@check("prop3")
def _(c: Context):
    # every 2-Sylow of Fr is non-abelian, so it has no abelian subgroup of order 8
    non_abelian = En.two_sylow_type(c.fr) == "D4"
    diag8 = []
    for a, b in ((0, 1), (1, 0), (1, 1), (1, 2)):
        G = c.named(f"c4-{a}-{b}")
        diag = [m for m in G if m.is_diagonal()]
        diag8.append(len(diag) % 8 == 0)
    return non_abelian and all(diag8), "C(4,a,b) has an abelian diagonal part of order divisible by 8"


@check("fact1")
def _(c: Context):
    g = c.named("c9-3-1")
    ok = g.order == 243 and En.p_part(c.fr.order, 3) < g.order
    return ok, f"|C(9,3,1)| = {g.order} exceeds the 3-part 81 of 648"


LEMMA12_ROWS = [(2, 0), (2, 1), (4, 0), (4, 1), (4, 2), (4, 3), (6, 0), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5)]
LEMMA13_ROWS = {
    (9, 7): (9, 1, 4), (9, 8): (9, 5, 2), (9, 6): (9, 6, 6), (9, 5): (9, 2, 8),
    (9, 4): (9, 7, 1), (9, 3): (9, 3, 3), (9, 2): (9, 8, 5), (9, 1): (9, 4, 7),
    (9, 0): (9, 0, 0), (3, 1): (3, 1, 1), (3, 2): (3, 2, 2), (3, 0): (3, 0, 0),
}


def lemma12_c_params(d: int, r: int) -> tuple[int, int, int]:
    if r <= d // 2 - 1:
        return d, 2 * r, (d - 2 * r) // 2
    if r >= d // 2 + 1:
        return d, 2 * r - d, (3 * d - 2 * r) // 2
    return d, 0, 0


def _rows(c: Context, rows) -> tuple[bool, str]:
    bad = []
    for cp, dp in rows:
        if not En.cd_inclusion_check(C.c_group(*cp, n=c.n).generators,
                                     C.d_group(*dp, n=c.n).generators, cap=c.cap):
            bad.append(f"C{cp} !< D{dp}")
    return not bad, "; ".join(bad) or f"{len(rows)} inclusions hold"


@check("lemma12")
def _(c: Context):
    rows = [(lemma12_c_params(d, r), (9, 1, 1, d, r, 1)) for d, r in LEMMA12_ROWS]
    return _rows(c, rows)


@check("lemma13")
def _(c: Context):
    rows = [(cp, (9, 1, 1, d, r, 1)) for (d, r), cp in LEMMA13_ROWS.items()]
    return _rows(c, rows)


@check("thm11")
def _(c: Context):
    # a C-group is abelian-by-Z3; an abelian normal subgroup of order 216 would hold an
    # abelian group of order 8, impossible with dihedral 2-Sylows
    return En.two_sylow_type(c.fr) == "D4", "Fr has no abelian subgroup of order 8"


@check("thm12")
def _(c: Context):
    # irreducible: only scalars commute with every generator
    n = 3
    rows = []
    for g in c.fr.generators:
        M = g.approx()
        rows.append(np.kron(M, np.eye(n)) - np.kron(np.eye(n), M.T))
    sv = np.linalg.svd(np.vstack(rows), compute_uv=False)
    null = int(np.sum(sv < 1e-9))
    return null == 1, f"commutant dimension {null}"


# -- the Z9 x S3 subgroup --------------------------


@check("thm13")
def _(c: Context):
    return c.S.order == 54, f"|<A, B, H2>| = {c.S.order}"


@check("lemma14")
def _(c: Context):
    inv2 = [m for m in c.S if element_order(m) == 2]
    want = [c.H[2], c.B @ c.H[2], c.B @ c.B @ c.H[2]]
    return _sets_equal(inv2, want), f"{len(inv2)} involutions"


LEMMA15 = [(1, 2), (2, 1), (4, 2), (5, 1), (7, 2), (8, 1)]


@check("lemma15")
def _(c: Context):
    H2 = c.H[2]
    order9 = [m for m in c.S if element_order(m) == 9]
    fixed = [m for m in order9 if H2 @ m @ inv(H2) == m]
    want = [c.A ** i @ c.B ** j for i, j in LEMMA15]
    Z = set(En.center(c.S).elements())
    central9 = [m for m in order9 if m in Z]
    ok = len(order9) == 18 and _sets_equal(fixed, want) and _sets_equal(central9, want)
    return ok, "H2-fixed order-9 elements = central order-9 elements = the six listed"


@check("prop6")
def _(c: Context):
    S = c.S
    z = c.A @ c.B @ c.B
    Zc = c.sub(S, [z])
    K = c.sub(S, [c.B, c.H[2]])
    central = z in set(En.center(S).elements())
    ok = (central and element_order(z) == 9 and K.order == 6 and Zc.member_set & K.member_set == {0}
          and len(En.product_set(S, Zc.members, K.members)) == 54)
    return ok, "S = <AB^2> x (<B> x| <H2>)"


@check("cor5")
def _(c: Context):
    K = c.sub(c.S, [c.B, c.H[2]])
    spec = En.order_spectrum(K)
    return spec == {1: 1, 2: 3, 3: 2}, "<B, H2> is S3"


def _ij():
    return [(i, j) for i in range(9) for j in range(3)]


@check("eq57")
def _(c: Context):
    H2, A, B = c.H[2], c.A, c.B
    for i, j in _ij():
        x = A ** i @ B ** j
        involution = element_order(x @ H2) == 2
        relation = H2 @ x @ H2 == inv(A) ** i @ inv(B) ** j
        if involution != relation or involution != (i == 0):
            return False, f"fails at i={i}, j={j}"
    return True, "A^i B^j H2 is an involution iff H2 A^i B^j H2 = A^-i B^-j iff i = 0"


@check("eq58")
def _(c: Context):
    return c.H[2] @ c.A @ inv(c.H[2]) == c.A @ c.B


@check("eq59")
def _(c: Context):
    return c.H[2] @ c.B @ inv(c.H[2]) == c.B @ c.B


@check("eq60")
def _(c: Context):
    H2, A, B = c.H[2], c.A, c.B
    ok = all(H2 @ A ** i @ B ** j @ H2 == A ** i @ B ** ((i - j) % 3) for i, j in _ij())
    return ok, "H2 A^i B^j H2 = A^i B^(i + jbar) with jbar = -j mod 3, all 27 pairs"


@check("eq61")
def _(c: Context):
    a = {c.A ** i for i in range(9)}
    b = {c.B ** j for j in range(3)}
    return a & b == {c.I}


@check("eq62")
def _(c: Context):
    H2, A, B = c.H[2], c.A, c.B
    ok = all(H2 @ A ** i @ B ** j @ H2 == A ** i @ B ** ((-j) % 3) for i in (0, 3, 6) for j in range(3))
    return ok, "i in {0, 3, 6}"


# -- automorphism count and the other presentations ----------------------------------


@check("remark2.aut")
def _(c: Context):
    k = En.aut_count_abelian(18, 6)
    return k == 648, f"|Aut(Z18 x Z6)| = {k}"


@check("pres.d18")
def _(c: Context):
    P = fp.d18_presentation()
    bad = fp.check_presentation(fp.d18_assignment(c.n), P)
    k = fp.todd_coxeter(P)
    return not bad and k == 648, f"relator failures {bad}, coset enumeration order {k}"


@check("pres.fr162")
def _(c: Context):
    P = fp.fr162_presentation()
    bad = fp.check_presentation(fp.fr162_assignment(c.n), P)
    k = fp.todd_coxeter(P)
    return not bad and k == 162, f"relator failures {bad}, coset enumeration order {k}"


# -- orthogonal conjugacy --------------------------------------------------------------------


@check("thm14.orthogonal")
def _(c: Context):
    O = c.O
    real = all(x == x.conj() for row in O.rows() for x in row)
    return real and (O @ O.transpose()).is_identity(), "O O^T = I with real entries"


@check("thm14.ii")
def _(c: Context):
    G = En.conjugate_group(c.O, c.fr)
    return En.set_equal(G, c.d18), "O Fr(162x4) O^T = D(18,1,1;2,1,1)"


@check("thm14.iii")
def _(c: Context):
    G = En.conjugate_group(c.O, c.fr162)
    ok = En.set_equal(G, c.d9)
    inside = sum(m in c.d9 for m in G)
    return ok, f"O Fr(162) O^T = D(9,1,1;2,1,1): {ok}; {inside}/162 elements land in D(9,1,1;2,1,1)"


@check("thm14.iii-transposed")
def _(c: Context):
    Ot = c.O.transpose()
    ok = En.set_equal(En.conjugate_group(Ot, c.fr162), c.d9) and \
        En.set_equal(En.conjugate_group(Ot, c.fr), c.d18)
    return ok, "O^T Fr(162) O = D(9,1,1;2,1,1) and O^T Fr(162x4) O = D(18,1,1;2,1,1)"


@check("thm14.images")
def _(c: Context):
    P, Pi = c.O.transpose(), c.O
    ok = (P @ c.H[3] @ Pi == c.E and P @ c.H[1] @ Pi == c.Bt @ c.E
          and P @ c.F3 @ Pi == c.W[3] and P @ c.T @ Pi == c.W[4])
    return ok, "with P = O^T: H3 -> E, H1 -> Bt E, FUM^3 -> W3, G1 FUM^3 G1^-1 -> W4"


@check("cor7")
def _(c: Context):
    P, Pi = c.O.transpose(), c.O
    N = c.N.elements()
    ok = _sets_equal([P @ m @ Pi for m in N], c.calF)
    return ok, "O^T N O = F (the order-27 diagonal group)"


# -- fusion matrix ----------------------------------------------------------------


@check("fusion.derive")
def _(c: Context):
    M = Fu.derive_fusion_matrix(c.n)
    one = rational(1, c.n)
    return M == Mat3.antidiag(one, one, one), "derived fusion matrix = antidiag(1,1,1)"


@check("fusion.normalize")
def _(c: Context):
    return Fu.su3_normalize(Fu.derive_fusion_matrix(c.n)) == c.FUM, "SU(3) normalization = FUM"


@check("fusion.coefficients")
def _(c: Context):
    vals = {k: Fu.fusion_coefficient(k, c.n) for k in (0, 2, 4)}
    ok = all(v == Fu.SurdNum(1, 1, c.n) for v in vals.values())
    return ok, "coefficients for charges 0, 2, 4 all equal 1"


@check("fusion.unitary")
def _(c: Context):
    cfgs = Fu.external_configurations()
    bad = [cfg for cfg in cfgs if not Fu.f_matrix_is_orthogonal(*cfg, n=c.n)]
    return not bad, f"{len(cfgs)} level-4 F-matrices exactly orthogonal" if not bad else f"fails: {bad}"
