"""Finite matrix groups: closure, subgroups, Sylow theory, isomorphism checks.

A :class:`MatrixGroup` is built once by breadth-first closure and never
mutated.  Elements are stored in a canonical order (identity first, the rest
sorted lexicographically by their exact coefficients) so that indices, words
and exported files are reproducible.

The full multiplication table is derived from the exact left-multiplication
edges recorded during closure: if ``x = g x'`` then row ``x`` of the table is
row ``x'`` pushed through the permutation "multiply by ``g`` on the left".
Every entry therefore comes from exact matrix products, without paying for
``|G|^2`` of them.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .cyclo import DEFAULT_CONDUCTOR
from .mat3 import Mat3, is_unitary

Word = tuple[int, ...]


class ClosureCapExceeded(RuntimeError):
    pass


class NotInGroup(ValueError):
    pass


class MatrixGroup:
    """A finite group of 3x3 matrices with per-element generator words.

    ``words[i]`` is a tuple of signed 1-based generator indices; ``(2, -1)``
    means ``gens[1] @ inverse(gens[0])``.
    """

    def __init__(self, elements: Sequence[Mat3], words: Sequence[Word], generators: Sequence[Mat3],
                 left: dict[int, np.ndarray], name: str = ""):
        self.elements = list(elements)
        self.words = [tuple(w) for w in words]
        self.generators = tuple(generators)
        self.name = name
        self._left = left
        self.index = {m: i for i, m in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def conductor(self) -> int:
        return self.elements[0].conductor

    def __contains__(self, m: Mat3) -> bool:
        return m in self.index

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"MatrixGroup({self.name or '?'}, order={self.order})"

    def idx(self, m: Mat3) -> int:
        try:
            return self.index[m]
        except KeyError:
            raise NotInGroup(f"matrix is not an element of {self.name or 'the group'}") from None

    def generator_matrix(self, letter: int) -> Mat3:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else g.dagger()

    def eval_word(self, word: Iterable[int]) -> Mat3:
        out = Mat3.identity(self.conductor)
        for letter in word:
            out = out @ self.generator_matrix(letter)
        return out

    @cached_property
    def table(self) -> np.ndarray:
        """``table[x, y]`` is the index of ``elements[x] @ elements[y]``."""
        n = self.order
        tab = np.empty((n, n), dtype=np.int32)
        tab[0] = np.arange(n, dtype=np.int32)
        for x in sorted(range(1, n), key=lambda i: len(self.words[i])):
            w = self.words[x]
            parent = self._parent[x]
            tab[x] = self._left[w[0]][tab[parent]]
        return tab

    @cached_property
    def _parent(self) -> list[int]:
        # index of the element whose word is words[x][1:]
        by_word = {w: i for i, w in enumerate(self.words)}
        return [by_word[w[1:]] if w else 0 for w in self.words]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int32)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        return inv

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        tab = self.table
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = tab[y, x]
                k += 1
            out[x] = k
        return out


def _canonical(elements, words, generators, left_bfs, name) -> MatrixGroup:
    n = len(elements)
    rest = sorted(range(1, n), key=lambda i: elements[i].sort_key())
    perm = [0] + rest  # new position -> bfs index
    where = np.empty(n, dtype=np.int32)
    where[perm] = np.arange(n, dtype=np.int32)
    left = {m: where[np.asarray(arr)[perm]] for m, arr in left_bfs.items()}
    return MatrixGroup([elements[i] for i in perm], [words[i] for i in perm], generators, left, name)


def generate(gens: Sequence[Mat3], cap: int = 10000, name: str = "",
             n: int | None = None) -> MatrixGroup:
    """Close ``gens`` under products and inverses by breadth-first search."""
    gens = tuple(gens)
    if n is None:
        n = gens[0].conductor if gens else DEFAULT_CONDUCTOR
    ident = Mat3.identity(n)
    moves: list[tuple[int, Mat3]] = []
    for k, g in enumerate(gens, start=1):
        if not is_unitary(g):
            raise ValueError(f"generator {k} is not unitary")
        moves.append((k, g))
        moves.append((-k, g.dagger()))
    elements = [ident]
    words: list[Word] = [()]
    index = {ident: 0}
    left: dict[int, list[int]] = {m: [] for m, _ in moves}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        mx = elements[x]
        for letter, g in moves:
            y = g @ mx
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise ClosureCapExceeded(f"closure exceeded cap of {cap} elements")
                index[y] = j
                elements.append(y)
                words.append((letter,) + words[x])
                queue.append(j)
            left[letter].append(j)
    return _canonical(elements, words, gens, left, name)


# -- subgroups -------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupHandle:
    parent: MatrixGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, m: Mat3) -> bool:
        i = self.parent.index.get(m)
        return i is not None and i in self.member_set

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def elements(self) -> list[Mat3]:
        return [self.parent.elements[i] for i in self.members]

    def __eq__(self, other):
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))


def _close_indices(G: MatrixGroup, seeds: Iterable[int]) -> SubgroupHandle:
    seeds = list(dict.fromkeys(int(s) for s in seeds))
    seen = {0}
    queue = deque([0])
    tab = G.table
    while queue:
        x = queue.popleft()
        for s in seeds:
            y = int(tab[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return SubgroupHandle(G, tuple(sorted(seen)))


def subgroup(G: MatrixGroup, seed: Iterable[Mat3]) -> SubgroupHandle:
    return _close_indices(G, (G.idx(m) for m in seed))


def whole(G: MatrixGroup) -> SubgroupHandle:
    return SubgroupHandle(G, tuple(range(G.order)))


def _conj_members(G: MatrixGroup, g: int, members) -> np.ndarray:
    m = np.asarray(members, dtype=np.int64)
    return G.table[G.table[g, m], G.inverse[g]]


def conjugate_subgroup(H: SubgroupHandle, g: int) -> SubgroupHandle:
    return SubgroupHandle(H.parent, tuple(sorted(int(x) for x in _conj_members(H.parent, g, H.members))))


def is_normal(H: SubgroupHandle, within: SubgroupHandle | None = None) -> bool:
    G = H.parent
    ambient = range(G.order) if within is None else within.members
    mine = set(H.members)
    return all(set(_conj_members(G, g, H.members).tolist()) == mine for g in ambient)


def normalizer(H: SubgroupHandle) -> SubgroupHandle:
    G = H.parent
    mine = set(H.members)
    return SubgroupHandle(G, tuple(g for g in range(G.order)
                                   if set(_conj_members(G, g, H.members).tolist()) == mine))


def center(G: MatrixGroup | SubgroupHandle) -> SubgroupHandle:
    if isinstance(G, MatrixGroup):
        G = whole(G)
    P = G.parent
    m = np.asarray(G.members)
    tab = P.table
    sub = tab[np.ix_(m, m)]
    central = np.all(sub == sub.T, axis=1)
    return SubgroupHandle(P, tuple(int(x) for x in m[central]))


def order_spectrum(G: MatrixGroup | SubgroupHandle) -> dict[int, int]:
    if isinstance(G, MatrixGroup):
        G = whole(G)
    orders = G.parent.orders[list(G.members)]
    return dict(sorted(Counter(int(o) for o in orders).items()))


def product_set(G: MatrixGroup, *parts: Iterable[int]) -> set[int]:
    out = {0}
    for part in parts:
        part = list(part)
        out = {int(G.table[x, y]) for x in out for y in part}
    return out


# -- Sylow theory --------------------------------------------------------------


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_p_power(k: int, p: int) -> bool:
    return p_part(k, p) == k


def sylow_subgroup(G: MatrixGroup | SubgroupHandle, p: int) -> SubgroupHandle:
    """One Sylow p-subgroup, grown from a cyclic p-subgroup inside normalizers."""
    amb = whole(G) if isinstance(G, MatrixGroup) else G
    P_ = amb.parent
    target = p_part(amb.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide the group order {amb.order}")
    orders = P_.orders
    p_elems = [x for x in amb.members if x != 0 and _is_p_power(int(orders[x]), p)]
    current = _close_indices(P_, [p_elems[0]])
    while current.order < target:
        mine = current.member_set
        norm = set(normalizer(current).members) & set(amb.members)
        for x in p_elems:
            if x in norm and x not in mine:
                current = _close_indices(P_, list(current.members) + [x])
                break
        else:  # pragma: no cover - excluded by Sylow theory
            raise AssertionError("no p-element in the normalizer")
    assert current.order == target
    return current


def sylow(G: MatrixGroup | SubgroupHandle, p: int) -> list[SubgroupHandle]:
    """All Sylow p-subgroups, as the conjugacy class of one of them."""
    amb = whole(G) if isinstance(G, MatrixGroup) else G
    P = sylow_subgroup(amb, p)
    found: dict[tuple[int, ...], SubgroupHandle] = {}
    for g in amb.members:
        C = conjugate_subgroup(P, g)
        found.setdefault(C.members, C)
    return sorted(found.values(), key=lambda h: h.members)


def generated_by_sylows(G: MatrixGroup | SubgroupHandle, p: int) -> SubgroupHandle:
    amb = whole(G) if isinstance(G, MatrixGroup) else G
    if p_part(amb.order, p) == 1:
        return _close_indices(amb.parent, [])
    seeds = set()
    for S in sylow(amb, p):
        seeds.update(S.members)
    return _close_indices(amb.parent, seeds)


TWO_SYLOW_TYPES = {
    "Q8": {1: 1, 2: 1, 4: 6},
    "D4": {1: 1, 2: 5, 4: 2},
    "C2^3": {1: 1, 2: 7},
    "C4xC2": {1: 1, 2: 3, 4: 4},
}


def two_sylow_type(G: MatrixGroup | SubgroupHandle) -> str:
    amb = whole(G) if isinstance(G, MatrixGroup) else G
    if p_part(amb.order, 2) != 8:
        raise ValueError(f"2-part of {amb.order} is not 8")
    spec = order_spectrum(sylow_subgroup(amb, 2))
    if 8 in spec:
        return "C8"
    for label, ref in TWO_SYLOW_TYPES.items():
        if spec == ref:
            return label
    raise AssertionError(f"unexpected spectrum {spec}")  # pragma: no cover


# -- comparisons -----------------------------------------------------------------


def set_equal(G: MatrixGroup, H: MatrixGroup) -> bool:
    return G.order == H.order and set(G.elements) == set(H.elements)


def is_subset(G: MatrixGroup, H: MatrixGroup) -> bool:
    return all(m in H.index for m in G.elements)


def conjugate_group(P: Mat3, G: MatrixGroup, name: str = "") -> MatrixGroup:
    """The group P G P^-1, keeping G's words for the conjugated generators."""
    if is_unitary(P):
        Pinv = P.dagger()
    else:
        Pinv = P.adjugate_inverse()
    elems = [P @ g @ Pinv for g in G.elements]
    gens = [P @ g @ Pinv for g in G.generators]
    return _canonical(elems, G.words, gens, G._left, name or f"conj({G.name})")


def unique_factorization_check(G: MatrixGroup, factors: Sequence[Sequence[Mat3]]) -> bool:
    """True iff (f1, ..., fk) -> f1 @ ... @ fk is a bijection onto G."""
    if math.prod(len(f) for f in factors) != G.order:
        return False
    try:
        idx = [[G.idx(m) for m in f] for f in factors]
    except NotInGroup:
        return False
    seen = set()
    for combo in itertools.product(*idx):
        x = 0
        for y in combo:
            x = int(G.table[x, y])
        if x in seen:
            return False
        seen.add(x)
    return len(seen) == G.order


def word_images(src: MatrixGroup, dst: MatrixGroup, gen_images: Sequence[Mat3]) -> np.ndarray:
    """Image index in ``dst`` of every ``src`` element under the word extension."""
    if len(gen_images) != len(src.generators):
        raise ValueError("one image per source generator is required")
    img = {}
    for k, m in enumerate(gen_images, start=1):
        i = dst.idx(m)
        img[k] = i
        img[-k] = int(dst.inverse[i])
    out = np.zeros(src.order, dtype=np.int64)
    for x in sorted(range(1, src.order), key=lambda i: len(src.words[i])):
        w = src.words[x]
        out[x] = dst.table[img[w[0]], out[src._parent[x]]]
    return out


def verify_isomorphism(src: MatrixGroup, dst: MatrixGroup, gen_images: Sequence[Mat3]) -> bool:
    """Full check that the generator assignment extends to an isomorphism."""
    phi = word_images(src, dst, gen_images)
    if src.order != dst.order or len(set(phi.tolist())) != dst.order:
        return False
    lhs = phi[src.table]
    rhs = dst.table[phi[:, None], phi[None, :]]
    return bool(np.array_equal(lhs, rhs))


def verify_isomorphism_matrix(src: MatrixGroup, dst: MatrixGroup, gen_images: Sequence[Mat3]) -> bool:
    """Same contract as :func:`verify_isomorphism`, using matrix products only.

    Slow (|G|^2 exact products); kept as an independent cross-check of the
    table-driven version.
    """
    gens_inv = {k: m.dagger() for k, m in enumerate(gen_images, start=1)}
    imgs = []
    for w in src.words:
        out = Mat3.identity(dst.conductor)
        for letter in w:
            out = out @ (gen_images[letter - 1] if letter > 0 else gens_inv[-letter])
        imgs.append(out)
    if len(set(imgs)) != dst.order or not all(m in dst.index for m in imgs):
        return False
    for x in range(src.order):
        for y in range(src.order):
            if imgs[x] @ imgs[y] != imgs[src.mul(x, y)]:
                return False
    return True


# -- misc ------------------------------------------------------------------------


def aut_count_abelian(m: int, n: int) -> int:
    """|Aut(Z_m x Z_n)| by brute force over images of the two standard generators."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    elems = [(a, b) for a in range(m) for b in range(n)]
    size = m * n

    def scaled(v, k):
        return ((v[0] * k) % m, (v[1] * k) % n)

    def killed_by(v, k):
        return scaled(v, k) == (0, 0)

    cand_x = [v for v in elems if killed_by(v, m)]
    cand_y = [v for v in elems if killed_by(v, n)]
    count = 0
    for u in cand_x:
        for v in cand_y:
            span = {((a * u[0] + b * v[0]) % m, (a * u[1] + b * v[1]) % n)
                    for a in range(m) for b in range(n)}
            if len(span) == size:
                count += 1
    return count


def cd_inclusion_check(c_gens: Sequence[Mat3], d_gens: Sequence[Mat3], cap: int = 10000) -> bool:
    C = generate(c_gens, cap=cap)
    D = generate(d_gens, cap=cap)
    return is_subset(C, D)


# -- serialization ---------------------------------------------------------------


class GroupFileError(ValueError):
    """The file is not a well-formed group export."""


class GroupInvariantError(ValueError):
    """The file parses but its contents are not a valid closed matrix group."""


def _schema() -> dict:
    import json
    from importlib import resources

    return json.loads(resources.files("su3fr").joinpath("schemas/group.schema.json").read_text())


def group_to_json(G: MatrixGroup) -> dict:
    return {
        "name": G.name,
        "conductor": G.conductor,
        "order": G.order,
        "generators": [m.to_json() for m in G.generators],
        "elements": [m.to_json() for m in G.elements],
        "words": [list(w) for w in G.words],
    }


def group_from_json(data: dict, cap: int = 10000) -> MatrixGroup:
    """Rebuild a group from its export and re-check every invariant."""
    import jsonschema

    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        raise GroupFileError(exc.message) from None
    n = data["conductor"]
    try:
        gens = [Mat3.from_json(m, n) for m in data["generators"]]
        elems = [Mat3.from_json(m, n) for m in data["elements"]]
    except ValueError as exc:
        raise GroupFileError(str(exc)) from None
    if not (data["order"] == len(elems) == len(data["words"])):
        raise GroupInvariantError("order, element count and word count disagree")
    for k, g in enumerate(gens, start=1):
        if not is_unitary(g) or g.det() != 1:
            raise GroupInvariantError(f"generator {k} is not special unitary")
    if any(abs(x) > len(gens) for w in data["words"] for x in w):
        raise GroupInvariantError("a word uses an undeclared generator")
    if not elems[0].is_identity() or data["words"][0]:
        raise GroupInvariantError("element 0 must be the identity with the empty word")
    G = generate(gens, cap=cap, name=data["name"], n=n)
    if len(set(elems)) != len(elems) or set(elems) != set(G.elements):
        raise GroupInvariantError("listed elements are not the closure of the generators")
    for m, w in zip(elems, data["words"]):
        if G.eval_word(w) != m:
            raise GroupInvariantError("a logged word does not evaluate to its element")
    return G
