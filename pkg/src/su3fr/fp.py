"""Finitely presented groups: words, relator checks, coset enumeration.

Presentations have a small text form::

    gens: c6 c18 h1 h3;
    rel: c6^6; rel: [c6, c18];
    rel: h1 c6 h1^-1 = c6^-1 c18^6

A ``rel`` is either a single relator word or an equation ``lhs = rhs``,
stored as the relator ``lhs rhs^-1``.  Words are products of terms; a term
is a generator name, a parenthesised word or a commutator ``[x, y]``
(meaning ``x y x^-1 y^-1``), optionally raised to a signed integer power.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .mat3 import Mat3, is_special_unitary


class PresentationError(ValueError):
    pass


class CosetCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Word:
    """A word as signed 1-based generator indices; ``-2`` is the inverse of generator 2."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(x == 0 for x in self.letters):
            raise ValueError("generator indices are 1-based and signed; 0 is not a letter")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> Word:
        return Word(tuple(-x for x in reversed(self.letters)))

    def reduced(self) -> Word:
        out: list[int] = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return Word(tuple(out))

    def cyclically_reduced(self) -> Word:
        w = list(self.reduced().letters)
        while len(w) > 1 and w[0] == -w[-1]:
            w = w[1:-1]
        return Word(tuple(w))

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        for x in self.letters:
            name = names[abs(x) - 1]
            if parts and parts[-1][0] == name and (parts[-1][1] > 0) == (x > 0):
                parts[-1][1] += 1 if x > 0 else -1
            else:
                parts.append([name, 1 if x > 0 else -1])
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in parts)


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class Presentation:
    gens: tuple[str, ...]
    relators: tuple[Word, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise PresentationError("duplicate generator names")
        for r in self.relators:
            if any(abs(x) > len(self.gens) for x in r.letters):
                raise PresentationError("relator uses an undeclared generator")

    def word(self, text: str) -> Word:
        return parse_word(text, self.gens)

    def relator_text(self, i: int) -> str:
        if i < len(self.labels) and self.labels[i]:
            return self.labels[i]
        return self.relators[i].format(self.gens)


@dataclass(frozen=True)
class GenAssignment:
    names: tuple[str, ...]
    matrices: tuple[Mat3, ...]

    def __post_init__(self):
        if len(self.names) != len(self.matrices):
            raise ValueError("one matrix per generator name")
        for name, m in zip(self.names, self.matrices):
            if not is_special_unitary(m):
                raise ValueError(f"image of {name} is not in SU(3)")

    @classmethod
    def of(cls, pairs: dict[str, Mat3]) -> GenAssignment:
        return cls(tuple(pairs), tuple(pairs.values()))

    def __getitem__(self, name: str) -> Mat3:
        return self.matrices[self.names.index(name)]


# -- parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<pow>\^\s*[-+]?\d+)|(?P<sym>[()\[\],=])|(?P<bad>\S))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "bad":
            raise PresentationError(f"unexpected character {m.group('bad')!r} in {text!r}")
        out.append((kind, m.group(kind).replace(" ", "")))
    return out


class _Parser:
    def __init__(self, text: str, gens: Sequence[str]):
        self.toks = _tokens(text)
        self.pos = 0
        self.index = {g: i + 1 for i, g in enumerate(gens)}
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, sym: str):
        kind, val = self.peek()
        if val != sym:
            raise PresentationError(f"expected {sym!r} in {self.text!r}")
        self.pos += 1

    def word(self) -> Word:
        w = Word()
        while True:
            kind, val = self.peek()
            if kind == "name" or val in ("(", "["):
                w = w * self.term()
            else:
                return w

    def term(self) -> Word:
        kind, val = self.peek()
        if kind == "name":
            self.pos += 1
            if val not in self.index:
                raise PresentationError(f"unknown generator {val!r}")
            base = Word((self.index[val],))
        elif val == "(":
            self.pos += 1
            base = self.word()
            self.take(")")
        else:
            self.take("[")
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            base = commutator(x, y)
        kind, val = self.peek()
        if kind == "pow":
            self.pos += 1
            base = base ** int(val[1:])
        return base

    def relation(self) -> Word:
        lhs = self.word()
        if self.peek()[1] == "=":
            self.pos += 1
            rhs = self.word()
            lhs = lhs * rhs.inverse()
        if self.pos != len(self.toks):
            raise PresentationError(f"trailing input in {self.text!r}")
        return lhs


def parse_word(text: str, gens: Sequence[str]) -> Word:
    p = _Parser(text, gens)
    w = p.word()
    if p.pos != len(p.toks):
        raise PresentationError(f"trailing input in {text!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    gens: list[str] | None = None
    rels: list[Word] = []
    labels: list[str] = []
    for clause in (c.strip() for c in text.replace("\n", " ").split(";")):
        if not clause:
            continue
        key, sep, body = clause.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationError(f"clause must start with 'gens:' or 'rel:': {clause!r}")
        if key == "gens":
            if gens is not None:
                raise PresentationError("more than one gens clause")
            gens = body.split()
        else:
            if gens is None:
                raise PresentationError("gens must be declared before relators")
            rels.append(_Parser(body, gens).relation())
            labels.append(" ".join(body.split()))
    if gens is None:
        raise PresentationError("missing gens clause")
    return Presentation(tuple(gens), tuple(rels), tuple(labels))


# -- evaluation ------------------------------------------------------------------


def eval_word(assign: GenAssignment, w: Word) -> Mat3:
    if not assign.matrices:
        if w.letters:
            raise KeyError("word uses generators but the assignment is empty")
        raise ValueError("cannot infer the conductor from an empty assignment")
    n = assign.matrices[0].conductor
    inverses: dict[int, Mat3] = {}
    out = Mat3.identity(n)
    for x in w.letters:
        k = abs(x) - 1
        if k >= len(assign.matrices):
            raise KeyError(f"generator {x} is not assigned")
        if x > 0:
            out = out @ assign.matrices[k]
        else:
            if k not in inverses:
                inverses[k] = assign.matrices[k].dagger()
            out = out @ inverses[k]
    return out


def check_presentation(assign: GenAssignment, P: Presentation) -> list[int]:
    """Indices of relators that do not evaluate to the identity."""
    if tuple(assign.names) != tuple(P.gens):
        raise ValueError("assignment names must match the presentation's generators")
    return [i for i, r in enumerate(P.relators) if not eval_word(assign, r).is_identity()]


def verify_identity(assign: GenAssignment, lhs: Word, rhs: Word) -> bool:
    return eval_word(assign, lhs) == eval_word(assign, rhs)


# -- Todd-Coxeter ----------------------------------------------------------------


def todd_coxeter(P: Presentation, cap: int = 5000) -> int:
    """Order of the presented group, by HLT coset enumeration over the trivial subgroup."""
    ncols = 2 * len(P.gens)

    def col(x: int) -> int:
        return 2 * (abs(x) - 1) + (x < 0)

    rels = [[col(x) for x in r.cyclically_reduced().letters] for r in P.relators]
    rels = [r for r in rels if r]
    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> int:
        if len(table) >= cap:
            raise CosetCapExceeded(f"coset enumeration exceeded {cap} cosets")
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c
        return d

    def merge(a: int, b: int, queue: list[int]):
        a, b = find(a), find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a: int, b: int):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = find(e), find(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c: int, rel: list[int]):
        f, b = c, c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and table[f][rel[i]] is not None:
                f = table[f][rel[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][rel[j] ^ 1] is not None:
                b = table[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i] ^ 1] = f
                return
            define(f, rel[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for rel in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, rel)
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] is None:
                        define(c, x)
        c += 1
    return sum(1 for k in range(len(table)) if parent[k] == k)


# -- the presentations used in the verification suite ----------------------------

FR648_TEXT = """
gens: c6 c18 h1 h3;
rel: c6^6; rel: c18^18; rel: [c6, c18];
rel: h1^2; rel: h3^3; rel: (h1 h3)^2;
rel: h1 c6 h1^-1 = c6^-1 c18^6;
rel: h1 c18 h1^-1 = c6^3 c18;
rel: h3 c6 h3^-1 = c6 c18^-3;
rel: h3 c18 h3^-1 = c6 c18^10
"""

# Action of <E, Bt> on the diagonal subgroup <F, F', F''> ~ Z18 x Z6.
D18_TEXT = """
gens: f fp fs e bt;
rel: f^18; rel: (f fs^-1)^6; rel: f fp fs;
rel: [f, fp]; rel: [f, fs]; rel: [fp, fs];
rel: e^3; rel: bt^2; rel: (e bt)^2;
rel: bt f bt^-1 = fp; rel: e f e^-1 = fp;
rel: bt fp bt^-1 = f; rel: bt fs bt^-1 = fs;
rel: e fp e^-1 = fs; rel: e fs e^-1 = f
"""

FR162_TEXT = """
gens: a b h1 h3;
rel: a^9; rel: b^3; rel: [a, b];
rel: h1^2; rel: h3^3; rel: (h1 h3)^2;
rel: h1 a h1^-1 = a;
rel: h1 b h1^-1 = a^6 b^2;
rel: h3 a h3^-1 = a b;
rel: h3 b h3^-1 = a^6 b
"""


def fr648_presentation() -> Presentation:
    return parse_presentation(FR648_TEXT)


def d18_presentation() -> Presentation:
    return parse_presentation(D18_TEXT)


def fr162_presentation() -> Presentation:
    return parse_presentation(FR162_TEXT)


def fr648_assignment(n: int = 72) -> GenAssignment:
    from . import catalog as C

    return GenAssignment(("c6", "c18", "h1", "h3"), (C.c6(n), C.c18(n), C.h_matrix(1, n), C.h_matrix(3, n)))


def d18_assignment(n: int = 72) -> GenAssignment:
    from . import catalog as C

    return GenAssignment(
        ("f", "fp", "fs", "e", "bt"),
        (C.F(18, 1, 1, n), C.F_prime(18, 1, 1, n), C.F_second(18, 1, 1, n), C.E(n), C.Btilde(n)),
    )


def fr162_assignment(n: int = 72) -> GenAssignment:
    from . import catalog as C

    return GenAssignment(("a", "b", "h1", "h3"), (C.matrix_A(n), C.matrix_B(n), C.h_matrix(1, n), C.h_matrix(3, n)))


def words(P: Presentation, texts: Iterable[str]) -> list[Word]:
    return [P.word(t) for t in texts]
