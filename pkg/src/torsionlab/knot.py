"""Knot ingestion and the Fox-calculus pipeline.

Braid words are closed up into planar diagram (PD) codes, PD codes give
Wirtinger presentations, and Fox derivatives of the relators give the
boundary matrices of the presentation 2-complex of the knot exterior.

PD conventions: ``X[i, j, k, l]`` lists the four edge labels of a crossing
counterclockwise starting from the incoming under-strand, so the
under-strand runs ``i -> k``.  The crossing is positive when the
over-strand runs ``l -> j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .chain import BasedChainComplex, ChainComplexError
from .fkdet import laurent_det
from .groupring import (AbelianizationMap, GroupWord, LaurentMatrix, LaurentPoly,
                        RingElement, matrix_specialize, specialize)


class KnotParseError(ValueError):
    """Malformed braid or PD text.  ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DiagramError(ValueError):
    """Structurally invalid diagram (link closure, bad orientation, ...)."""


# ---------------------------------------------------------------------------
# braids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise DiagramError(f"generator s{abs(x)} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """Where the strand starting at each position ends up."""
        pos = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            for s, p in enumerate(pos):
                if p == i:
                    pos[s] = i + 1
                elif p == i + 1:
                    pos[s] = i
        return pos

    def closure_components(self) -> int:
        perm = self.permutation()
        seen, count = set(), 0
        for s in range(self.strands):
            if s not in seen:
                count += 1
                while s not in seen:
                    seen.add(s)
                    s = perm[s]
        return count

    def __str__(self):
        body = " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)
        return f"strands={self.strands}; {body}".rstrip()


_BRAID_TOKEN = re.compile(r"s(\d+)(\^(-?\d+))?$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"strands=3; s1 s2^-1 s1 s2^-1"``.

    The ``strands=`` header is optional; without it the strand count is one
    more than the largest generator index.  ``s<i>^<e>`` with ``|e| > 1``
    expands to ``|e|`` copies.
    """
    body, offset = text, 0
    m = re.match(r"\s*strands\s*=\s*(\d+)\s*[;,]?", text)
    if m:
        strands = int(m.group(1))
        body, offset = text[m.end():], m.end()
    elif "strands" in text:
        raise KnotParseError("malformed strands header", text.index("strands"))
    letters = []
    for tok in re.finditer(r"\S+", body):
        mt = _BRAID_TOKEN.match(tok.group())
        if not mt:
            raise KnotParseError(f"unexpected token {tok.group()!r}", offset + tok.start())
        gen = int(mt.group(1))
        exp = int(mt.group(3)) if mt.group(2) else 1
        if gen == 0 or exp == 0:
            raise KnotParseError(f"invalid generator {tok.group()!r}", offset + tok.start())
        if strands is not None and gen >= strands:
            raise KnotParseError(f"generator s{gen} out of range for {strands} strands",
                                 offset + tok.start())
        letters += [gen if exp > 0 else -gen] * abs(exp)
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


# ---------------------------------------------------------------------------
# planar diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        if any(len(x) != 4 for x in xs):
            raise DiagramError("every crossing needs four edge labels")
        counts: dict[int, int] = {}
        for x in xs:
            for v in x:
                counts[v] = counts.get(v, 0) + 1
        bad = sorted(v for v, c in counts.items() if c != 2)
        if bad:
            raise DiagramError(f"edge labels must appear exactly twice; offending labels {bad}")
        object.__setattr__(self, "crossings", xs)

    def __len__(self):
        return len(self.crossings)

    def __str__(self):
        return "PD[" + ",".join("X[" + ",".join(map(str, x)) + "]" for x in self.crossings) + "]"

    @cached_property
    def orientation(self) -> tuple[list[int], list[tuple[int, int]]]:
        """Crossing signs and, per crossing, the (in, out) positions of the over-strand.

        Raises ``DiagramError`` for multi-component or inconsistently
        oriented diagrams.
        """
        n = len(self.crossings)
        if n == 0:
            return [], []
        where: dict[int, list[tuple[int, int]]] = {}
        for c, x in enumerate(self.crossings):
            for p, v in enumerate(x):
                where.setdefault(v, []).append((c, p))
        over: list[tuple[int, int] | None] = [None] * n
        visited = set()
        c, p = 0, 0
        while (c, p) not in visited:
            visited.add((c, p))
            q = (p + 2) % 4
            visited.add((c, q))
            if p == 2:
                raise DiagramError(f"crossing {c}: under-strand traversed against its orientation")
            if p in (1, 3):
                over[c] = (p, q)
            label = self.crossings[c][q]
            nxt = [s for s in where[label] if s != (c, q)]
            c, p = nxt[0]
        if len(visited) != 4 * n:
            raise DiagramError("link closures unsupported: diagram has more than one component")
        signs = [1 if o == (3, 1) else -1 for o in over]
        return signs, over

    def signs(self) -> list[int]:
        return self.orientation[0]

    def writhe(self) -> int:
        return sum(self.signs())


_PD_RE = re.compile(r"\s*PD\s*\[(.*)\]\s*$", re.S)
_X_RE = re.compile(r"\s*X\s*\[\s*([^\]]*)\]\s*")


def parse_pd(text: str) -> PDCode:
    """Parse ``"PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"``."""
    m = _PD_RE.match(text)
    if not m:
        raise KnotParseError("expected PD[...]", 0)
    body, offset = m.group(1), m.start(1)
    pos, crossings = 0, []
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        mx = _X_RE.match(body, pos)
        if not mx:
            raise KnotParseError("expected X[a,b,c,d]", offset + pos)
        parts = [s.strip() for s in mx.group(1).split(",")]
        if len(parts) != 4 or not all(s.isdigit() and int(s) > 0 for s in parts):
            raise KnotParseError("crossing needs four positive integer labels", offset + mx.start(1))
        crossings.append(tuple(int(s) for s in parts))
        pos = mx.end()
        if pos < len(body):
            if body[pos] != ",":
                raise KnotParseError("expected ',' between crossings", offset + pos)
            pos += 1
            if body[pos:].strip() == "":
                raise KnotParseError("trailing ','", offset + pos - 1)
    pd = PDCode(tuple(crossings))
    pd.orientation  # validates single component and orientation
    return pd


def braid_to_pd(b: BraidWord) -> PDCode:
    """PD code of the closure of a braid.

    The strand moving from position ``i`` to ``i+1`` passes over at
    ``s_i`` and under at ``s_i^-1``, so positive letters are positive
    crossings.  Edges are renumbered consecutively along the knot.

    The empty word is read as the crossing-free diagram of the unknot for
    any strand count.
    """
    if not b.letters:
        return PDCode(())
    if b.closure_components() != 1:
        raise DiagramError("link closures unsupported: braid closure has several components")
    label = list(range(b.strands))
    nxt_label = b.strands
    raw = []
    for x in b.letters:
        i = abs(x) - 1
        a, bb = label[i], label[i + 1]
        c, d = nxt_label, nxt_label + 1
        nxt_label += 2
        if x > 0:
            raw.append((bb, d, c, a))
        else:
            raw.append((a, bb, d, c))
        label[i], label[i + 1] = c, d
    # closure: final label at each position is glued to the initial one
    alias = {label[p]: p for p in range(b.strands)}
    crossings = [tuple(alias.get(v, v) for v in x) for x in raw]
    return _renumber(PDCode(tuple(crossings)))


def _renumber(pd: PDCode) -> PDCode:
    """Relabel edges 1..2n in the order they are traversed."""
    if not pd.crossings:
        return pd
    where: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(pd.crossings):
        for p, v in enumerate(x):
            where.setdefault(v, []).append((c, p))
    new: dict[int, int] = {}
    c, p = 0, 0
    while True:
        q = (p + 2) % 4
        lab = pd.crossings[c][q]
        if lab in new:
            break
        new[lab] = len(new) + 1
        c, p = [s for s in where[lab] if s != (c, q)][0]
    return PDCode(tuple(tuple(new[v] for v in x) for x in pd.crossings))


# ---------------------------------------------------------------------------
# Wirtinger presentation and Fox calculus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WirtingerPresentation:
    """Knot group presentation with one meridian generator per arc.

    ``relators`` holds all crossing relators, ``retained`` the deficiency-one
    subset actually used (the relator of highest index is dropped).
    """

    generator_count: int
    relators: tuple[GroupWord, ...]
    meridian_index: int = 0

    @property
    def retained(self) -> tuple[GroupWord, ...]:
        return self.relators[:-1]

    @property
    def phi(self) -> AbelianizationMap:
        return AbelianizationMap((1,) * self.generator_count)

    def is_trivial_group(self) -> bool:
        """True when the relators collapse the presentation to a single generator.

        Only identifications of the form ``x_a = x_b`` are followed, which
        is enough for diagrams made of Reidemeister-I curls.
        """
        parent = list(range(self.generator_count))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        changed = True
        while changed:
            changed = False
            for r in self.relators:
                w = GroupWord(tuple((find(g), e) for g, e in r.letters))
                if len(w.letters) == 2:
                    (g1, e1), (g2, e2) = w.letters
                    if abs(e1) == 1 and e1 == -e2 and find(g1) != find(g2):
                        parent[find(g1)] = find(g2)
                        changed = True
        return len({find(a) for a in range(self.generator_count)}) == 1


def wirtinger(pd: PDCode) -> WirtingerPresentation:
    """Wirtinger presentation of a knot diagram.

    At a crossing with incoming under-arc ``x_i``, outgoing under-arc
    ``x_j``, over-arc ``x_k`` and sign ``e`` the relator is
    ``x_k^e x_i x_k^-e x_j^-1``.
    """
    n = len(pd.crossings)
    if n == 0:
        return WirtingerPresentation(1, ())
    signs, over = pd.orientation
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            a = parent[a]
        return a

    for x in pd.crossings:
        for v in x:
            find(v)
        parent[find(x[1])] = find(x[3])
    # arcs numbered in order of first appearance along the knot
    order: dict[int, int] = {}
    for lab in sorted(parent):
        root = find(lab)
        if root not in order:
            order[root] = len(order)
    arc = {lab: order[find(lab)] for lab in parent}
    if len(order) != n:
        raise DiagramError(f"expected {n} arcs, found {len(order)}")
    relators = []
    for x, e in zip(pd.crossings, signs):
        i, j, k = arc[x[0]], arc[x[2]], arc[x[1]]
        relators.append(GroupWord(((k, e), (i, 1), (k, -e), (j, -1))))
    return WirtingerPresentation(n, tuple(relators))


def fox_derivative(w: GroupWord, k: int) -> RingElement:
    """Fox free derivative ``d w / d x_k``."""
    terms: dict[GroupWord, complex] = {}
    prefix = GroupWord.identity()
    for g, e in w.letters:
        if g == k:
            if e > 0:
                for s in range(e):
                    u = prefix * GroupWord.gen(g, s)
                    terms[u] = terms.get(u, 0) + 1
            else:
                for s in range(1, -e + 1):
                    u = prefix * GroupWord.gen(g, -s)
                    terms[u] = terms.get(u, 0) - 1
        prefix = prefix * GroupWord.gen(g, e)
    return RingElement(terms)


def fox_matrix(P: WirtingerPresentation, relators: Sequence[GroupWord] | None = None
               ) -> list[list[RingElement]]:
    rels = P.retained if relators is None else relators
    return [[fox_derivative(r, k) for k in range(P.generator_count)] for r in rels]


def presentation_complex(P: WirtingerPresentation, t: float) -> BasedChainComplex:
    """``0 -> C[Z]^(n-1) -> C[Z]^n -> C[Z] -> 0`` from the Fox matrix.

    ``A_2`` is the Fox matrix under ``g -> t^phi(g) z^phi(g)`` and ``A_1``
    the column ``(t z - 1)`` repeated once per generator.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    n = P.generator_count
    rows = fox_matrix(P)
    A2 = matrix_specialize(rows, P.phi, t, shape=(len(rows), n))
    A1 = LaurentMatrix.from_entries(
        [[specialize(GroupWord.gen(g), P.phi, t) - 1] for g in range(n)], shape=(n, 1))
    try:
        return BasedChainComplex((1, n, len(rows)), (A1, A2), t=t)
    except ChainComplexError as exc:
        raise ChainComplexError(f"Fox identity violated: {exc}") from exc


def alexander_polynomial(P: WirtingerPresentation, column: int | None = None) -> LaurentPoly:
    """Alexander polynomial from the Fox matrix with one generator column deleted.

    Normalized to lowest exponent 0 and positive leading coefficient;
    coefficients are rounded to integers.
    """
    col = P.meridian_index if column is None else column
    M = matrix_specialize(fox_matrix(P), P.phi, 1.0,
                          shape=(len(P.retained), P.generator_count)).delete_col(col)
    det = laurent_det(M)
    if det.is_zero():
        raise ChainComplexError("presentation degenerate: Alexander determinant vanishes")
    return normalize_alexander(det)


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    c = np.array(p.coeffs)
    rounded = np.round(c.real)
    if np.all(np.abs(c - rounded) < 1e-6):
        c = rounded.astype(complex)
    if c[-1].real < 0:
        c = -c
    return LaurentPoly(c, 0)


def alexander_coefficients(p: LaurentPoly) -> list[int | complex]:
    out = []
    for c in p.coeffs:
        out.append(int(c.real) if c.imag == 0 and float(c.real).is_integer() else complex(c))
    return out


def is_alexander_symmetric(p: LaurentPoly) -> bool:
    """``Delta(1/z) = +-z^-d Delta(z)``: the coefficient list is a (signed) palindrome."""
    c = np.asarray(p.coeffs)
    return bool(np.allclose(c, c[::-1]) or np.allclose(c, -c[::-1]))


# ---------------------------------------------------------------------------
# bundled knots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnotRecord:
    name: str
    braid: BraidWord | None = None
    pd: PDCode | None = None
    fibered: bool | None = None
    genus_input: int | None = None

    @cached_property
    def diagram(self) -> PDCode:
        if self.pd is not None:
            return self.pd
        if self.braid is None:
            raise DiagramError(f"knot {self.name!r} has neither braid nor PD input")
        return braid_to_pd(self.braid)

    @cached_property
    def presentation(self) -> WirtingerPresentation:
        return wirtinger(self.diagram)

    @cached_property
    def alexander(self) -> LaurentPoly:
        return alexander_polynomial(self.presentation)

    @property
    def genus(self) -> int | None:
        """Explicit genus if given, else half the degree span of Delta for fibered knots."""
        if self.genus_input is not None:
            return self.genus_input
        if self.fibered:
            span = self.alexander.span
            if span % 2:
                raise DiagramError(f"fibered knot {self.name!r} with odd Alexander span {span}")
            return span // 2
        return None


KNOTS = {
    "trefoil": KnotRecord("trefoil", braid=parse_braid("strands=2; s1 s1 s1"), fibered=True),
    "figure-eight": KnotRecord("figure-eight", braid=parse_braid("strands=3; s1 s2^-1 s1 s2^-1"),
                               fibered=True),
}


def get_knot(name: str) -> KnotRecord:
    try:
        return KNOTS[name]
    except KeyError:
        raise KeyError(f"unknown knot {name!r}; bundled knots: {', '.join(sorted(KNOTS))}") from None
