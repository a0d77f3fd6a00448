"""Edge-classed framework graphs and their connected-sum algebra.

An elementary framework is labelled by a composition ``n = n_1 + ... + n_m``:
its graph is the 1-skeleton of the m-cube with every edge along direction i
replaced by ``n_i`` parallel edges carrying the i-th block of classes.
Sums of frameworks are multisets of compositions; the single-part
composition ``(n)`` (the sphere ``S^n``) is the neutral element.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Sequence

from .cubical import CubicalComplex
from .permcalc import Sign


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"a composition needs positive parts, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def canonical(self) -> "Composition":
        return Composition(tuple(sorted(self.parts)))

    def is_sphere(self) -> bool:
        return self.m == 1

    def class_blocks(self) -> list[tuple[int, ...]]:
        """Classes 1..n split into consecutive blocks of sizes n_1, ..., n_m."""
        blocks, start = [], 1
        for p in self.parts:
            blocks.append(tuple(range(start, start + p)))
            start += p
        return blocks

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.parts)) + ")"


def compositions(n: int) -> list[Composition]:
    """All ordered compositions of n (2**(n-1) of them)."""
    out = []
    for cuts in product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(Composition(tuple(parts)))
    return out


def partitions(n: int) -> list[Composition]:
    """Compositions of n up to order, each sorted ascending."""
    return sorted({c.canonical() for c in compositions(n)}, key=lambda c: c.parts)


@dataclass
class FrameworkGraph:
    n: int
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (u, v, cls)

    def degree_table(self) -> dict:
        table = {v: Counter() for v in self.vertices}
        for u, v, k in self.edges:
            if u in table:
                table[u][k] += 1
            if v in table and v != u:
                table[v][k] += 1
        return table


@dataclass
class FrameworkDiagnostics:
    valid: bool
    loops: list = field(default_factory=list)
    bad_classes: list = field(default_factory=list)
    missing: list = field(default_factory=list)  # (vertex, class, count)
    unknown_vertices: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate_framework(g: FrameworkGraph) -> FrameworkDiagnostics:
    """Loop-free, and each vertex meets exactly one edge of each class 1..n."""
    verts = set(g.vertices)
    d = FrameworkDiagnostics(valid=True)
    for e in g.edges:
        u, v, k = e
        if u == v:
            d.loops.append(e)
        if not 1 <= k <= g.n:
            d.bad_classes.append(e)
        for w in (u, v):
            if w not in verts:
                d.unknown_vertices.append(w)
    table = g.degree_table()
    for v in g.vertices:
        for k in range(1, g.n + 1):
            if table[v][k] != 1:
                d.missing.append((v, k, table[v][k]))
    d.valid = not (d.loops or d.bad_classes or d.missing or d.unknown_vertices)
    return d


def elementary_graph(c: Composition) -> FrameworkGraph:
    """Cube graph {0,1}^m with n_i parallel edges along direction i."""
    if not isinstance(c, Composition):
        c = Composition(tuple(c))
    blocks = c.class_blocks()
    verts = list(product((0, 1), repeat=c.m))
    edges = []
    for v in verts:
        for i, block in enumerate(blocks):
            if v[i] == 0:
                w = v[:i] + (1,) + v[i + 1:]
                edges.extend((v, w, k) for k in block)
    return FrameworkGraph(c.n, verts, edges)


def sphere_graph(n: int) -> FrameworkGraph:
    return elementary_graph(Composition((n,)))


@dataclass(frozen=True)
class FrameworkSum:
    """Element of the framework monoid: a multiset of non-sphere compositions of n."""

    n: int
    terms: tuple[Composition, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        terms = []
        for t in self.terms:
            if not isinstance(t, Composition):
                t = Composition(tuple(t))
            if t.n != self.n:
                raise ValueError(f"term {t} does not sum to {self.n}")
            t = t.canonical()
            if not t.is_sphere():
                terms.append(t)
        object.__setattr__(self, "terms", tuple(sorted(terms, key=lambda t: t.parts)))

    @classmethod
    def sphere(cls, n: int) -> "FrameworkSum":
        return cls(n, ())

    def multiplicities(self) -> Counter:
        return Counter(t.parts for t in self.terms)

    def __add__(self, other: "FrameworkSum") -> "FrameworkSum":
        return connected_sum(self, other)

    def __str__(self) -> str:
        return " + ".join(map(str, self.terms)) if self.terms else f"S{self.n}"


def connected_sum(a: FrameworkSum, b: FrameworkSum) -> FrameworkSum:
    if a.n != b.n:
        raise ValueError(f"cannot add frameworks of dimensions {a.n} and {b.n}")
    return FrameworkSum(a.n, a.terms + b.terms)


def splice(g1: FrameworkGraph, g2: FrameworkGraph, u=None, w=None) -> FrameworkGraph:
    """Cut all edges at ``u`` in g1 and ``w`` in g2, then join the loose ends class by class.

    Defaults to the smallest vertex of each graph. Vertex ids of the two
    graphs must be disjoint.
    """
    if g1.n != g2.n:
        raise ValueError("graphs have different class counts")
    if set(g1.vertices) & set(g2.vertices):
        raise ValueError("vertex ids of spliced graphs must be disjoint")
    u = min(g1.vertices) if u is None else u
    w = min(g2.vertices) if w is None else w

    def cut(g, x):
        ends, kept = {}, []
        for e in g.edges:
            a, b, k = e
            if x in (a, b):
                ends[k] = b if a == x else a
            else:
                kept.append(e)
        return ends, kept

    ends1, kept1 = cut(g1, u)
    ends2, kept2 = cut(g2, w)
    joined = [(ends1[k], ends2[k], k) for k in range(1, g1.n + 1)]
    verts = [v for v in g1.vertices if v != u] + [v for v in g2.vertices if v != w]
    return FrameworkGraph(g1.n, verts, kept1 + kept2 + joined)


def _relabel(g: FrameworkGraph, tag) -> FrameworkGraph:
    return FrameworkGraph(g.n, [(tag, v) for v in g.vertices], [((tag, a), (tag, b), k) for a, b, k in g.edges])


def sum_graph(a: FrameworkSum) -> FrameworkGraph:
    """Framework graph of a sum, splicing elementary graphs left to right."""
    if not a.terms:
        return _relabel(sphere_graph(a.n), 0)
    g = _relabel(elementary_graph(a.terms[0]), 0)
    for i, t in enumerate(a.terms[1:], start=1):
        g = splice(g, _relabel(elementary_graph(t), i))
    return g


def pi1_trivial(a: FrameworkSum) -> bool:
    """True iff no term has a circle factor (a part equal to 1)."""
    if not a.terms:
        return a.n >= 2
    return all(1 not in t.parts for t in a.terms)


def surface_complex(c: Composition) -> CubicalComplex:
    """Product cell structure of S^{n_1} x ... x S^{n_m} in abstract mode.

    Each sphere factor is one 0-cell plus one n_i-cell attached by the
    constant map; a circle's 1-cell has its single vertex as both ends. Cells
    of the product are indexed by the set of factors contributing their top
    cell, and the product boundary rule puts sign ``(-1)**(grade of earlier
    factors)`` on the circle facets.
    """
    if not isinstance(c, Composition):
        c = Composition(tuple(c))
    parts = c.parts
    cells = []
    face_lines = []

    def cid(choice):
        return "c" + "".join(map(str, choice))

    for choice in product((0, 1), repeat=len(parts)):
        grade = sum(p for p, on in zip(parts, choice) if on)
        cells.append((grade, cid(choice)))
        before = 0
        for i, (p, on) in enumerate(zip(parts, choice)):
            if on and p == 1:
                facet = choice[:i] + (0,) + choice[i + 1:]
                s = Sign.of_parity(before)
                # boundary of the circle cell is (vertex) - (vertex)
                face_lines.append((cid(choice), s, cid(facet)))
                face_lines.append((cid(choice), -s, cid(facet)))
            if on:
                before += p
    cells.sort(key=lambda gc: gc[0])
    return CubicalComplex.abstract(c.n, cells, face_lines)


def poincare_betti(c: Composition) -> tuple[int, ...]:
    """Betti numbers from the product of (1 + t**n_i)."""
    poly = [1]
    for p in c.parts:
        nxt = [0] * (len(poly) + p)
        for k, v in enumerate(poly):
            nxt[k] += v
            nxt[k + p] += v
        poly = nxt
    return tuple(poly)


def parse_sum(text: str, n: int | None = None) -> FrameworkSum:
    """Parse ``(1 2) + (3)``-style expressions; ``S<n>`` denotes the sphere."""
    terms = []
    dims = set()
    for chunk in text.replace("+", " + ").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.upper().startswith("S") and chunk[1:].isdigit():
            dims.add(int(chunk[1:]))
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"expected '(n1 n2 ...)' or 'S<n>', got {chunk!r}")
        c = Composition(tuple(int(t) for t in chunk[1:-1].split()))
        dims.add(c.n)
        terms.append(c)
    if n is not None:
        dims.add(n)
    if len(dims) != 1:
        raise ValueError(f"terms have inconsistent dimensions {sorted(dims)}" if dims else "empty framework sum")
    return FrameworkSum(dims.pop(), tuple(terms))
