"""Differential forms sampled at points, contracted with small parallelepipeds.

Sign conventions:

* ``interior_product`` moves the contracted index to the end (deletion sign);
* ``wedge_1form`` appends the 1-form index, ``a ^ b`` (insertion sign);
* ``exterior_derivative`` is the usual ``sum da_J ^ dx^J``, so the new index
  is inserted in front, which differs from the insertion sign by ``(-1)**m``.

Integration is the sum of contractions of the form, evaluated at each
piece's anchor (lower corner), with the multivector of the piece.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Mapping, Sequence

import numpy as np

from .cubical import CubicalComplex, faces, orient
from .exterior import Multivector, VectorSystem, cross, gram_volume, inner, is_dependent, wedge
from .permcalc import Sign, deletion_sign, insertion_sign, sequence_sign
from .polynomial import Polynomial


class FormField:
    """Field of m-forms on R^n given by coefficient functions ``a_J(x)``.

    ``components`` maps ordered index tuples to callables of a point (or to
    constants); missing components are zero.
    """

    def __init__(self, n: int, m: int, components: Mapping):
        if not 0 <= m <= n:
            raise ValueError(f"grade {m} invalid in dimension {n}")
        self.n = n
        self.m = m
        self.components = {}
        for J, f in components.items():
            J = tuple(int(j) for j in J)
            if len(J) != m or any(b <= a for a, b in zip(J, J[1:])) or (J and (J[0] < 1 or J[-1] > n)):
                raise ValueError(f"{J} is not an ordered {m}-subset of 1..{n}")
            self.components[J] = f if callable(f) else _constant(f)

    @classmethod
    def constant(cls, w: Multivector) -> "FormField":
        return cls(w.n, w.m, dict(w.items()))

    @classmethod
    def from_polynomials(cls, n: int, m: int, table: Mapping[tuple, Polynomial]) -> "FormField":
        form = cls(n, m, table)
        form.polynomials = dict(table)
        return form

    def coefficient(self, x, J) -> float:
        f = self.components.get(tuple(J))
        return 0.0 if f is None else float(f(np.asarray(x, dtype=float)))

    def at(self, x) -> Multivector:
        x = np.asarray(x, dtype=float)
        return Multivector(self.n, self.m, {J: float(f(x)) for J, f in self.components.items()})

    def __repr__(self) -> str:
        return f"FormField(n={self.n}, m={self.m}, components={sorted(self.components)})"


def _constant(c):
    c = float(c)
    return lambda x: c


@dataclass
class SmallParallelepiped:
    anchor: np.ndarray
    edges: VectorSystem

    def __post_init__(self):
        self.anchor = np.asarray(self.anchor, dtype=float)
        if not isinstance(self.edges, VectorSystem):
            self.edges = VectorSystem([tuple(float(t) for t in v) for v in self.edges])
        if self.edges.n != len(self.anchor):
            raise ValueError("edge vectors and anchor differ in dimension")
        if is_dependent(self.edges, exact=False):
            raise ValueError("parallelepiped edges are linearly dependent")

    @property
    def grade(self) -> int:
        return self.edges.m

    def multivector(self) -> Multivector:
        return wedge(self.edges, exact=False)

    def midpoint(self) -> np.ndarray:
        return self.anchor + 0.5 * np.sum(np.asarray(self.edges.vectors, dtype=float), axis=0)


@dataclass
class IntegralSurface:
    """Finite union of small parallelepipeds of one grade in R^n."""

    pieces: list = field(default_factory=list)
    n: int | None = None
    m: int | None = None
    shared_faces: list | None = None

    def __post_init__(self):
        self.pieces = list(self.pieces)
        if self.pieces:
            ns = {len(p.anchor) for p in self.pieces}
            ms = {p.grade for p in self.pieces}
            if len(ns) > 1 or len(ms) > 1:
                raise ValueError("pieces of an integral surface must share dimension and grade")
            n, m = ns.pop(), ms.pop()
            if (self.n not in (None, n)) or (self.m not in (None, m)):
                raise ValueError("declared dimension/grade disagree with the pieces")
            self.n, self.m = n, m

    def __len__(self) -> int:
        return len(self.pieces)

    def __add__(self, other: "IntegralSurface") -> "IntegralSurface":
        return IntegralSurface(self.pieces + other.pieces, self.n or other.n, self.m if self.m is not None else other.m)


def surface_from_complex(cx: CubicalComplex, h: float, origin=None, sigma: Mapping | None = None) -> IntegralSurface:
    """Pieces for the top cells of an embedded complex scaled by ``h``.

    A cell with sign -1 in ``sigma`` gets its first two edges swapped (or,
    for segments, is traversed from its far end).
    """
    if cx.mode != "embedded":
        raise ValueError("only embedded complexes have a geometric realization")
    origin = np.zeros(cx.n) if origin is None else np.asarray(origin, dtype=float)
    top = cx.top_grade
    pieces = []
    for c in cx.cells.get(top, []):
        anchor = origin + h * np.asarray(c.base, dtype=float)
        edges = [tuple(h if i == a - 1 else 0.0 for i in range(cx.n)) for a in c.axes]
        if sigma is not None and sigma[c] is Sign.MINUS:
            if top == 1:
                anchor = anchor + np.asarray(edges[0])
                edges = [tuple(-t for t in edges[0])]
            elif top >= 2:
                edges[0], edges[1] = edges[1], edges[0]
            else:
                raise ValueError("points cannot carry an orientation")
        pieces.append(SmallParallelepiped(anchor, VectorSystem(edges, cx.n)))
    return IntegralSurface(pieces, cx.n, top)


# pointwise algebra -----------------------------------------------------------

def contract(a: FormField, x, w: Multivector) -> float:
    """Contraction of the form at ``x`` with a multivector of the same grade."""
    if (a.n, a.m) != (w.n, w.m):
        raise ValueError(f"cannot contract a grade-{a.m} form in R^{a.n} with a grade-{w.m} multivector in R^{w.n}")
    return float(sum(a.coefficient(x, J) * c for J, c in w.items()))


def default_step(x) -> float:
    return 1e-5 * max(1.0, float(np.max(np.abs(x))) if np.size(x) else 1.0)


def exterior_derivative(a: FormField, x, h: float | None = None) -> Multivector:
    """Coefficients of ``da`` at ``x`` by central differences with step ``h``."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = default_step(x)
    if h <= 0:
        raise ValueError("step must be positive")
    if a.m == a.n:
        return Multivector(a.n, a.n)
    out: dict = {}
    for J, f in a.components.items():
        for i in range(1, a.n + 1):
            if i in J:
                continue
            e = np.zeros(a.n)
            e[i - 1] = h
            deriv = (float(f(x + e)) - float(f(x - e))) / (2 * h)
            K = tuple(sorted(J + (i,)))
            out[K] = out.get(K, 0.0) + sequence_sign((i,) + J) * deriv
    return Multivector(a.n, a.m + 1, out)


def _vector_at(b, x) -> np.ndarray:
    return np.asarray(b(x) if callable(b) else b, dtype=float)


def interior_product(a: FormField, b, x) -> Multivector:
    """Contract the form at ``x`` with the vector ``b`` (a vector or a callable)."""
    if a.m == 0:
        raise ValueError("interior product of a 0-form is undefined")
    x = np.asarray(x, dtype=float)
    bx = _vector_at(b, x)
    out: dict = {}
    for J in a.components:
        aJ = a.coefficient(x, J)
        for i in J:
            K = tuple(j for j in J if j != i)
            out[K] = out.get(K, 0.0) + deletion_sign(J, i) * (bx[i - 1] * aJ)
    return Multivector(a.n, a.m - 1, out)


def wedge_1form(a: FormField, b: FormField, x) -> Multivector:
    """``a ^ b`` at ``x`` for an m-form ``a`` and a 1-form ``b``."""
    if b.m != 1 or a.n != b.n:
        raise ValueError("second factor must be a 1-form in the same dimension")
    if a.m == a.n:
        return Multivector(a.n, a.n)
    x = np.asarray(x, dtype=float)
    out: dict = {}
    for J in a.components:
        aJ = a.coefficient(x, J)
        for (i,) in b.components:
            if i in J:
                continue
            K = tuple(sorted(J + (i,)))
            out[K] = out.get(K, 0.0) + insertion_sign(J, i) * (b.coefficient(x, (i,)) * aJ)
    return Multivector(a.n, a.m + 1, out)


def _wedge_or_unit(n: int, vectors: list) -> Multivector:
    if not vectors:
        return Multivector(n, 0, {(): 1.0})
    return wedge(VectorSystem(vectors, n), exact=False)


def prop5_sides(a: FormField, x, dxs: Sequence, h: float | None = None) -> tuple[float, float]:
    """Both sides of the first-order identity for ``da`` on a small parallelepiped.

    Left: ``<da(x), v_1 ^ ... ^ v_{m+1}>``. Right: the sum over edges ``v_j`` of
    ``<a(x + v_j) - a(x), face_j>`` where ``face_j`` is the wedge of the other
    edges with ``v_j`` moved to the front, i.e. sign ``(-1)**(j-1)``.
    """
    x = np.asarray(x, dtype=float)
    vs = [tuple(float(t) for t in v) for v in dxs]
    if len(vs) != a.m + 1:
        raise ValueError(f"need {a.m + 1} edge vectors for a grade-{a.m} form")
    big = wedge(VectorSystem(vs, a.n), exact=False)
    scale = max(abs(t) for v in vs for t in v)
    if scale == 0 or big.max_abs() <= 1e-12 * scale ** len(vs):
        raise ValueError("edge vectors span a degenerate parallelepiped")
    lhs = inner(exterior_derivative(a, x, h), big)
    rhs = 0.0
    a0 = a.at(x)
    for j, v in enumerate(vs):
        face = _wedge_or_unit(a.n, vs[:j] + vs[j + 1:])
        diff = a.at(x + np.asarray(v)) - a0
        rhs += Sign.of_parity(j) * inner(diff, face)
    return float(lhs), float(rhs)


def prop5_residual(a: FormField, x, dxs: Sequence, h: float | None = None, relative: bool = False) -> float:
    """``|LHS - RHS|`` of :func:`prop5_sides` (divided by ``|LHS|`` if ``relative``)."""
    lhs, rhs = prop5_sides(a, x, dxs, h)
    r = abs(lhs - rhs)
    if relative:
        return r / abs(lhs) if lhs else (0.0 if r == 0 else float("inf"))
    return r


# integration ---------------------------------------------------------------------

def integrate_surface(a: FormField, S: IntegralSurface, evaluation: str = "anchor") -> float:
    """Sum of contractions of ``a`` with each piece, in piece order."""
    if S.m is not None and S.m != a.m:
        raise ValueError(f"form grade {a.m} does not match surface grade {S.m}")
    if evaluation not in ("anchor", "midpoint"):
        raise ValueError(f"unknown evaluation point {evaluation!r}")
    total = 0.0
    for p in S.pieces:
        x = p.anchor if evaluation == "anchor" else p.midpoint()
        total += contract(a, x, p.multivector())
    return total


def vector_volume(S: IntegralSurface) -> Multivector:
    """Sum of the cross products of the pieces' edge systems."""
    if S.n is None or S.m is None:
        raise ValueError("an empty surface needs explicit n and m")
    total = Multivector(S.n, S.n - S.m)
    for p in S.pieces:
        total = total + cross(p.edges, exact=False)
    return total


def linear_volume(S: IntegralSurface) -> float:
    """Total length/area/volume of the pieces."""
    return float(sum(gram_volume(p.edges) for p in S.pieces))


# Stokes ------------------------------------------------------------------------

@dataclass(frozen=True)
class StokesResult:
    interior: float
    boundary: float

    @property
    def difference(self) -> float:
        return self.interior - self.boundary


def _basis_multivector(n: int, axes: tuple, scale: float) -> Multivector:
    return Multivector(n, len(axes), {axes: scale ** len(axes)})


def stokes_check(
    a: FormField,
    region: CubicalComplex,
    h: float,
    mode: str = "discrete",
    origin=None,
    evaluation: str = "anchor",
    fd_step: float | None = None,
) -> StokesResult:
    """Compare the integral of ``da`` over a region with that of ``a`` over its boundary.

    ``region`` is an embedded, non-periodic complex whose top cells have
    grade ``a.m + 1``; lattice coordinates are scaled by ``h`` and shifted by
    ``origin``. In ``"discrete"`` mode the interior sum of each cell is the
    signed sum over its facets, which telescopes exactly to the boundary
    sum. In ``"analytic"`` mode ``da`` comes from :func:`exterior_derivative`
    and agreement is first order in ``h``.

    The boundary orientation is the outward one, ``(-1)**m`` times the
    facet signs of :func:`faces` for cells of grade m.
    """
    if mode in ("analytic-fd", "analytic_fd"):
        mode = "analytic"
    if mode not in ("discrete", "analytic"):
        raise ValueError(f"unknown mode {mode!r}")
    if region.mode != "embedded" or region.moduli:
        raise ValueError("Stokes check needs an embedded, non-periodic region")
    m = region.top_grade
    if m != a.m + 1 or region.n != a.n:
        raise ValueError(
            f"a grade-{a.m} form in R^{a.n} needs a region of grade {a.m + 1} in R^{a.n}, got grade {m} in R^{region.n}"
        )
    if evaluation not in ("anchor", "midpoint"):
        raise ValueError(f"unknown evaluation point {evaluation!r}")
    o = orient(region)
    if not o:
        raise ValueError(f"region is not orientable (witness: {', '.join(map(str, o.witness))})")
    origin = np.zeros(region.n) if origin is None else np.asarray(origin, dtype=float)
    eps = Sign.of_parity(m)

    def point(c):
        p = origin + h * np.asarray(c.base, dtype=float)
        if evaluation == "midpoint":
            for ax in c.axes:
                p[ax - 1] += 0.5 * h
        return p

    def face_term(f):
        return contract(a, point(f), _basis_multivector(region.n, f.axes, h))

    face_cache: dict = {}

    def cached(f):
        if f not in face_cache:
            face_cache[f] = face_term(f)
        return face_cache[f]

    cells = region.cells[m]
    boundary_coef: dict = {}
    for c in cells:
        for s, f in faces(c):
            boundary_coef[f] = boundary_coef.get(f, 0) + int(o.sigma[c]) * int(s)
    boundary = 0.0
    for f in sorted(boundary_coef):
        if boundary_coef[f]:
            boundary += eps * (boundary_coef[f] * cached(f))

    interior = 0.0
    if mode == "discrete":
        for c in cells:
            local = sum(int(s) * cached(f) for s, f in faces(c))
            interior += int(o.sigma[c]) * (eps * local)
    else:
        for c in cells:
            da = exterior_derivative(a, point(c), fd_step)
            interior += int(o.sigma[c]) * inner(da, _basis_multivector(region.n, c.axes, h))
    return StokesResult(float(interior), float(boundary))
