"""Oriented cubical cell complexes and their integer homology.

Two input modes share one internal representation:

* embedded: elementary cubes on the integer lattice Z^n, optionally with
  per-axis periods (bases are reduced modulo the period, so identification
  is purely syntactic);
* abstract: named cells with explicit signed face lists, which can express
  gluings with flips (Moebius strip, Klein bottle).

Internally every cell key maps to its list of *face occurrences*
``(sign, face_key)``; the boundary coefficient of a face is the sum of its
occurrences. Keeping occurrences (rather than summed coefficients) is what
lets :func:`orient` see a face glued to the same cell twice.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .permcalc import Sign, deletion_sign
from .smith import diagonal_entries, divisibility_chain


class ComplexValidationError(ValueError):
    """The complex violates a structural invariant (see :func:`validate_complex`)."""

    def __init__(self, message: str, diagnostics: "Diagnostics | None" = None):
        super().__init__(message)
        self.diagnostics = diagnostics


class NotManifoldError(ValueError):
    """Some codimension-one face meets three or more top cells."""


@dataclass(frozen=True, order=True)
class ElementaryCube:
    """Axis-aligned unit cell: ``base + sum(t_i e_{a_i})`` with 0 <= t_i <= 1."""

    base: tuple[int, ...]
    axes: tuple[int, ...] = ()

    def __post_init__(self):
        base = tuple(int(b) for b in self.base)
        axes = tuple(int(a) for a in self.axes)
        if any(b <= a for a, b in zip(axes, axes[1:])):
            raise ValueError(f"axes must be strictly increasing, got {axes}")
        if axes and (axes[0] < 1 or axes[-1] > len(base)):
            raise ValueError(f"axes {axes} outside 1..{len(base)}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "axes", axes)

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def grade(self) -> int:
        return len(self.axes)

    def reduced(self, moduli: Sequence[int] | None) -> "ElementaryCube":
        if not moduli:
            return self
        return ElementaryCube(tuple(b % p if p else b for b, p in zip(self.base, moduli)), self.axes)

    def __str__(self) -> str:
        return f"[{self.base},{self.axes}]"


def faces(c: ElementaryCube, moduli: Sequence[int] | None = None) -> list[tuple[Sign, ElementaryCube]]:
    """Signed facets of a cube.

    For the j-th spanned axis the lower facet (same base) carries the
    deletion sign of j in the axis list and the opposite upper facet (base
    shifted along j) carries the opposite sign.
    """
    if c.grade == 0:
        raise ValueError("a vertex has no faces")
    out = []
    for j in c.axes:
        s = deletion_sign(c.axes, j)
        rest = tuple(a for a in c.axes if a != j)
        lower = ElementaryCube(c.base, rest)
        shifted = list(c.base)
        shifted[j - 1] += 1
        upper = ElementaryCube(tuple(shifted), rest)
        out.append((s, lower.reduced(moduli)))
        out.append((-s, upper.reduced(moduli)))
    return out


@dataclass
class IntegerChain:
    """Finite formal Z-combination of cells of one grade."""

    grade: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: int(v) for k, v in self.terms.items() if v}

    def __add__(self, other: "IntegerChain") -> "IntegerChain":
        if self.grade != other.grade:
            raise ValueError("cannot add chains of different grades")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return IntegerChain(self.grade, out)

    def __mul__(self, k: int) -> "IntegerChain":
        return IntegerChain(self.grade, {c: k * v for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group(self, k: int) -> str:
        parts = []
        b = self.betti[k]
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts.extend(f"Z/{t}" for t in self.torsion[k])
        return "+".join(parts) if parts else "0"

    def __str__(self) -> str:
        return " ".join(f"H{k}={self.group(k)}" for k in range(len(self.betti)))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))


class CubicalComplex:
    """Cell complex with signed incidences, in embedded or abstract mode.

    Use :meth:`embedded` or :meth:`abstract` (or :func:`parse_complex`)
    rather than calling the constructor.
    """

    def __init__(self, n: int, mode: str):
        if mode not in ("embedded", "abstract"):
            raise ValueError(f"unknown mode {mode!r}")
        self.n = n
        self.mode = mode
        self.moduli: tuple[int, ...] | None = None
        self.scale: float | None = None
        # cells[k] lists grade-k keys in canonical order
        self.cells: dict[int, list] = {}
        self.occurrences: dict[Hashable, list[tuple[Sign, Hashable]]] = {}
        self.grade_of: dict[Hashable, int] = {}
        # as given, kept for round-tripping and diagnostics
        self.generators: list = []
        self.face_lines: list[tuple[str, Sign, str]] = []
        self.duplicates: list = []
        self.unknown_faces: list = []
        self.grade_errors: list = []

    # construction ---------------------------------------------------------
    @classmethod
    def embedded(cls, n: int, cubes: Iterable, moduli: Sequence[int] | None = None, scale: float | None = None):
        cx = cls(n, "embedded")
        if moduli is not None:
            moduli = tuple(int(p) for p in moduli)
            if len(moduli) != n or any(p < 0 for p in moduli):
                raise ValueError(f"need {n} non-negative periods, got {moduli}")
            if not any(moduli):
                moduli = None
        cx.moduli = moduli
        cx.scale = scale
        seen = set()
        todo = []
        for c in cubes:
            if not isinstance(c, ElementaryCube):
                c = ElementaryCube(*c)
            if c.n != n:
                raise ValueError(f"cube {c} is not in dimension {n}")
            cx.generators.append(c)
            r = c.reduced(moduli)
            if r in seen:
                cx.duplicates.append(r)
                continue
            seen.add(r)
            todo.append(r)
        while todo:
            c = todo.pop()
            cx.grade_of[c] = c.grade
            if c.grade == 0:
                cx.occurrences[c] = []
                continue
            fs = faces(c, moduli)
            cx.occurrences[c] = fs
            for _, f in fs:
                if f not in seen:
                    seen.add(f)
                    todo.append(f)
        for k in range(max((c.grade for c in cx.grade_of), default=-1) + 1):
            cx.cells[k] = sorted(c for c, g in cx.grade_of.items() if g == k)
        return cx

    @classmethod
    def abstract(cls, n: int, cells: Iterable[tuple[int, str]], face_lines: Iterable[tuple[str, int, str]]):
        """Build from ``(grade, id)`` declarations and ``(id, sign, face_id)`` incidences."""
        cx = cls(n, "abstract")
        order: dict[int, list] = {}
        for grade, cid in cells:
            grade = int(grade)
            if grade < 0 or grade > n:
                raise ValueError(f"cell {cid!r} has grade {grade} outside 0..{n}")
            cx.generators.append((grade, cid))
            if cid in cx.grade_of:
                cx.duplicates.append(cid)
                continue
            cx.grade_of[cid] = grade
            cx.occurrences[cid] = []
            order.setdefault(grade, []).append(cid)
        for cid, sign, fid in face_lines:
            sign = sign if isinstance(sign, Sign) else Sign(int(sign))
            cx.face_lines.append((cid, sign, fid))
            if cid not in cx.grade_of or fid not in cx.grade_of:
                cx.unknown_faces.append((cid, fid))
                continue
            if cx.grade_of[fid] != cx.grade_of[cid] - 1:
                cx.grade_errors.append((cid, fid))
                continue
            cx.occurrences[cid].append((sign, fid))
        top = max(order, default=-1)
        for k in range(top + 1):
            cx.cells[k] = order.get(k, [])
        return cx

    # queries ----------------------------------------------------------------
    @property
    def top_grade(self) -> int:
        return max(self.cells, default=-1)

    def count(self, k: int) -> int:
        return len(self.cells.get(k, ()))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.count(k) for k in range(self.top_grade + 1))

    def key(self, cell) -> Hashable:
        """Normalize a user-supplied cell (cube, tuple or id) to its key."""
        if self.mode == "embedded":
            if not isinstance(cell, ElementaryCube):
                cell = ElementaryCube(*cell)
            return cell.reduced(self.moduli)
        return cell

    def __contains__(self, cell) -> bool:
        try:
            return self.key(cell) in self.grade_of
        except (TypeError, ValueError):
            return False

    def boundary_coefficients(self, cell) -> dict:
        out: dict = {}
        for s, f in self.occurrences[self.key(cell)]:
            out[f] = out.get(f, 0) + int(s)
        return {f: v for f, v in out.items() if v}

    def position(self, cell) -> int:
        k = self.key(cell)
        return self.cells[self.grade_of[k]].index(k)

    def __repr__(self) -> str:
        return f"CubicalComplex(n={self.n}, mode={self.mode!r}, cells={self.f_vector()})"


def boundary_chain(ch: IntegerChain, cx: CubicalComplex) -> IntegerChain:
    """Boundary of an integer chain, collected over identified cells."""
    out: dict = {}
    for cell, z in ch.terms.items():
        key = cx.key(cell)
        if key not in cx.grade_of or cx.grade_of[key] != ch.grade:
            raise ValueError(f"cell {cell} is not a grade-{ch.grade} cell of the complex")
        for s, f in cx.occurrences[key]:
            out[f] = out.get(f, 0) + int(s) * z
    return IntegerChain(ch.grade - 1, out)


def boundary_matrix(cx: CubicalComplex, k: int) -> np.ndarray:
    """Incidence matrix of the grade-k boundary: rows (k-1)-cells, columns k-cells."""
    if not 1 <= k <= cx.top_grade:
        raise ValueError(f"grade {k} outside 1..{cx.top_grade}")
    rows = {c: i for i, c in enumerate(cx.cells[k - 1])}
    cols = cx.cells[k]
    D = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        for s, f in cx.occurrences[c]:
            D[rows[f], j] += int(s)
    return D


# validation -------------------------------------------------------------------

@dataclass
class Diagnostics:
    duplicates: list = field(default_factory=list)
    unknown_faces: list = field(default_factory=list)
    grade_errors: list = field(default_factory=list)
    boundary_squared_nonzero: list = field(default_factory=list)
    overfull_faces: list = field(default_factory=list)
    connected: bool = True
    components: int = 1

    @property
    def ok(self) -> bool:
        """Structurally sound (a valid chain complex)."""
        return not (self.duplicates or self.unknown_faces or self.grade_errors or self.boundary_squared_nonzero)

    @property
    def manifold(self) -> bool:
        return self.ok and not self.overfull_faces

    def lines(self) -> list[str]:
        out = []
        if self.duplicates:
            out.append(f"duplicate cells: {', '.join(map(str, self.duplicates))}")
        if self.unknown_faces:
            out.append(f"unknown cells in face lines: {self.unknown_faces}")
        if self.grade_errors:
            out.append(f"faces of wrong grade: {self.grade_errors}")
        if self.boundary_squared_nonzero:
            out.append(f"boundary of boundary nonzero at: {', '.join(map(str, self.boundary_squared_nonzero))}")
        if self.overfull_faces:
            out.append(f"faces with more than two top cofaces: {', '.join(map(str, self.overfull_faces))}")
        out.append(f"connected: {'yes' if self.connected else 'no'} ({self.components} component(s))")
        return out


def _top_face_occurrences(cx: CubicalComplex) -> dict:
    """face -> list of (top cell, sign) over all occurrences."""
    occ: dict = {}
    for c in cx.cells.get(cx.top_grade, []):
        for s, f in cx.occurrences[c]:
            occ.setdefault(f, []).append((c, s))
    return occ


def _top_components(cx: CubicalComplex, occ: Mapping) -> int:
    top = cx.cells.get(cx.top_grade, [])
    parent = {c: c for c in top}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for pairs in occ.values():
        first = find(pairs[0][0])
        for c, _ in pairs[1:]:
            r = find(c)
            if r != first:
                parent[r] = first
    return len({find(c) for c in top})


def validate_complex(cx: CubicalComplex) -> Diagnostics:
    """Report structural problems; never raises."""
    d = Diagnostics(
        duplicates=list(cx.duplicates),
        unknown_faces=list(cx.unknown_faces),
        grade_errors=list(cx.grade_errors),
    )
    for k in range(2, cx.top_grade + 1):
        for c in cx.cells[k]:
            total: dict = {}
            for s, f in cx.occurrences[c]:
                for t, g in cx.occurrences[f]:
                    total[g] = total.get(g, 0) + int(s) * int(t)
            if any(total.values()):
                d.boundary_squared_nonzero.append(c)
    occ = _top_face_occurrences(cx)
    d.overfull_faces = [f for f, pairs in occ.items() if len(pairs) > 2]
    d.components = _top_components(cx, occ)
    d.connected = d.components <= 1
    return d


def _require_valid(cx: CubicalComplex) -> Diagnostics:
    d = validate_complex(cx)
    if not d.ok:
        raise ComplexValidationError("; ".join(d.lines()), d)
    return d


# homology ------------------------------------------------------------------

def homology(cx: CubicalComplex) -> HomologyResult:
    """Betti numbers and torsion coefficients over Z, grades 0..top."""
    _require_valid(cx)
    top = cx.top_grade
    if top < 0:
        return HomologyResult((), ())
    factors = {k: divisibility_chain(diagonal_entries(boundary_matrix(cx, k))) for k in range(1, top + 1)}
    betti, torsion = [], []
    for k in range(top + 1):
        rk_k = len(factors.get(k, ()))
        nxt = factors.get(k + 1, [])
        betti.append(cx.count(k) - rk_k - len(nxt))
        torsion.append(tuple(f for f in nxt if f > 1))
    return HomologyResult(tuple(betti), tuple(torsion))


def euler_characteristic(cx: CubicalComplex) -> int:
    return sum((-1) ** k * cx.count(k) for k in range(cx.top_grade + 1))


# orientation -------------------------------------------------------------------

@dataclass
class OrientationResult:
    orientable: bool
    sigma: dict = field(default_factory=dict)
    witness: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.orientable


def orient(cx: CubicalComplex) -> OrientationResult:
    """Choose signs on top cells so that every shared facet cancels.

    Returns the assignment, or a cycle of top cells along which the sign
    constraints are contradictory. A facet glued to a single cell twice with
    the same sign is reported as a one-cell witness.
    """
    occ = _top_face_occurrences(cx)
    bad = [f for f, pairs in occ.items() if len(pairs) > 2]
    if bad:
        raise NotManifoldError(f"faces with three or more top cofaces: {', '.join(map(str, bad[:5]))}")
    top = cx.cells.get(cx.top_grade, [])
    # sigma[c2] = rel * sigma[c1]
    adj: dict = {c: [] for c in top}
    for f, pairs in occ.items():
        if len(pairs) != 2:
            continue
        (c1, s1), (c2, s2) = pairs
        rel = -(s1 * s2)
        if c1 == c2:
            if rel is Sign.MINUS:
                return OrientationResult(False, {}, [c1])
            continue
        adj[c1].append((c2, rel))
        adj[c2].append((c1, rel))
    sigma: dict = {}
    parent: dict = {}
    for root in top:
        if root in sigma:
            continue
        sigma[root] = Sign.PLUS
        parent[root] = None
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for nb, rel in adj[c]:
                want = rel * sigma[c]
                if nb not in sigma:
                    sigma[nb] = want
                    parent[nb] = c
                    queue.append(nb)
                elif sigma[nb] is not want:
                    return OrientationResult(False, {}, _cycle(parent, c, nb))
    return OrientationResult(True, sigma, [])


def _cycle(parent: Mapping, a, b) -> list:
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pa, pb = path(a), path(b)
    common = set(pa) & set(pb)
    left = []
    for x in pa:
        left.append(x)
        if x in common:
            break
    right = []
    for x in pb:
        if x in common:
            break
        right.append(x)
    # a ... lca ... b, closed by the offending facet between b and a
    return left + right[::-1]


def oriented_boundary(cx: CubicalComplex, sigma: Mapping | None = None) -> IntegerChain:
    """Boundary of the top cells weighted by ``sigma`` (all +1 by default)."""
    top = cx.top_grade
    terms = {c: int(sigma[c]) if sigma else 1 for c in cx.cells.get(top, [])}
    return boundary_chain(IntegerChain(top, terms), cx)


# subdivision ---------------------------------------------------------------

def subdivide(cx: CubicalComplex, axis: int) -> CubicalComplex:
    """Split every generating cube in half along ``axis`` (embedded mode)."""
    if cx.mode != "embedded":
        raise ValueError("subdivision is defined for embedded complexes; rebuild abstract ones at finer resolution")
    if not 1 <= axis <= cx.n:
        raise ValueError(f"axis {axis} outside 1..{cx.n}")
    out = []
    for c in cx.generators:
        base = list(c.base)
        base[axis - 1] *= 2
        out.append(ElementaryCube(tuple(base), c.axes))
        if axis in c.axes:
            base[axis - 1] += 1
            out.append(ElementaryCube(tuple(base), c.axes))
    moduli = None
    if cx.moduli:
        moduli = tuple(p * 2 if i == axis - 1 else p for i, p in enumerate(cx.moduli))
    return CubicalComplex.embedded(cx.n, out, moduli)


def unit_cube_surface(m: int) -> list[ElementaryCube]:
    """The 2m facets of the unit m-cube, as embedded cubes."""
    full = tuple(range(1, m + 1))
    return [f for _, f in faces(ElementaryCube((0,) * m, full))]
