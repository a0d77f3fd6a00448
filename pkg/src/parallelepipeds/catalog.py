"""Ready-made complexes used throughout the tests and demos."""
from __future__ import annotations

from .cubical import CubicalComplex, ElementaryCube, subdivide, unit_cube_surface
from .permcalc import Sign


def segment() -> CubicalComplex:
    return CubicalComplex.embedded(1, [ElementaryCube((0,), (1,))])


def solid_square() -> CubicalComplex:
    return CubicalComplex.embedded(2, [ElementaryCube((0, 0), (1, 2))])


def square_grid(k: int) -> CubicalComplex:
    """Unit square cut into k x k lattice squares (lattice spacing 1)."""
    return CubicalComplex.embedded(2, [ElementaryCube((i, j), (1, 2)) for i in range(k) for j in range(k)])


def cube_boundary() -> CubicalComplex:
    """Surface of the unit 3-cube: six squares, a cellular 2-sphere."""
    return CubicalComplex.embedded(3, unit_cube_surface(3))


def periodic_torus(p1: int = 1, p2: int = 1) -> CubicalComplex:
    squares = [ElementaryCube((i, j), (1, 2)) for i in range(p1) for j in range(p2)]
    return CubicalComplex.embedded(2, squares, moduli=(p1, p2))


def annulus() -> CubicalComplex:
    """3 x 3 block of squares with the centre removed."""
    squares = [ElementaryCube((i, j), (1, 2)) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    return CubicalComplex.embedded(2, squares)


def square_grid_quotient(nx: int, ny: int, x_glue: str = "none", y_glue: str = "none") -> CubicalComplex:
    """Abstract complex from an nx x ny grid of squares with side identifications.

    ``x_glue`` identifies the right side with the left one, ``y_glue`` the top
    with the bottom; each is ``"none"``, ``"periodic"`` or ``"flip"``
    (identification with reversed direction). Periodic/periodic is the torus,
    flip/none the Moebius strip, periodic/flip the Klein bottle and flip/flip
    the projective plane.
    """
    for g in (x_glue, y_glue):
        if g not in ("none", "periodic", "flip"):
            raise ValueError(f"unknown gluing {g!r}")
    if nx < 1 or ny < 1:
        raise ValueError("grid needs at least one square per direction")

    # vertices: union-find over lattice points
    parent: dict = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for j in range(ny + 1):
        if x_glue == "periodic":
            union((nx, j), (0, j))
        elif x_glue == "flip":
            union((nx, j), (0, ny - j))
    for i in range(nx + 1):
        if y_glue == "periodic":
            union((i, ny), (i, 0))
        elif y_glue == "flip":
            union((i, ny), (nx - i, 0))

    # edges: signed union-find, edge -> (sign, representative)
    eparent: dict = {}

    def efind(e):
        eparent.setdefault(e, (1, e))
        s, p = eparent[e]
        if p == e:
            return 1, e
        s2, root = efind(p)
        eparent[e] = (s * s2, root)
        return s * s2, root

    def eunion(a, b, s):
        """a = s * b"""
        sa, ra = efind(a)
        sb, rb = efind(b)
        if ra == rb:
            if sa != s * sb:
                raise ValueError("inconsistent edge gluing")
            return
        # ra = sa * a = sa * s * b = sa * s * sb * rb
        if ra > rb:
            eparent[ra] = (sa * s * sb, rb)
        else:
            eparent[rb] = (sa * s * sb, ra)

    for j in range(ny):
        if x_glue == "periodic":
            eunion(("v", nx, j), ("v", 0, j), 1)
        elif x_glue == "flip":
            eunion(("v", nx, j), ("v", 0, ny - 1 - j), -1)
    for i in range(nx):
        if y_glue == "periodic":
            eunion(("h", i, ny), ("h", i, 0), 1)
        elif y_glue == "flip":
            eunion(("h", i, ny), ("h", nx - 1 - i, 0), -1)

    def endpoints(e):
        kind, i, j = e
        return ((i, j), (i + 1, j)) if kind == "h" else ((i, j), (i, j + 1))

    vertex_ids: dict = {}
    edge_ids: dict = {}
    cells: list[tuple[int, str]] = []
    face_lines: list[tuple[str, Sign, str]] = []

    def vid(v):
        r = find(v)
        if r not in vertex_ids:
            vertex_ids[r] = f"v{len(vertex_ids)}"
            cells.append((0, vertex_ids[r]))
        return vertex_ids[r]

    def eid(e):
        s, r = efind(e)
        if r not in edge_ids:
            edge_ids[r] = f"e{len(edge_ids)}"
            cells.append((1, edge_ids[r]))
            start, end = endpoints(r)
            face_lines.append((edge_ids[r], Sign.PLUS, vid(start)))
            face_lines.append((edge_ids[r], Sign.MINUS, vid(end)))
        return Sign(s), edge_ids[r]

    for i in range(nx + 1):
        for j in range(ny + 1):
            vid((i, j))
    squares = []
    for j in range(ny):
        for i in range(nx):
            sid = f"s{len(squares)}"
            squares.append(sid)
            # same signs as the embedded unit square: +bottom -top -left +right
            for sign, e in (
                (Sign.PLUS, ("h", i, j)),
                (Sign.MINUS, ("h", i, j + 1)),
                (Sign.MINUS, ("v", i, j)),
                (Sign.PLUS, ("v", i + 1, j)),
            ):
                s, name = eid(e)
                face_lines.append((sid, sign * s, name))
    cells.extend((2, s) for s in squares)
    cx = CubicalComplex.abstract(2, cells, face_lines)
    cx.recipe = (nx, ny, x_glue, y_glue)
    return cx


def split_axis(cx: CubicalComplex, axis: int) -> CubicalComplex:
    """One axis-splitting subdivision.

    Embedded complexes go through :func:`subdivide`; quotient complexes are
    rebuilt with twice as many squares along ``axis``.
    """
    if cx.mode == "embedded":
        return subdivide(cx, axis)
    recipe = getattr(cx, "recipe", None)
    if recipe is None:
        raise ValueError("abstract complex has no grid recipe to refine")
    nx, ny, gx, gy = recipe
    if axis == 1:
        return square_grid_quotient(2 * nx, ny, gx, gy)
    if axis == 2:
        return square_grid_quotient(nx, 2 * ny, gx, gy)
    raise ValueError(f"axis {axis} outside 1..2")


def mobius_strip(k: int = 3) -> CubicalComplex:
    return square_grid_quotient(k, 1, "flip", "none")


def klein_bottle(k: int = 2) -> CubicalComplex:
    return square_grid_quotient(k, k, "periodic", "flip")


def projective_plane(k: int = 2) -> CubicalComplex:
    return square_grid_quotient(k, k, "flip", "flip")


def canonical_complexes() -> dict[str, CubicalComplex]:
    """The five reference complexes used for subdivision checks."""
    return {
        "solid_square": solid_square(),
        "cube_boundary": cube_boundary(),
        "torus": periodic_torus(),
        "mobius": mobius_strip(3),
        "annulus": annulus(),
    }
