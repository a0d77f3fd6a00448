"""Text formats for complexes, forms, grid fields and frameworks.

Every format is line oriented; ``#`` starts a comment and blank lines are
ignored. Writers emit the canonical spelling, so a canonical file survives a
parse/write round trip byte for byte.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .cubical import CubicalComplex, ElementaryCube
from .forms import FormField
from .flows import CovectorGridField, ScalarGridField
from .frameworks import Composition, FrameworkGraph, FrameworkSum
from .permcalc import Sign
from .polynomial import Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _col(line: str, token: str) -> int:
    i = line.find(token)
    return i + 1 if i >= 0 else 1


def _int(tok: str, lineno: int, line: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, _col(line, tok)) from None


def _float(tok: str, lineno: int, line: str) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", lineno, _col(line, tok)) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite number {tok!r}", lineno, _col(line, tok))
    return v


def _header_dim(items: list, keyword: str = "dim") -> tuple[int, list]:
    if not items:
        raise ParseError("empty file", 1)
    lineno, line = items[0]
    tokens = line.split()
    if tokens[0] != keyword or len(tokens) != 2:
        raise ParseError(f"expected '{keyword} <int>' header", lineno)
    n = _int(tokens[1], lineno, line)
    if n < 1:
        raise ParseError("dimension must be positive", lineno, _col(line, tokens[1]))
    return n, items[1:]


# complexes -----------------------------------------------------------------------

def parse_complex(text: str) -> CubicalComplex:
    n, rest = _header_dim(list(_lines(text)))
    moduli = None
    scale = None
    cubes = []
    cells = []
    face_lines = []
    for lineno, line in rest:
        tokens = line.split()
        kw = tokens[0]
        if kw == "periodic":
            if moduli is not None or cubes or cells:
                raise ParseError("'periodic' must precede cell lines and appear once", lineno)
            if len(tokens) != n + 1:
                raise ParseError(f"'periodic' needs {n} periods", lineno)
            moduli = tuple(_int(t, lineno, line) for t in tokens[1:])
            if any(p < 0 for p in moduli):
                raise ParseError("periods must be non-negative", lineno)
        elif kw == "scale":
            if scale is not None or len(tokens) != 2:
                raise ParseError("expected a single 'scale <h>' line", lineno)
            scale = _float(tokens[1], lineno, line)
            if scale <= 0:
                raise ParseError("scale must be positive", lineno, _col(line, tokens[1]))
        elif kw == "cube":
            if cells or face_lines:
                raise ParseError("cannot mix 'cube' lines with abstract cells", lineno)
            if ":" not in line:
                raise ParseError("expected 'cube b1 ... bn : axes'", lineno, len(line) + 1)
            head, axes_part = line.split(":", 1)
            base_tokens = head.split()[1:]
            if len(base_tokens) != n:
                raise ParseError(f"cube base needs {n} coordinates, got {len(base_tokens)}", lineno)
            base = tuple(_int(t, lineno, line) for t in base_tokens)
            axes = tuple(_int(t, lineno, line) for t in axes_part.split())
            try:
                cubes.append(ElementaryCube(base, axes))
            except ValueError as e:
                raise ParseError(str(e), lineno, line.index(":") + 2) from None
        elif kw == "cell":
            if cubes:
                raise ParseError("cannot mix abstract cells with 'cube' lines", lineno)
            if len(tokens) != 3:
                raise ParseError("expected 'cell <grade> <id>'", lineno)
            grade = _int(tokens[1], lineno, line)
            if not 0 <= grade <= n:
                raise ParseError(f"grade {grade} outside 0..{n}", lineno, _col(line, tokens[1]))
            cells.append((grade, tokens[2]))
        elif kw == "face":
            if cubes:
                raise ParseError("cannot mix face lines with 'cube' lines", lineno)
            if len(tokens) != 4:
                raise ParseError("expected 'face <id> <sign> <face-id>'", lineno)
            sign = tokens[2]
            if sign not in ("+1", "-1", "1", "+", "-"):
                raise ParseError(f"sign must be +1 or -1, got {sign!r}", lineno, _col(line, sign))
            face_lines.append((tokens[1], Sign.MINUS if sign.startswith("-") else Sign.PLUS, tokens[3]))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, _col(line, kw))
    if cells or face_lines:
        if moduli is not None:
            raise ParseError("'periodic' applies to cube complexes only", 1)
        cx = CubicalComplex.abstract(n, cells, face_lines)
        cx.scale = scale
        return cx
    cx = CubicalComplex.embedded(n, cubes, moduli, scale)
    cx.declared_periods = moduli  # "periodic 0 0" must survive a round trip
    return cx


def write_complex(cx: CubicalComplex) -> str:
    out = [f"dim {cx.n}"]
    if cx.mode == "embedded":
        periods = getattr(cx, "declared_periods", cx.moduli)
        if periods:
            out.append("periodic " + " ".join(map(str, periods)))
        if cx.scale is not None:
            out.append(f"scale {cx.scale!r}")
        for c in cx.generators:
            axes = " ".join(map(str, c.axes))
            out.append(f"cube {' '.join(map(str, c.base))} :" + (f" {axes}" if axes else ""))
    else:
        if cx.scale is not None:
            out.append(f"scale {cx.scale!r}")
        out.extend(f"cell {g} {cid}" for g, cid in cx.generators)
        out.extend(f"face {cid} {sign} {fid}" for cid, sign, fid in cx.face_lines)
    return "\n".join(out) + "\n"


# forms ---------------------------------------------------------------------------

def parse_form(text: str) -> FormField:
    n, rest = _header_dim(list(_lines(text)))
    if not rest:
        raise ParseError("missing 'grade <m>' line", 2)
    lineno, line = rest[0]
    tokens = line.split()
    if tokens[0] != "grade" or len(tokens) != 2:
        raise ParseError("expected 'grade <m>'", lineno)
    m = _int(tokens[1], lineno, line)
    if not 0 <= m <= n:
        raise ParseError(f"grade {m} outside 0..{n}", lineno, _col(line, tokens[1]))
    table = {}
    for lineno, line in rest[1:]:
        if ":" not in line:
            raise ParseError("expected 'J : monomial-table'", lineno, len(line) + 1)
        head, body = line.split(":", 1)
        J = tuple(_int(t, lineno, line) for t in head.replace(",", " ").split())
        if len(J) != m or any(b <= a for a, b in zip(J, J[1:])) or (J and (J[0] < 1 or J[-1] > n)):
            raise ParseError(f"{J} is not an ordered {m}-subset of 1..{n}", lineno)
        if J in table:
            raise ParseError(f"component {J} given twice", lineno)
        try:
            table[J] = Polynomial.parse(body, n)
        except ValueError as e:
            raise ParseError(str(e), lineno, line.index(":") + 2) from None
    return FormField.from_polynomials(n, m, table)


def write_form(a: FormField) -> str:
    polys = getattr(a, "polynomials", None)
    if polys is None:
        raise ValueError("only polynomial forms can be written")
    out = [f"dim {a.n}", f"grade {a.m}"]
    for J in sorted(polys):
        out.append(f"{','.join(map(str, J))} : {polys[J].to_text()}")
    return "\n".join(out) + "\n"


# grid fields -------------------------------------------------------------------------

def parse_grid(text: str):
    """Return a ScalarGridField or a CovectorGridField."""
    items = list(_lines(text))
    n, rest = _header_dim(items)
    meta = {}
    values: list[float] = []
    poly = None
    comps: dict[int, Polynomial] = {}
    reading_values = False
    for lineno, line in rest:
        tokens = line.split()
        kw = tokens[0]
        if reading_values:
            values.extend(_float(t, lineno, line) for t in tokens)
            continue
        if kw in ("origin", "extents"):
            if len(tokens) != n + 1:
                raise ParseError(f"'{kw}' needs {n} entries", lineno)
            conv = _float if kw == "origin" else _int
            meta[kw] = [conv(t, lineno, line) for t in tokens[1:]]
        elif kw == "spacing":
            if len(tokens) != 2:
                raise ParseError("expected 'spacing <h>'", lineno)
            meta["spacing"] = _float(tokens[1], lineno, line)
            if meta["spacing"] <= 0:
                raise ParseError("spacing must be positive", lineno, _col(line, tokens[1]))
        elif kw == "values":
            reading_values = True
            values.extend(_float(t, lineno, line) for t in tokens[1:])
        elif kw == "poly":
            body = line.split(":", 1)[1] if ":" in line else " ".join(tokens[1:])
            try:
                poly = Polynomial.parse(body, n)
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        elif kw == "component":
            if ":" not in line or len(tokens) < 3:
                raise ParseError("expected 'component <j> : monomial-table'", lineno)
            j = _int(line.split(":", 1)[0].split()[1], lineno, line)
            if not 1 <= j <= n:
                raise ParseError(f"component index {j} outside 1..{n}", lineno)
            try:
                comps[j] = Polynomial.parse(line.split(":", 1)[1], n)
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, _col(line, kw))
    last = items[-1][0] if items else 1
    for key in ("origin", "spacing", "extents"):
        if key not in meta:
            raise ParseError(f"missing '{key}' line", last)
    origin, h, extents = np.array(meta["origin"]), meta["spacing"], tuple(meta["extents"])
    if any(k < 3 for k in extents):
        raise ParseError("every axis needs at least 3 samples", last)
    given = sum(x is not None and x != {} and x != [] for x in (poly, comps, values if reading_values else []))
    if given != 1:
        raise ParseError("give exactly one of 'values', 'poly' or 'component' lines", last)
    axes = [origin[i] + h * np.arange(k) for i, k in enumerate(extents)]
    if reading_values:
        if len(values) != int(np.prod(extents)):
            raise ParseError(f"expected {int(np.prod(extents))} values, got {len(values)}", last)
        return ScalarGridField(np.array(values).reshape(extents), origin, h)
    if poly is not None:
        return ScalarGridField(poly.evaluate_grid(axes), origin, h)
    zero = Polynomial(n, ())
    return CovectorGridField(np.stack([comps.get(j, zero).evaluate_grid(axes) for j in range(1, n + 1)]), origin, h)


def write_grid(phi: ScalarGridField) -> str:
    out = [
        f"dim {phi.n}",
        "origin " + " ".join(repr(float(o)) for o in phi.origin),
        f"spacing {phi.h!r}",
        "extents " + " ".join(map(str, phi.shape)),
        "values",
    ]
    flat = phi.values.reshape(-1)
    row = phi.shape[-1]
    for i in range(0, len(flat), row):
        out.append(" ".join(repr(float(v)) for v in flat[i:i + row]))
    return "\n".join(out) + "\n"


# frameworks -----------------------------------------------------------------------

def _parse_parenthesized(body: str, lineno: int) -> list[Composition]:
    terms = []
    rest = body.strip()
    while rest:
        if not rest.startswith("("):
            raise ParseError(f"expected '(' in {rest!r}", lineno)
        close = rest.find(")")
        if close < 0:
            raise ParseError("unbalanced parenthesis", lineno)
        inner = rest[1:close].split()
        try:
            terms.append(Composition(tuple(int(t) for t in inner)))
        except ValueError as e:
            raise ParseError(str(e), lineno) from None
        rest = rest[close + 1:].strip()
    return terms


def parse_framework(text: str):
    """Return a FrameworkSum or a FrameworkGraph."""
    n, rest = _header_dim(list(_lines(text)), keyword="n")
    if not rest:
        raise ParseError("expected 'sum ...' or 'graph'", 2)
    lineno, line = rest[0]
    kw = line.split()[0]
    if kw == "sum":
        if len(rest) > 1:
            raise ParseError("unexpected lines after 'sum'", rest[1][0])
        terms = _parse_parenthesized(line.strip()[3:], lineno)
        try:
            return FrameworkSum(n, tuple(terms))
        except ValueError as e:
            raise ParseError(str(e), lineno) from None
    if kw == "graph":
        verts: dict = {}
        edges = []
        for lineno, line in rest[1:]:
            tokens = line.split()
            if tokens[0] != "edge" or len(tokens) != 4:
                raise ParseError("expected 'edge u v class'", lineno)
            u, v = tokens[1], tokens[2]
            k = _int(tokens[3], lineno, line)
            verts.setdefault(u, None)
            verts.setdefault(v, None)
            edges.append((u, v, k))
        return FrameworkGraph(n, list(verts), edges)
    raise ParseError(f"unknown keyword {kw!r}", lineno, _col(line, kw))


def write_framework(obj) -> str:
    if isinstance(obj, FrameworkSum):
        return f"n {obj.n}\nsum " + " ".join(map(str, obj.terms)) + "\n"
    out = [f"n {obj.n}", "graph"]

    def name(v):
        return "".join(str(t) for t in v) if isinstance(v, tuple) else str(v)

    out.extend(f"edge {name(u)} {name(v)} {k}" for u, v, k in obj.edges)
    return "\n".join(out) + "\n"
