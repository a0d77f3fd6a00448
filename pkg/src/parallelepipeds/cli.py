"""Command-line entry point.

Reports are plain text with fixed column widths; ``--machine`` switches to
``key=value`` lines. Exit status: 0 success, 2 parse error, 3 validation or
semantic error, 4 numeric degeneracy (every node excluded).
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cubical import ComplexValidationError, NotManifoldError, homology, orient, validate_complex
from .flows import (
    CovectorGridField,
    ScalarGridField,
    closedness_residual,
    divergence_residual,
    gradient_field,
    holonomy_residual,
    laplacian_residual,
    mean_curvature,
    unit_field,
)
from .formats import ParseError, parse_complex, parse_form, parse_framework, parse_grid
from .forms import stokes_check
from .frameworks import (
    Composition,
    FrameworkGraph,
    FrameworkSum,
    elementary_graph,
    parse_sum,
    pi1_trivial,
    poincare_betti,
    sum_graph,
    surface_complex,
    validate_framework,
)

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_DEGENERATE = 0, 2, 3, 4


class Failure(Exception):
    def __init__(self, code: int, message: str, details=()):
        super().__init__(message)
        self.code = code
        self.details = list(details)


class Report:
    def __init__(self, argv: list[str], machine: bool):
        self.machine = machine
        self.lines: list[str] = []
        self.add("command", " ".join(["parallelepipeds", *argv]), f"# parallelepipeds {__version__}: " + " ".join(argv))
        self._inputs = 0

    def add(self, key: str, value, human: str | None = None):
        if self.machine:
            self.lines.append(f"{key}={value}")
        elif human is not None:
            self.lines.append(human)

    def text(self, line: str):
        if not self.machine:
            self.lines.append(line)

    def digest(self, path: str, data: bytes):
        h = hashlib.sha256(data).hexdigest()
        i = self._inputs
        self._inputs += 1
        self.add(f"input.{i}.path", path, f"# input {path} sha256={h}")
        if self.machine:
            self.lines.append(f"input.{i}.sha256={h}")

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


def _read(report: Report, path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise Failure(EXIT_PARSE, f"cannot read {path}: {e.strerror}") from None
    report.digest(path, data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise Failure(EXIT_PARSE, f"{path}: not UTF-8 text") from None


def _parse(parser, text: str, path: str):
    try:
        return parser(text)
    except ParseError as e:
        raise Failure(EXIT_PARSE, f"{path}: parse error at line {e.line}, column {e.column}: {e.reason}") from None
    except ValueError as e:
        raise Failure(EXIT_PARSE, f"{path}: {e}") from None


def _fmt(x: float) -> str:
    return f"{x: .12e}"


# commands ----------------------------------------------------------------------------

def cmd_homology(args, report: Report):
    cx = _parse(parse_complex, _read(report, args.complex), args.complex)
    try:
        res = homology(cx)
    except ComplexValidationError as e:
        raise Failure(EXIT_SEMANTIC, "complex failed validation", e.diagnostics.lines()) from None
    report.add("homology", str(res), str(res))
    report.text(f"{'grade':>5} {'cells':>8} {'betti':>6}  torsion")
    for k, b in enumerate(res.betti):
        tors = ",".join(map(str, res.torsion[k]))
        report.add(f"cells.{k}", cx.count(k))
        report.add(f"betti.{k}", b)
        report.add(f"torsion.{k}", tors)
        report.text(f"{k:>5} {cx.count(k):>8} {b:>6}  {tors or '-'}")
    report.add("euler", res.euler_characteristic, f"euler characteristic {res.euler_characteristic}")


def cmd_orient(args, report: Report):
    cx = _parse(parse_complex, _read(report, args.complex), args.complex)
    diag = validate_complex(cx)
    if not diag.ok:
        raise Failure(EXIT_SEMANTIC, "complex failed validation", diag.lines())
    try:
        res = orient(cx)
    except NotManifoldError as e:
        raise Failure(EXIT_SEMANTIC, str(e)) from None
    top = cx.top_grade
    if res.orientable:
        report.add("orientable", "yes", "ORIENTABLE")
        for c in cx.cells.get(top, []):
            report.add(f"sigma.{c}", res.sigma[c], f"{str(c):<32} {res.sigma[c]}")
    else:
        report.add("orientable", "no", "NONORIENTABLE")
        w = " ".join(map(str, res.witness))
        report.add("witness", w, f"witness: {w}")


def cmd_stokes(args, report: Report):
    a = _parse(parse_form, _read(report, args.form), args.form)
    region = _parse(parse_complex, _read(report, args.region), args.region)
    diag = validate_complex(region)
    if not diag.ok:
        raise Failure(EXIT_SEMANTIC, "region failed validation", diag.lines())
    h = args.h if args.h is not None else (region.scale if region.scale is not None else 1.0)
    if h <= 0:
        raise Failure(EXIT_SEMANTIC, "--h must be positive")
    try:
        res = stokes_check(a, region, h, mode=args.mode)
    except (ValueError, NotManifoldError) as e:
        raise Failure(EXIT_SEMANTIC, str(e)) from None
    report.add("mode", args.mode, f"mode       {args.mode}")
    report.add("h", repr(h), f"h          {h!r}")
    report.add("interior", repr(res.interior), f"interior   {_fmt(res.interior)}")
    report.add("boundary", repr(res.boundary), f"boundary   {_fmt(res.boundary)}")
    report.add("difference", repr(res.difference), f"difference {_fmt(res.difference)}")
    if args.tol is not None:
        ok = abs(res.difference) <= args.tol
        report.add("within_tol", "yes" if ok else "no", f"within tol {args.tol!r}: {'yes' if ok else 'no'}")


def _composition_arg(tokens: list[str]) -> Composition:
    text = " ".join(tokens).strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return Composition(tuple(int(t) for t in text.replace(",", " ").split()))
    except ValueError as e:
        raise Failure(EXIT_PARSE, f"bad composition {' '.join(tokens)!r}: {e}") from None


def _sum_arg(args, report: Report) -> FrameworkSum:
    if args.file:
        obj = _parse(parse_framework, _read(report, args.file), args.file)
        if isinstance(obj, FrameworkGraph):
            raise Failure(EXIT_SEMANTIC, "expected a framework sum, got a graph")
        return obj
    text = " ".join(args.terms)
    try:
        return parse_sum(text)
    except ValueError as e:
        raise Failure(EXIT_PARSE, f"bad framework sum {text!r}: {e}") from None


def cmd_framework(args, report: Report):
    sub = args.subcommand
    if sub == "build":
        if args.file:
            obj = _parse(parse_framework, _read(report, args.file), args.file)
            g = obj if isinstance(obj, FrameworkGraph) else sum_graph(obj)
        elif "+" in " ".join(args.terms) or "S" in " ".join(args.terms).upper():
            g = sum_graph(_sum_arg(args, report))
        else:
            g = elementary_graph(_composition_arg(args.terms))
        diag = validate_framework(g)
        report.add("vertices", len(g.vertices), f"vertices {len(g.vertices)}")
        report.add("edges", len(g.edges), f"edges    {len(g.edges)}")
        report.add("valid", "yes" if diag else "no", f"valid    {'yes' if diag else 'no'}")
        if not diag:
            raise Failure(EXIT_SEMANTIC, "framework graph failed validation",
                          [f"vertex {v} class {k}: {c} edges" for v, k, c in diag.missing]
                          + [f"loop {e}" for e in diag.loops] + [f"bad class {e}" for e in diag.bad_classes])
    elif sub == "sum":
        s = _sum_arg(args, report)
        report.add("sum", str(s), str(s))
    elif sub == "pi1":
        s = _sum_arg(args, report)
        verdict = "trivial" if pi1_trivial(s) else "nontrivial"
        report.add("pi1", verdict, verdict)
    else:
        c = _composition_arg(args.terms)
        cx = surface_complex(c)
        res = homology(cx)
        expected = poincare_betti(c)
        report.add("composition", str(c), f"surface of {c}: f-vector {cx.f_vector()}")
        report.add("homology", str(res), str(res))
        agree = res.betti == expected and not any(res.torsion)
        report.add("poincare", " ".join(map(str, expected)), f"poincare betti {' '.join(map(str, expected))}")
        report.add("agree", "yes" if agree else "no", f"agrees with product formula: {'yes' if agree else 'no'}")
        o = orient(cx)
        report.add("orientable", "yes" if o else "no", "ORIENTABLE" if o else "NONORIENTABLE")


_SCALAR_DEFAULT = ("laplacian", "closedness")
_COVECTOR_DEFAULT = ("closedness", "divergence", "holonomy")
_ALL_CHECKS = ("laplacian", "closedness", "divergence", "holonomy", "unit", "curvature")


def _residual_line(report: Report, name: str, res, tol):
    pt = "-" if res.point is None else "(" + ", ".join(f"{v:.6g}" for v in res.point) + ")"
    report.add(f"{name}.max", repr(res.max), f"{name:<11} max-residual {res.max:.6e} at {pt}")
    if res.point is not None:
        report.add(f"{name}.argmax", ",".join(map(str, res.argmax)))
    if tol is not None:
        ok = res.max <= tol
        report.add(f"{name}.within_tol", "yes" if ok else "no", f"{'':<11} within tol {tol!r}: {'yes' if ok else 'no'}")


def cmd_flow(args, report: Report):
    field = _parse(parse_grid, _read(report, args.field), args.field)
    scalar = isinstance(field, ScalarGridField)
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) if args.checks else (
        _SCALAR_DEFAULT if scalar else _COVECTOR_DEFAULT)
    for c in checks:
        if c not in _ALL_CHECKS:
            raise Failure(EXIT_SEMANTIC, f"unknown check {c!r}; choose from {', '.join(_ALL_CHECKS)}")
        if not scalar and c in ("laplacian", "unit", "curvature"):
            raise Failure(EXIT_SEMANTIC, f"check {c!r} needs a scalar field")
    kind = "scalar" if scalar else "covector"
    report.add("field", kind, f"field {kind}, n={field.n}, extents {' x '.join(map(str, field.shape))}, h={field.h!r}")
    a: CovectorGridField = gradient_field(field) if scalar else field
    for c in checks:
        if c == "laplacian":
            _residual_line(report, c, laplacian_residual(field), args.tol)
        elif c == "closedness":
            _residual_line(report, c, closedness_residual(a), args.tol)
        elif c == "divergence":
            _residual_line(report, c, divergence_residual(a), args.tol)
        elif c == "holonomy":
            _residual_line(report, c, holonomy_residual(a), args.tol)
        elif c == "unit":
            u = unit_field(field, args.eps)
            if u.excluded.all():
                raise Failure(EXIT_DEGENERATE, "gradient vanishes at every node")
            dev = np.nanmax(np.abs(u.field.norm() - 1.0))
            report.add("unit.excluded", int(u.excluded.sum()), f"unit        excluded nodes {int(u.excluded.sum())}")
            report.add("unit.norm_deviation", repr(float(dev)), f"{'':<11} max |norm - 1| {dev:.3e}")
        elif c == "curvature":
            _curvature_table(report, field, args)


def _curvature_table(report: Report, phi: ScalarGridField, args):
    curv = mean_curvature(phi, args.eps)
    if curv.excluded.all():
        raise Failure(EXIT_DEGENERATE, "gradient vanishes at every node")
    valid = np.argwhere(curv.valid())
    if len(valid) == 0:
        raise Failure(EXIT_DEGENERATE, "no node has a complete curvature stencil")
    report.add("curvature.valid", len(valid), f"curvature   valid nodes {len(valid)}, excluded {int(curv.excluded.sum())}")
    n = phi.n
    rows = min(args.rows, len(valid))
    picks = valid[np.linspace(0, len(valid) - 1, rows).round().astype(int)] if rows else []
    head = " ".join(f"{'x' + str(i + 1):>10}" for i in range(n))
    report.text(f"{head} {'r':>10} {'H':>14} {'r*H':>14}")
    for k, idx in enumerate(picks):
        x = phi.point(idx)
        r = float(np.linalg.norm(x))
        H = float(curv.values[tuple(idx)])
        cols = " ".join(f"{v:>10.4f}" for v in x)
        report.text(f"{cols} {r:>10.4f} {H:>14.6e} {r * H:>14.6e}")
        report.add(f"curvature.row.{k}", ",".join(repr(float(v)) for v in (*x, r, H, r * H)))


# wiring ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parallelepipeds", description="Parallelepiped calculus: homology, Stokes checks, frameworks and flow diagnostics.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="emit key=value lines")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("homology", parents=[common], help="integer homology of a complex file")
    s.add_argument("complex")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("orient", parents=[common], help="orientation of a complex file")
    s.add_argument("complex")
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("stokes", parents=[common], help="compare interior and boundary integrals")
    s.add_argument("form")
    s.add_argument("region")
    s.add_argument("--h", type=float, default=None, help="lattice scale (default: the region's 'scale', else 1)")
    s.add_argument("--mode", choices=("discrete", "analytic"), default="discrete")
    s.add_argument("--tol", type=float, default=None, help="report whether |difference| <= tol")
    s.set_defaults(func=cmd_stokes)

    s = sub.add_parser("framework", parents=[common], help="framework graphs and sums")
    s.add_argument("subcommand", choices=("build", "sum", "pi1", "surface"))
    s.add_argument("terms", nargs="*", help="composition like '(1 2)' or sum like '(1 2) + (3)'")
    s.add_argument("--file", default=None, help="read a framework file instead")
    s.set_defaults(func=cmd_framework)

    s = sub.add_parser("flow", parents=[common], help="residual diagnostics on a grid field")
    s.add_argument("field")
    s.add_argument("--checks", default=None, help=f"comma list from {','.join(_ALL_CHECKS)}")
    s.add_argument("--tol", type=float, default=None, help="report whether each residual is <= tol")
    s.add_argument("--eps", type=float, default=1e-8, help="gradient norm below which a node is excluded")
    s.add_argument("--rows", type=int, default=12, help="rows of the curvature table")
    s.set_defaults(func=cmd_flow)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    report = Report(argv, getattr(args, "machine", False))
    try:
        args.func(args, report)
    except Failure as f:
        sys.stdout.write(report.render())
        sys.stderr.write(f"error: {f}\n")
        for d in f.details:
            sys.stderr.write(f"  {d}\n")
        return f.code
    sys.stdout.write(report.render())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
