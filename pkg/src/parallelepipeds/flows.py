"""Grid diagnostics for stationary flows and level-set surfaces.

Fields live on a regular lattice ``origin + h * index``. Derivatives are
central differences (one-sided on the outermost layer, via
``numpy.gradient``); residual maxima are taken over interior nodes only, so
the one-sided layer never enters a reported value.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .exterior import Multivector, hodge_star, inner, wedge
from .forms import IntegralSurface
from .permcalc import sequence_sign, split_sign


class _Grid:
    origin: np.ndarray
    h: float

    @property
    def extents(self) -> tuple[int, ...]:
        return self.shape

    def axes(self) -> list[np.ndarray]:
        return [self.origin[i] + self.h * np.arange(k) for i, k in enumerate(self.shape)]

    def points(self) -> np.ndarray:
        """Node coordinates, shape ``extents + (n,)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def point(self, index) -> np.ndarray:
        return self.origin + self.h * np.asarray(index, dtype=float)

    def interior_mask(self, depth: int = 1) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        inner_slice = tuple(slice(depth, k - depth) for k in self.shape)
        mask[inner_slice] = True
        return mask

    def _check_grid(self):
        if self.h <= 0:
            raise ValueError("grid spacing must be positive")
        if len(self.origin) != len(self.shape):
            raise ValueError("origin and extents differ in dimension")
        if any(k < 3 for k in self.shape):
            raise ValueError(f"every axis needs at least 3 samples, got {self.shape}")


class ScalarGridField(_Grid):
    """Samples of a scalar function on a regular grid."""

    def __init__(self, values, origin, h: float):
        self.values = np.asarray(values, dtype=float)
        self.origin = np.asarray(origin, dtype=float).reshape(-1)
        self.h = float(h)
        self.shape = self.values.shape
        self._check_grid()

    @property
    def n(self) -> int:
        return self.values.ndim

    @classmethod
    def from_function(cls, f: Callable, origin, h: float, extents: Sequence[int]) -> "ScalarGridField":
        """Sample ``f`` at all nodes; ``f`` receives points with the coordinate on the last axis."""
        origin = np.asarray(origin, dtype=float)
        axes = [origin[i] + h * np.arange(k) for i, k in enumerate(extents)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(np.broadcast_to(f(pts), tuple(extents)), origin, h)


class CovectorGridField(_Grid):
    """Samples of a 1-form: ``components[j-1]`` holds the coefficient of ``dx^j``."""

    def __init__(self, components, origin, h: float):
        self.components = np.asarray(components, dtype=float)
        self.origin = np.asarray(origin, dtype=float).reshape(-1)
        self.h = float(h)
        self.shape = self.components.shape[1:]
        if self.components.shape[0] != len(self.shape):
            raise ValueError("need one component per axis")
        self._check_grid()

    @property
    def n(self) -> int:
        return len(self.shape)

    @classmethod
    def from_functions(cls, fs: Sequence[Callable], origin, h: float, extents: Sequence[int]) -> "CovectorGridField":
        origin = np.asarray(origin, dtype=float)
        axes = [origin[i] + h * np.arange(k) for i, k in enumerate(extents)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        comps = [np.broadcast_to(f(pts), tuple(extents)) for f in fs]
        return cls(np.stack(comps), origin, h)

    def norm(self) -> np.ndarray:
        return np.sqrt(np.sum(self.components**2, axis=0))


@dataclass
class Residual:
    """Pointwise residual magnitudes (NaN off the evaluated nodes) and their maximum."""

    field: np.ndarray
    max: float
    argmax: tuple[int, ...] | None
    point: np.ndarray | None

    def __float__(self) -> float:
        return self.max


def _report(values: np.ndarray, mask: np.ndarray, grid: _Grid) -> Residual:
    field = np.where(mask, values, np.nan)
    if not np.any(np.isfinite(field)):
        return Residual(field, 0.0, None, None)
    flat = int(np.nanargmax(field))  # first maximum in C order
    idx = tuple(int(i) for i in np.unravel_index(flat, field.shape))
    return Residual(field, float(field[idx]), idx, grid.point(idx))


def _d(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    return np.gradient(values, h, axis=axis)


def gradient_field(phi: ScalarGridField) -> CovectorGridField:
    comps = [_d(phi.values, i, phi.h) for i in range(phi.n)]
    return CovectorGridField(np.stack(comps), phi.origin, phi.h)


def exterior_derivative_grid(a: CovectorGridField) -> dict[tuple[int, int], np.ndarray]:
    """Coefficients of ``da`` keyed by ``(i, j)``, i < j (1-based)."""
    da = {}
    for i, j in combinations(range(1, a.n + 1), 2):
        da[(i, j)] = _d(a.components[j - 1], i - 1, a.h) - _d(a.components[i - 1], j - 1, a.h)
    return da


def closedness_residual(a: CovectorGridField) -> Residual:
    """max |da| over interior nodes and index pairs."""
    da = exterior_derivative_grid(a)
    mag = np.zeros(a.shape)
    for v in da.values():
        mag = np.maximum(mag, np.abs(v))
    return _report(mag, a.interior_mask(), a)


def codifferential_grid(a: CovectorGridField) -> np.ndarray:
    """Coefficient of ``d*a`` on ``dx^1 ^ ... ^ dx^n``.

    ``*a`` puts ``split_sign(n, (j)) * a_j`` on the complement of ``j``;
    differentiating in ``x_j`` brings ``dx^j`` back in front.
    """
    n = a.n
    total = np.zeros(a.shape)
    for j in range(1, n + 1):
        rest = tuple(i for i in range(1, n + 1) if i != j)
        sign = int(sequence_sign((j,) + rest)) * int(split_sign(n, (j,)))
        total = total + sign * _d(a.components[j - 1], j - 1, a.h)
    return total


def divergence_residual(a: CovectorGridField) -> Residual:
    return _report(np.abs(codifferential_grid(a)), a.interior_mask(), a)


def holonomy_residual(a: CovectorGridField) -> Residual:
    """max |a ^ da| over interior nodes and index triples (identically 0 for n < 3)."""
    if a.n < 3:
        return _report(np.zeros(a.shape), a.interior_mask(), a)
    da = exterior_derivative_grid(a)
    mag = np.zeros(a.shape)
    for triple in combinations(range(1, a.n + 1), 3):
        coef = np.zeros(a.shape)
        for p, q, r in permutations(triple):
            if q < r:
                coef = coef + int(sequence_sign((p, q, r))) * a.components[p - 1] * da[(q, r)]
        mag = np.maximum(mag, np.abs(coef))
    return _report(mag, a.interior_mask(), a)


def laplacian_residual(phi: ScalarGridField) -> Residual:
    """(2n+1)-point Laplacian on interior nodes; ``field`` holds signed values."""
    v = phi.values
    lap = np.zeros(phi.shape)
    core = tuple(slice(1, k - 1) for k in phi.shape)
    for ax in range(phi.n):
        up = list(core)
        dn = list(core)
        up[ax] = slice(2, phi.shape[ax])
        dn[ax] = slice(0, phi.shape[ax] - 2)
        lap[core] += (v[tuple(up)] - 2 * v[core] + v[tuple(dn)]) / phi.h**2
    mask = phi.interior_mask()
    rep = _report(np.abs(lap), mask, phi)
    rep.field = np.where(mask, lap, np.nan)
    return rep


@dataclass
class UnitField:
    field: CovectorGridField
    excluded: np.ndarray  # True where |grad phi| < eps

    @property
    def excluded_nodes(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in idx) for idx in np.argwhere(self.excluded)]


def unit_field(phi: ScalarGridField, eps: float = 1e-8) -> UnitField:
    """Normalized gradient; degenerate nodes are NaN and listed as excluded."""
    g = gradient_field(phi)
    norm = g.norm()
    excluded = norm < eps
    with np.errstate(invalid="ignore", divide="ignore"):
        comps = np.where(excluded, np.nan, g.components / norm)
    return UnitField(CovectorGridField(comps, phi.origin, phi.h), excluded)


@dataclass
class Curvature:
    values: np.ndarray  # NaN where undefined
    excluded: np.ndarray

    def valid(self) -> np.ndarray:
        return np.isfinite(self.values)


def mean_curvature(phi: ScalarGridField, eps: float = 1e-8) -> Curvature:
    """``-(1/n) * div(grad phi / |grad phi|)`` with composed central differences.

    The prefactor is ``1/n`` (not the more common ``1/(n-1)``). Values are
    defined on nodes at least two layers from the grid boundary whose
    stencil avoids excluded nodes.
    """
    u = unit_field(phi, eps)
    div = codifferential_grid(u.field)
    H = -div / phi.n
    H = np.where(phi.interior_mask(2), H, np.nan)
    return Curvature(H, u.excluded)


def _gradient_at(phi, x: np.ndarray, step: float = 1e-6) -> np.ndarray:
    if isinstance(phi, ScalarGridField):
        g = gradient_field(phi)
        axes = phi.axes()
        return np.array([RegularGridInterpolator(axes, g.components[i])(x)[0] for i in range(phi.n)])
    grad = np.empty(len(x))
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = step
        grad[i] = (phi(x + e) - phi(x - e)) / (2 * step)
    return grad


def level_set_area(phi, S: IntegralSurface, eps: float = 1e-8, oriented: bool = True) -> float:
    """Area of a mesh on a level set as the sum of ``(*n(x), piece)``.

    ``phi`` is a :class:`ScalarGridField` (gradient linearly interpolated at
    the anchors) or a callable of a point (central-difference gradient).
    With ``oriented=False`` each term enters by absolute value.
    """
    if not len(S):
        return 0.0
    n = S.n
    if S.m != n - 1:
        raise ValueError(f"level-set pieces must have grade {n - 1}, got {S.m}")
    if isinstance(phi, ScalarGridField):
        # interpolate all anchors at once
        g = gradient_field(phi)
        axes = phi.axes()
        anchors = np.array([p.anchor for p in S.pieces])
        grads = np.stack([RegularGridInterpolator(axes, g.components[i])(anchors) for i in range(n)], axis=-1)
    else:
        grads = np.array([_gradient_at(phi, p.anchor) for p in S.pieces])
    total = 0.0
    for p, gvec in zip(S.pieces, grads):
        norm = float(np.linalg.norm(gvec))
        if norm < eps:
            raise ValueError(f"degenerate gradient at anchor {p.anchor}")
        normal = Multivector(n, 1, {(i + 1,): float(c) / norm for i, c in enumerate(gvec)})
        term = inner(hodge_star(normal), p.multivector())
        total += term if oriented else abs(term)
    return float(total)
