import numpy as np
import pytest

from parallelepipeds.forms import IntegralSurface, SmallParallelepiped, linear_volume
from parallelepipeds.flows import (
    CovectorGridField,
    ScalarGridField,
    closedness_residual,
    divergence_residual,
    gradient_field,
    holonomy_residual,
    laplacian_residual,
    level_set_area,
    mean_curvature,
    unit_field,
)


def grid(f, n=2, lo=-1.0, h=0.1, k=21):
    return ScalarGridField.from_function(f, [lo] * n, h, [k] * n)


def covector(fs, n=2, lo=-1.0, h=0.1, k=21):
    return CovectorGridField.from_functions(fs, [lo] * n, h, [k] * n)


def test_gradient_examples():
    g = gradient_field(grid(lambda p: p[..., 0]))
    assert np.allclose(g.components[0], 1) and np.allclose(g.components[1], 0)
    g = gradient_field(grid(lambda p: p[..., 0] ** 2))
    inner = (slice(1, -1),) * 2
    x = grid(lambda p: p[..., 0]).values
    assert np.allclose(g.components[0][inner], 2 * x[inner])
    assert not gradient_field(grid(lambda p: 3.0 + 0 * p[..., 0])).components.any()


def test_too_small_grid():
    with pytest.raises(ValueError):
        ScalarGridField(np.zeros((2, 5)), [0, 0], 0.1)


def test_closedness():
    rot = covector([lambda p: -p[..., 1], lambda p: p[..., 0]])
    assert abs(closedness_residual(rot).max - 2) < 1e-12
    zero = covector([lambda p: 0 * p[..., 0]] * 2)
    assert closedness_residual(zero).max == 0


def test_closedness_second_order():
    # sampled analytic gradient of e^x sin 2y
    fs = [lambda p: np.exp(p[..., 0]) * np.sin(2 * p[..., 1]), lambda p: 2 * np.exp(p[..., 0]) * np.cos(2 * p[..., 1])]
    res = [closedness_residual(covector(fs, lo=0.0, h=0.05 / 2**i, k=20 * 2**i + 1)).max for i in range(3)]
    orders = np.log2(np.array(res[:-1]) / np.array(res[1:]))
    assert (orders >= 1.9).all()


def test_divergence():
    assert divergence_residual(covector([lambda p: p[..., 1], lambda p: p[..., 0]])).max < 1e-12
    assert abs(divergence_residual(covector([lambda p: p[..., 0], lambda p: p[..., 1]])).max - 2) < 1e-12
    assert divergence_residual(covector([lambda p: 0 * p[..., 0]] * 2)).max == 0


def test_holonomy():
    k = lambda p: 1 + p[..., 0] ** 2  # noqa: E731
    a = covector([k, k, k], n=3, k=11, h=0.2)
    assert holonomy_residual(a).max < 1e-12
    twisted = covector([lambda p: p[..., 1], lambda p: 0 * p[..., 0], lambda p: 1 + 0 * p[..., 0]], n=3, k=11, h=0.2)
    assert abs(holonomy_residual(twisted).max - 1) < 1e-12


def test_laplacian():
    assert laplacian_residual(grid(lambda p: p[..., 0] ** 2 - p[..., 1] ** 2)).max <= 1e-9
    assert abs(laplacian_residual(grid(lambda p: p[..., 0] ** 2)).max - 2) < 1e-9
    assert laplacian_residual(grid(lambda p: 3 * p[..., 0] - p[..., 1])).max < 1e-12


def test_unit_field():
    u = unit_field(grid(lambda p: p[..., 0]))
    assert np.allclose(u.field.components[0], 1) and not u.excluded.any()
    sph = grid(lambda p: (p**2).sum(-1), n=3, lo=-1.0, h=0.1, k=21)
    u = unit_field(sph)
    norms = u.field.norm()[~u.excluded]
    assert np.abs(norms - 1).max() <= 1e-9
    assert u.excluded_nodes == [(10, 10, 10)]
    assert unit_field(grid(lambda p: 0 * p[..., 0] + 1)).excluded.all()


def test_mean_curvature_flat_and_cylinder():
    flat = mean_curvature(grid(lambda p: p[..., 0], n=3, k=9))
    assert np.nanmax(np.abs(flat.values)) == 0
    errs = []
    for h in (0.02, 0.01):
        k = int(round(0.4 / h)) + 1
        phi = ScalarGridField.from_function(lambda p: p[..., 0] ** 2 + p[..., 1] ** 2, [0.6, -0.2, -0.2], h, [k] * 3)
        H = mean_curvature(phi)
        rho = np.hypot(*np.moveaxis(phi.points()[..., :2], -1, 0))
        ok = H.valid()
        errs.append(np.abs(H.values[ok] + 1 / (3 * rho[ok])).max())
    assert errs[1] < errs[0] / 3


def test_mean_curvature_sphere():
    phi = ScalarGridField.from_function(lambda p: (p**2).sum(-1), [0.45, -0.04, -0.04], 0.01, [111, 9, 9])
    H = mean_curvature(phi)
    r = np.linalg.norm(phi.points(), axis=-1)
    ok = H.valid() & (r >= 0.5) & (r <= 1.5)
    rel = np.abs(H.values[ok] * r[ok] * 1.5 + 1)
    assert ok.sum() > 1000 and rel.max() < 0.01


def test_laplacian_curvature_consistency():
    # |grad phi| = 1 for phi = x1, so d*(dphi/|grad phi|) = laplacian = 0
    phi = grid(lambda p: p[..., 0], n=3, k=9)
    assert np.nanmax(np.abs(mean_curvature(phi).values)) == 0
    assert laplacian_residual(phi).max < 1e-9
    # phi = r also has unit gradient, but a nonzero laplacian (n-1)/r
    r = ScalarGridField.from_function(lambda p: np.linalg.norm(p, axis=-1), [0.5, -0.05, -0.05], 0.01, [51, 11, 11])
    H = mean_curvature(r)
    lap = laplacian_residual(r).field
    ok = H.valid()
    assert np.abs(H.values[ok] + lap[ok] / 3).max() < 1e-3 * np.abs(lap[ok]).max()


def sphere_mesh(k):
    dth, dph = np.pi / k, 2 * np.pi / k
    pieces = []
    for i in range(k):
        th = (i + 0.5) * dth
        for j in range(k):
            ph = (j + 0.5) * dph
            p = np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
            e_th = dth * np.array([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)])
            e_ph = dph * np.array([-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), 0.0])
            pieces.append(SmallParallelepiped(p, [tuple(e_th), tuple(e_ph)]))
    return IntegralSurface(pieces)


def test_level_set_area_sphere():
    S = sphere_mesh(100)
    assert len(S) == 10_000
    area = level_set_area(lambda x: float(x @ x) - 1, S)
    assert abs(area - 4 * np.pi) < 0.01 * 4 * np.pi
    # tangent pieces are colinear with *n
    assert abs(area - linear_volume(S)) < 1e-6 * area


def test_level_set_area_grid_input():
    S = sphere_mesh(30)
    phi = ScalarGridField.from_function(lambda p: (p**2).sum(-1), [-1.5] * 3, 0.05, [61] * 3)
    assert abs(level_set_area(phi, S) - 4 * np.pi) < 0.02 * 4 * np.pi


def test_level_set_area_flat_and_tilted():
    phi = lambda x: x[2]  # noqa: E731
    flat = IntegralSurface([SmallParallelepiped((0, 0, 0), [(1, 0, 0), (0, 1, 0)])])
    assert abs(level_set_area(phi, flat) - 1) < 1e-9
    c, s = np.cos(np.pi / 3), np.sin(np.pi / 3)
    tilted = IntegralSurface([SmallParallelepiped((0, 0, 0), [(1, 0, 0), (0, c, s)])])
    assert abs(level_set_area(phi, tilted) - 0.5 * linear_volume(tilted)) < 1e-9
    assert level_set_area(phi, IntegralSurface([], 3, 2)) == 0
