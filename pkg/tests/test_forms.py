import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from parallelepipeds import catalog
from parallelepipeds.cubical import CubicalComplex, ElementaryCube, orient
from parallelepipeds.exterior import Multivector
from parallelepipeds.forms import (
    FormField,
    IntegralSurface,
    SmallParallelepiped,
    contract,
    exterior_derivative,
    integrate_surface,
    interior_product,
    linear_volume,
    prop5_residual,
    stokes_check,
    surface_from_complex,
    vector_volume,
    wedge_1form,
)

E = Multivector.basis


def x1dx2():
    return FormField(2, 1, {(2,): lambda x: x[0]})


def unit_square(k):
    return catalog.square_grid(k)


def test_contract():
    assert contract(FormField(2, 2, {(1, 2): 1}), (0, 0), E(2, (1, 2))) == 1
    assert contract(x1dx2(), (2, 0), E(2, (2,))) == 2
    with pytest.raises(ValueError):
        contract(x1dx2(), (0, 0), E(2, (1, 2)))


def test_exterior_derivative_examples():
    assert not exterior_derivative(FormField(3, 1, {(1,): 4.0, (3,): -1.0}), (0.3, 0.1, 2)).max_abs()
    d = exterior_derivative(x1dx2(), (0.5, 0.5))
    assert abs(d[(1, 2)] - 1) < 1e-9
    # d(x2 dx1) = dx2 ^ dx1 = -dx1 ^ dx2
    d = exterior_derivative(FormField(2, 1, {(1,): lambda x: x[1]}), (0.5, 0.5))
    assert abs(d[(1, 2)] + 1) < 1e-9


def test_exterior_derivative_squares_to_zero():
    # d(d phi) for a 0-form
    phi = FormField(3, 0, {(): lambda x: math.sin(x[0]) * x[1] ** 2 + x[2] ** 3 * x[0]})
    h = 1e-3

    def comp(i):
        return lambda x: exterior_derivative(phi, x, h)[(i,)]

    dphi = FormField(3, 1, {(i,): comp(i) for i in (1, 2, 3)})
    assert exterior_derivative(dphi, (0.3, -0.2, 0.7), h).max_abs() < 1e-5


def test_interior_product():
    top = FormField(2, 2, {(1, 2): 1})
    assert interior_product(top, (1, 0), (0, 0)) == -E(2, (2,))
    assert interior_product(top, (0, 1), (0, 0)) == E(2, (1,))
    assert not interior_product(top, (0, 0), (0, 0)).max_abs()


@settings(max_examples=40)
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.lists(st.floats(-3, 3), min_size=3, max_size=3))
def test_interior_twice_vanishes(coefs, b):
    a = FormField(3, 2, {(1, 2): coefs[0], (1, 3): coefs[1], (2, 3): coefs[2]})
    once = interior_product(a, b, (0, 0, 0))
    twice = interior_product(FormField.constant(once), b, (0, 0, 0))
    assert twice.max_abs() < 1e-9


def test_wedge_1form():
    dx1 = FormField(2, 1, {(1,): 1})
    dx2 = FormField(2, 1, {(2,): 1})
    assert wedge_1form(dx1, dx2, (0, 0)) == E(2, (1, 2))
    assert wedge_1form(dx2, dx1, (0, 0)) == -E(2, (1, 2))


def test_integrate_surface():
    top = FormField(2, 2, {(1, 2): 1})
    S = surface_from_complex(unit_square(32), 1 / 32)
    assert abs(integrate_surface(top, S) - 1) < 1e-12
    assert integrate_surface(top, IntegralSurface([], 2, 2)) == 0


def test_line_integral_on_square_boundary():
    # counterclockwise boundary of the unit square at h = 1/64
    k = 64
    h = 1 / k
    pieces = []
    for i in range(k):
        pieces.append(SmallParallelepiped((i * h, 0), [(h, 0)]))
        pieces.append(SmallParallelepiped((1, i * h), [(0, h)]))
        pieces.append(SmallParallelepiped(((i + 1) * h, 1), [(-h, 0)]))
        pieces.append(SmallParallelepiped((0, (i + 1) * h), [(0, -h)]))
    value = integrate_surface(x1dx2(), IntegralSurface(pieces))
    assert abs(value - 1) <= 2 * h


def test_volumes():
    flat = CubicalComplex.embedded(3, [ElementaryCube((i, j, 0), (1, 2)) for i in range(3) for j in range(2)])
    S = surface_from_complex(flat, 0.5)
    assert vector_volume(S).allclose(1.5 * E(3, (3,)))
    cube = catalog.cube_boundary()
    closed = surface_from_complex(cube, 1.0, sigma=orient(cube).sigma)
    assert vector_volume(closed).max_abs() < 1e-12
    one = IntegralSurface([SmallParallelepiped((0, 0), [(1, 0)])])
    assert vector_volume(one) == E(2, (2,)) * 1.0
    assert abs(linear_volume(surface_from_complex(unit_square(7), 1 / 7)) - 1) < 1e-12
    ts = np.linspace(0, 2 * np.pi, 257)
    pts = np.c_[np.cos(ts), np.sin(ts)]
    circle = IntegralSurface([SmallParallelepiped(p, [q - p]) for p, q in zip(pts[:-1], pts[1:])])
    assert abs(linear_volume(circle) - 2 * np.pi) < 1e-3
    assert linear_volume(IntegralSurface([SmallParallelepiped((0, 0), [(3, 4)])])) == 5


def test_dependent_piece_rejected():
    with pytest.raises(ValueError):
        SmallParallelepiped((0, 0), [(1, 2), (2, 4)])


def test_stokes_discrete_and_analytic():
    for k in (32, 64):
        res = stokes_check(x1dx2(), unit_square(k), 1 / k)
        assert abs(res.difference) <= 1e-9
        assert abs(res.boundary - 1) < 1e-12
    const = FormField(2, 1, {(1,): 3.0, (2,): -2.0})
    assert abs(stokes_check(const, catalog.annulus(), 0.25).boundary) < 1e-12


def test_stokes_analytic_first_order():
    # a = x1 x2 dx1 + x1 dx2, integral of da over the square is 1/2
    a = FormField(2, 1, {(1,): lambda x: x[0] * x[1], (2,): lambda x: x[0]})
    errs = [abs(stokes_check(a, unit_square(k), 1 / k, mode="analytic").interior - 0.5) for k in (16, 32, 64)]
    assert errs[0] / errs[1] >= 1.8 and errs[1] / errs[2] >= 1.8
    assert abs(stokes_check(a, unit_square(32), 1 / 32).difference) < 1e-12


def test_stokes_rejects_bad_regions():
    with pytest.raises(ValueError):
        stokes_check(FormField(2, 2, {(1, 2): 1}), unit_square(2), 0.5)
    with pytest.raises(ValueError):
        stokes_check(x1dx2(), catalog.periodic_torus(), 0.5)


def test_prop5_affine_exact():
    a = FormField(3, 1, {(1,): lambda x: 1 + 2 * x[1] - x[2], (2,): lambda x: 3 * x[0], (3,): 0.5})
    x = np.array([0.2, -0.4, 1.0])
    assert prop5_residual(a, x, [(0.1, 0, 0.02), (0, 0.05, 0.01)]) <= 1e-12


def test_prop5_quadratic_first_order():
    a = FormField(2, 1, {(1,): lambda x: x[0] * x[1], (2,): lambda x: x[0] ** 2})
    x = np.array([0.3, 0.7])
    res = [prop5_residual(a, x, [(t, 0), (0, t)], relative=True) for t in (0.1, 0.05, 0.025)]
    assert res[0] / res[1] >= 1.8 and res[1] / res[2] >= 1.8
