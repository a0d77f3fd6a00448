import random

import pytest

from parallelepipeds.cubical import homology, orient
from parallelepipeds.frameworks import (
    Composition,
    FrameworkGraph,
    FrameworkSum,
    compositions,
    connected_sum,
    elementary_graph,
    parse_sum,
    partitions,
    pi1_trivial,
    poincare_betti,
    sphere_graph,
    splice,
    sum_graph,
    surface_complex,
    validate_framework,
)


def test_composition_counts():
    for n in range(1, 7):
        assert len(compositions(n)) == 2 ** (n - 1)
    assert [c.parts for c in partitions(4)] == [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
    with pytest.raises(ValueError):
        Composition((2, 0))


def test_elementary_graphs_valid_with_counts():
    for n in range(1, 7):
        for c in compositions(n):
            g = elementary_graph(c)
            assert validate_framework(g)
            assert len(g.vertices) == 2**c.m
            assert len(g.edges) == n * 2 ** (c.m - 1)


def test_invalid_graphs():
    square = FrameworkGraph(2, ["a", "b", "c", "d"], [("a", "b", 1), ("b", "c", 2), ("c", "d", 1), ("d", "a", 2)])
    assert validate_framework(square)
    bad = FrameworkGraph(2, ["a", "b", "c", "d"], [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
    assert not validate_framework(bad)
    loop = FrameworkGraph(1, ["a"], [("a", "a", 1)])
    assert validate_framework(loop).loops


def test_sphere_graph():
    g = sphere_graph(3)
    assert len(g.vertices) == 2 and len(g.edges) == 3


def test_sum_algebra():
    a = FrameworkSum(3, ((1, 2),))
    b = FrameworkSum(3, ((1, 1, 1),))
    s = a + b
    assert len(s.terms) == 2
    assert a + FrameworkSum.sphere(3) == a
    assert connected_sum(a, b) == connected_sum(b, a)
    assert str(parse_sum("(1 2) + (3)")) == "(1 2)"
    assert str(parse_sum("S3")) == "S3"
    with pytest.raises(ValueError):
        parse_sum("(1 2) + (2 2)")


def test_sphere_is_neutral_randomly():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 6)
        pool = compositions(n)
        x = FrameworkSum(n, tuple(rng.choice(pool) for _ in range(rng.randint(0, 4))))
        assert x + FrameworkSum.sphere(n) == x


def test_sum_graph_is_valid():
    for text in ("(1 1) + (1 1)", "(1 2) + (1 1 1) + (2 1)", "(2 2) + (1 3)"):
        s = parse_sum(text)
        g = sum_graph(s)
        assert validate_framework(g)
        # splicing removes one vertex per graph
        assert len(g.vertices) == sum(2**t.m for t in s.terms) - 2 * (len(s.terms) - 1)


def test_splice_requires_disjoint_ids():
    g = elementary_graph(Composition((1, 1)))
    with pytest.raises(ValueError):
        splice(g, g)


def test_pi1_rule():
    assert pi1_trivial(FrameworkSum.sphere(3))
    assert not pi1_trivial(FrameworkSum.sphere(1))
    assert not pi1_trivial(FrameworkSum(3, ((1, 2),)))
    assert pi1_trivial(FrameworkSum(4, ((2, 2),)))
    for n in range(1, 7):
        for c in compositions(n):
            assert pi1_trivial(FrameworkSum(n, (c,))) == (1 not in c.parts or (c.m == 1 and n >= 2))


def test_surface_complexes():
    assert homology(surface_complex(Composition((3,)))).betti == (1, 0, 0, 1)
    assert homology(surface_complex(Composition((1, 1)))).betti == (1, 2, 1)
    for n in range(1, 5):
        for c in compositions(n):
            cx = surface_complex(c)
            res = homology(cx)
            assert res.betti == poincare_betti(c)
            assert not any(res.torsion)
            assert orient(cx).orientable
