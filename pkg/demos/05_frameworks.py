"""Framework graphs, connected sums and the surfaces they bound."""
from parallelepipeds.cubical import homology
from parallelepipeds.frameworks import (
    FrameworkSum,
    compositions,
    elementary_graph,
    parse_sum,
    pi1_trivial,
    poincare_betti,
    sum_graph,
    surface_complex,
    validate_framework,
)

# Each composition of n gives a cube graph with multiplied edges.
print(f"{'composition':<14} {'V':>3} {'E':>3}  valid  pi1 trivial")
for c in compositions(4):
    g = elementary_graph(c)
    print(f"{str(c):<14} {len(g.vertices):>3} {len(g.edges):>3}  {bool(validate_framework(g))!s:<5}  "
          f"{pi1_trivial(FrameworkSum(4, (c,)))}")

# Sums are multisets of compositions; the sphere is the neutral element.
s = parse_sum("(1 2) + (3) + (2 1)")
print("\n(1 2) + (3) + (2 1) =", s)
g = sum_graph(s)
print("spliced graph:", len(g.vertices), "vertices,", len(g.edges), "edges, valid:", bool(validate_framework(g)))

# The surface of an elementary framework is a product of spheres.
for c in compositions(3):
    res = homology(surface_complex(c))
    print(f"{str(c):<10} {str(res):<28} product formula {poincare_betti(c)}")
