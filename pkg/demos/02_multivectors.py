"""Wedge and cross products, the two boundary maps, Gram volume and the Hodge star."""
from fractions import Fraction

from parallelepipeds.exterior import (
    Multivector,
    cross,
    gram_volume,
    hodge_star,
    is_dependent,
    lower_boundary,
    raise_boundary,
    wedge,
)

# Integer input stays exact: coefficients are minors computed with fractions.
u, v = (1, 2, 0), (0, 1, 3)
w = wedge([u, v])
print("u ^ v =")
print(w.to_text())

# The cross product of m vectors is the Hodge dual of their wedge. For two
# vectors in R^3 it is the familiar vector product.
print("cross(u, v):", [cross([u, v])[(i,)] for i in (1, 2, 3)])
print("star(u ^ v) == cross(u, v):", hodge_star(w) == cross([u, v]))

# Gram volume is the area of the parallelogram; it equals the norm of u ^ v.
print("area:", gram_volume([u, v]))

# Dependence is the vanishing of the wedge.
print("dependent (1,2),(2,4):", is_dependent([(1, 2), (2, 4)]))
print("dependent (1,2),(2,5):", is_dependent([(1, 2), (2, 5)]))

# Both boundary maps square to zero.
x = Multivector(4, 2, {(1, 2): Fraction(1, 2), (2, 4): -3, (3, 4): 7})
print("lower(lower(x)) is zero:", not lower_boundary(lower_boundary(x)))
print("raise(raise(x)) is zero:", not raise_boundary(raise_boundary(x)))
