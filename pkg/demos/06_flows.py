"""Grid diagnostics: Laplacian, closedness, divergence, holonomy, mean curvature, level-set area."""
import numpy as np

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
)
from parallelepipeds.forms import IntegralSurface, SmallParallelepiped

# A harmonic potential passes the Laplacian test to rounding.
phi = ScalarGridField.from_function(lambda p: p[..., 0] ** 2 - p[..., 1] ** 2, [-1, -1], 0.05, [41, 41])
print("laplacian residual of x1^2 - x2^2:", laplacian_residual(phi).max)
print("closedness of its gradient:", closedness_residual(gradient_field(phi)).max)

# A rotation is divergence free but not closed.
rot = CovectorGridField.from_functions([lambda p: -p[..., 1], lambda p: p[..., 0]], [-1, -1], 0.1, [21, 21])
print("rotation: closedness", closedness_residual(rot).max, "divergence", divergence_residual(rot).max)

# (x2, 0, 1) is not colinear with any gradient.
tw = CovectorGridField.from_functions(
    [lambda p: p[..., 1], lambda p: 0 * p[..., 0], lambda p: 1 + 0 * p[..., 0]], [-1] * 3, 0.2, [11] * 3
)
print("holonomy residual of (x2, 0, 1):", holonomy_residual(tw).max)

# Mean curvature with the -1/n prefactor: spheres give -2/(3r) in R^3.
sph = ScalarGridField.from_function(lambda p: (p**2).sum(-1), [0.45, -0.04, -0.04], 0.01, [111, 9, 9])
H = mean_curvature(sph)
for i in (5, 30, 55, 80, 105):
    x = sph.point((i, 4, 4))
    r = np.linalg.norm(x)
    print(f"r={r:.3f}  H={H.values[i, 4, 4]:+.6f}  -2/(3r)={-2 / (3 * r):+.6f}")

# Area of the unit sphere from 10^4 tangent parallelograms.
k = 100
pieces = []
for i in range(k):
    th = (i + 0.5) * np.pi / k
    for j in range(k):
        ph = (j + 0.5) * 2 * np.pi / k
        p = np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
        e_th = np.pi / k * np.array([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)])
        e_ph = 2 * np.pi / k * np.array([-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), 0.0])
        pieces.append(SmallParallelepiped(p, [tuple(e_th), tuple(e_ph)]))
area = level_set_area(lambda x: float(x @ x) - 1, IntegralSurface(pieces))
print(f"sphere area {area:.6f} vs 4 pi {4 * np.pi:.6f}")
