"""Discrete Stokes: the integral of da over a region against a over its boundary."""
from parallelepipeds import catalog
from parallelepipeds.forms import FormField, integrate_surface, surface_from_complex, stokes_check

# a = x1 dx2, so da = dx1 ^ dx2 and both sides equal the area of the square.
a = FormField(2, 1, {(2,): lambda x: x[0]})
for k in (8, 32, 128):
    r = stokes_check(a, catalog.square_grid(k), 1 / k)
    print(f"discrete  h=1/{k:<4} interior={r.interior:.15f} boundary={r.boundary:.15f}")

# The discrete mode sums each cell's facets, so interior faces cancel exactly.
# The analytic mode samples da at the cell corners instead and converges at
# first order.
b = FormField(2, 1, {(1,): lambda x: x[0] * x[1], (2,): lambda x: x[0]})
prev = None
for k in (8, 16, 32, 64):
    err = abs(stokes_check(b, catalog.square_grid(k), 1 / k, mode="analytic").interior - 0.5)
    print(f"analytic  h=1/{k:<4} error={err:.3e}" + (f"  ratio={prev / err:.2f}" if prev else ""))
    prev = err

# Plain integration over a meshed surface.
top = FormField(2, 2, {(1, 2): 1.0})
print("area of the unit square:", integrate_surface(top, surface_from_complex(catalog.square_grid(16), 1 / 16)))
