"""Cubical complexes, integer homology through Smith normal form, and orientation."""
from parallelepipeds import catalog
from parallelepipeds.cubical import homology, orient, validate_complex
from parallelepipeds.formats import write_complex

examples = {
    "solid square": catalog.solid_square(),
    "cube surface": catalog.cube_boundary(),
    "torus (periodic square)": catalog.periodic_torus(),
    "annulus": catalog.annulus(),
    "Moebius strip": catalog.mobius_strip(),
    "Klein bottle": catalog.klein_bottle(),
    "projective plane": catalog.projective_plane(),
}

print(f"{'complex':<24} {'cells':<14} {'homology':<24} orientable")
for name, cx in examples.items():
    assert validate_complex(cx).ok
    res = homology(cx)
    o = orient(cx)
    print(f"{name:<24} {str(cx.f_vector()):<14} {str(res):<24} {'yes' if o else 'no'}")

# A nonorientable complex comes with a witness: a cycle of top cells along
# which the sign constraints contradict each other.
print("\nMoebius witness:", orient(catalog.mobius_strip()).witness)

# Splitting cells along an axis leaves homology and orientability alone.
for axis in (1, 2):
    fine = catalog.split_axis(catalog.annulus(), axis)
    print(f"annulus split along axis {axis}: {fine.f_vector()} {homology(fine)}")

# Complex files are plain text.
print("\n" + write_complex(catalog.periodic_torus(2, 1)))
