"""Parallelepiped calculus: signs, multivectors, cubical complexes, forms,
frameworks and flow diagnostics."""

__version__ = "0.1.0"

from .permcalc import (
    OrderedSubset,
    Permutation,
    Sign,
    complement,
    deletion_sign,
    insertion_sign,
    perm_sign,
    sequence_sign,
    split_sign,
)
from .exterior import (
    Multivector,
    VectorSystem,
    cross,
    gram_determinant,
    gram_volume,
    hodge_star,
    inner,
    is_dependent,
    lower_boundary,
    raise_boundary,
    wedge,
)
from .smith import smith_normal_form
from .cubical import (
    ComplexValidationError,
    CubicalComplex,
    ElementaryCube,
    HomologyResult,
    IntegerChain,
    NotManifoldError,
    boundary_chain,
    boundary_matrix,
    euler_characteristic,
    faces,
    homology,
    orient,
    oriented_boundary,
    subdivide,
    validate_complex,
)
from .polynomial import Polynomial
from .forms import (
    FormField,
    IntegralSurface,
    SmallParallelepiped,
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
from .frameworks import (
    Composition,
    FrameworkGraph,
    FrameworkSum,
    compositions,
    connected_sum,
    elementary_graph,
    pi1_trivial,
    poincare_betti,
    sum_graph,
    surface_complex,
    validate_framework,
)
from .flows import (
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
from .formats import ParseError
