"""Normal bases of cyclic extensions from 1-dimensional algebraic groups.

Three constructions (additive group, multiplicative group, Lucas torus)
share one convolution-based multiplication kernel, verified against a
polynomial-basis oracle.
"""

from .additive import AdditiveParams, build_additive_context, default_isogeny_target
from .convolution import CyclicVector, convolve, convolve_inverse, pointwise, shift
from .engine import NBElement, NormalBasisContext, OpCounter, nb_add, nb_frobenius, nb_multiply
from .fields import (
    Bivariate,
    FieldElement,
    FieldSpec,
    Polynomial,
    field_arith,
    multiplicative_order,
    poly_factor,
    poly_gcd,
    poly_is_irreducible,
    resultant_eliminate,
    sqrt_in_field,
)
from .lucas import (
    LucasConstants,
    LucasParams,
    TorusPoint,
    build_lucas_context,
    fiber_field,
    find_generator,
    isogeny_polynomials,
    torus_add,
    torus_scalar_mul,
)
from .multiplicative import KummerParams, build_kummer_context, smallest_generator
from .oracle import (
    compute_weight,
    from_polynomial,
    oracle_multiply,
    oracle_trials,
    structure_constants,
    to_polynomial,
    verify_normal,
)

__version__ = "0.1.0"
