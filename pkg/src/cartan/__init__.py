"""Cartan-Dieudonne factorization of O(p,q) maps into hyperplane reflections."""

from .analysis import (
    DecompositionReport,
    KernelInfo,
    build_report,
    grade_lower_bound,
    householder_matrix,
    kernel_analysis,
)
from .clifford import (
    Multivector,
    NotAVectorError,
    Versor,
    apply_versor,
    geometric_product,
    grade,
    grade_part,
    product_of_vectors,
    reflect,
    vector_inverse,
    versors_proportional,
)
from .factorization import (
    InvariantError,
    NotOrthogonalError,
    OrthogonalMap,
    ReflectionSequence,
    ReflectionStep,
    StepKind,
    compose_reflections,
    decompose,
    decompose_weak,
    detect_artinian,
    find_pivot,
    recompose,
    step_reflector,
)
from .scalar import EXACT, Field, float_field, format_scalar, parse_scalar
from .space import (
    Basis,
    DependentBasisError,
    DimensionError,
    OrthogonalBasis,
    Signature,
    Vector,
    VectorKind,
    classify,
    gram_matrix,
    is_invertible_vector,
    is_isotropic,
    is_orthogonal_map,
    orthogonal_span,
    orthogonality_defect,
    orthogonalize,
    reflect_formula,
    scalar_product,
    square,
)

__version__ = "0.1.0"
