"""Exact verification toolkit for generalized complex torus geometry.

Computes generalized complex structures on real tori from period
matrices, their shear (B-field) transforms and mirror duals, trivial
gerbes with flat connections on the standard chart cover, line-bundle
objects on both sides of the mirror, and the hom-complex identities of
the resulting dg-category; every identity is decided exactly over
Gaussian rationals and symbolic differential forms.
"""

from .bundles import (
    AffineSection,
    ComplexSideObject,
    IntegrabilityResult,
    TransitionData,
    build_transitions,
    check_integrability,
    check_twisted_compatibility,
    connection_form,
    is_integrable,
    local_curvature,
    tensor_deform,
    transition_cocycle_report,
    true_curvature,
)
from .dg import Morphism, compose, differential, identity_morphism, verify_dg_axioms
from .forms import (
    CoordSystem,
    Form,
    Poly,
    PQForm,
    complex_coords,
    mirror_coords,
    pq_split,
    restrict_to_graph,
)
from .gcs import (
    BField,
    GCStructure,
    MirrorSymplecticData,
    b_transform,
    complex_structure,
    mirror,
    mirror_symplectic_data,
)
from .gerbe import (
    CoverIndex,
    GerbeConnection,
    build_gerbe,
    check_gerbe_axioms,
    cover_indices,
)
from .linalg import (
    CMatrix,
    CScalar,
    PeriodMatrix,
    alt_check,
    parse_rational,
    parse_scalar,
    validate_period,
)
from .symplectic import (
    FirstChernResult,
    LocalSystemData,
    MatchVerdict,
    SymplecticSideObject,
    build_local_system,
    curvature_matches_background,
    first_chern,
    is_fukaya_object,
    is_lagrangian,
    mirror_match,
    symplectic_object,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSection",
    "BField",
    "CMatrix",
    "CScalar",
    "ComplexSideObject",
    "CoordSystem",
    "CoverIndex",
    "FirstChernResult",
    "Form",
    "GCStructure",
    "GerbeConnection",
    "IntegrabilityResult",
    "LocalSystemData",
    "MatchVerdict",
    "MirrorSymplecticData",
    "Morphism",
    "PQForm",
    "PeriodMatrix",
    "Poly",
    "SymplecticSideObject",
    "TransitionData",
    "alt_check",
    "b_transform",
    "build_gerbe",
    "build_local_system",
    "build_transitions",
    "check_gerbe_axioms",
    "check_integrability",
    "check_twisted_compatibility",
    "complex_coords",
    "complex_structure",
    "compose",
    "connection_form",
    "cover_indices",
    "curvature_matches_background",
    "differential",
    "first_chern",
    "identity_morphism",
    "is_fukaya_object",
    "is_integrable",
    "is_lagrangian",
    "local_curvature",
    "mirror",
    "mirror_coords",
    "mirror_match",
    "mirror_symplectic_data",
    "parse_rational",
    "parse_scalar",
    "pq_split",
    "restrict_to_graph",
    "symplectic_object",
    "tensor_deform",
    "transition_cocycle_report",
    "true_curvature",
    "validate_period",
    "verify_dg_axioms",
]
