"""Mirror-side objects: Lagrangian graph sections with local systems.

A section graph in the mirror torus carries a rank-one local system whose
connection picks up the twist term; whether the pair is an admissible
object is decided by two conditions, the Lagrangian condition on the
graph and the matching of the local system curvature with the restricted
background two-form.  Each condition is computed twice, once by the
reduced matrix test and once by literally restricting the relevant form
to the graph, and the two routes must agree.

The twist matrix gates the construction: an ordinary local system with
the prescribed curvature exists iff the twist is integral (its integrality
is exactly the integrality of the first Chern class on the graph), and
otherwise only the twisted variant with trivial transitions exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .bundles import AffineSection, ComplexSideObject, check_integrability
from .errors import (
    DimensionMismatchError,
    MirrorInconsistencyError,
    NonIntegralTwistError,
    NotAlternatingError,
    ParameterMismatchError,
)
from .forms import (
    CoordSystem,
    Form,
    Poly,
    coordinate_pairing,
    covector_pairing,
    mirror_coords,
    restrict_to_graph,
)
from .gcs import MirrorSymplecticData, mirror_symplectic_data
from .linalg import MINUS_I, CMatrix, CScalar, PeriodMatrix, alt_check

ORDINARY = "ordinary"
TWISTED = "twisted"


@dataclass(frozen=True)
class SymplecticSideObject:
    """Graph Lagrangian candidate with a (possibly twisted) local system."""

    section: AffineSection
    q: Tuple[Fraction, ...]
    tau: CMatrix
    data: MirrorSymplecticData
    mode: str
    period: PeriodMatrix

    def __post_init__(self):
        n = self.period.n
        if self.section.n != n or len(self.q) != n:
            raise DimensionMismatchError("object parameters disagree in dimension")
        if not alt_check(self.tau):
            raise NotAlternatingError("twist must be an alternating real matrix")
        if self.mode not in (ORDINARY, TWISTED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == ORDINARY and not self.tau.is_integer():
            raise NonIntegralTwistError(
                "ordinary local systems require an integer twist; use twisted mode"
            )

    @property
    def n(self) -> int:
        return self.period.n

    @property
    def coords(self) -> CoordSystem:
        return mirror_coords(self.n)


def symplectic_object(
    section: AffineSection,
    q: Tuple[Fraction, ...],
    tau: CMatrix,
    period: PeriodMatrix,
    mode: str = None,
) -> SymplecticSideObject:
    """Build a mirror-side object; the default mode is ordinary when the
    twist is integral and twisted otherwise."""
    if mode is None:
        mode = ORDINARY if tau.is_integer() else TWISTED
    data = mirror_symplectic_data(period, tau)
    return SymplecticSideObject(section, tuple(q), tau, data, mode, period)


# --- the mirror symplectic forms --------------------------------------------------


def symplectic_form(obj: SymplecticSideObject) -> Form:
    """2 pi dxv^t omega_mat dyv, the (real) symplectic pairing form."""
    return covector_pairing(
        obj.coords,
        obj.data.omega_mat,
        row_offset=0,
        col_offset=obj.n,
        scalar=CScalar(2),
        pi_power=1,
    )


def background_field_form(obj: SymplecticSideObject) -> Form:
    """The twisted background two-form: 2 pi dxv^t b_mat dyv + pi dxv^t tau dxv."""
    untwisted = covector_pairing(
        obj.coords,
        obj.data.b_mat,
        row_offset=0,
        col_offset=obj.n,
        scalar=CScalar(2),
        pi_power=1,
    )
    twist = covector_pairing(
        obj.coords, obj.tau, row_offset=0, col_offset=0, scalar=CScalar(1), pi_power=1
    )
    return untwisted + twist


# --- local system ---------------------------------------------------------------


@dataclass(frozen=True)
class LocalSystemData:
    """Connection and transition data of the local system along the graph.

    ``transitions`` maps each base direction to the exponent linear form
    (in units of 2 pi i, as a coefficient vector over the base
    coordinates) picked up when that direction wraps; ordinary mode uses
    half the matching twist row, twisted mode is transition-free.
    """

    mode: str
    connection_form: Form
    transitions: Dict[int, Tuple[Fraction, ...]]


def build_local_system(obj: SymplecticSideObject) -> LocalSystemData:
    coords = obj.coords
    n = obj.n
    shift_terms: Dict[tuple, Poly] = {}
    for k in range(n):
        if obj.q[k] != 0:
            shift_terms[(k,)] = Poly.const(
                coords.nvars, CScalar(0, -2) * CScalar(obj.q[k]), pi_power=1
            )
    shift_part = Form(coords, shift_terms)
    twist_part = coordinate_pairing(
        coords, obj.tau, var_offset=0, cov_offset=0, scalar=MINUS_I, pi_power=1
    )
    connection = shift_part + twist_part
    transitions: Dict[int, Tuple[Fraction, ...]] = {}
    if obj.mode == ORDINARY:
        for i in range(n):
            row = tuple(obj.tau[(i, t)].re / 2 for t in range(n))
            if any(v != 0 for v in row):
                transitions[i] = row
    return LocalSystemData(obj.mode, connection, transitions)


def local_system_curvature(obj: SymplecticSideObject) -> Form:
    """Curvature (ordinary) or chartwise curvature (twisted) of the local
    system; the same two-form -pi i dxv^t tau dxv either way."""
    return build_local_system(obj).connection_form.d()


@dataclass(frozen=True)
class FirstChernResult:
    form: Form
    integral: bool


def first_chern(obj: SymplecticSideObject) -> FirstChernResult:
    """First Chern character of the local system along the graph.

    sum over i < j of tau_ij dxv_i ^ dxv_j; integral iff every twist
    entry is an integer, which is exactly when ordinary mode is allowed.
    """
    coords = obj.coords
    n = obj.n
    terms: Dict[tuple, Poly] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = obj.tau[(i, j)]
            if not c.is_zero():
                terms[(i, j)] = Poly.const(coords.nvars, c)
    return FirstChernResult(Form(coords, terms), obj.tau.is_integer())


# --- object conditions ------------------------------------------------------------


def _restricted(obj: SymplecticSideObject, form: Form) -> Form:
    offset = obj.section.offset
    return restrict_to_graph(form, obj.section.linear, offset)


def is_lagrangian(obj: SymplecticSideObject) -> bool:
    """Whether the section graph is Lagrangian.

    Matrix route: omega_mat * a symmetric.  Form route: the symplectic
    form restricts to zero on the graph.  Both are computed; disagreement
    is an internal error.
    """
    product = obj.data.omega_mat * obj.section.linear
    matrix_route = product == product.transpose()
    form_route = _restricted(obj, symplectic_form(obj)).is_zero()
    if matrix_route != form_route:
        raise MirrorInconsistencyError("Lagrangian criteria disagree")
    return matrix_route


def curvature_matches_background(obj: SymplecticSideObject) -> bool:
    """Whether the local system curvature equals minus i times the
    background two-form restricted to the graph.

    Reduces to b_mat * a symmetric; in twisted mode the chartwise
    curvature plays the role of the curvature.  Both the reduced matrix
    test and the literal form comparison are computed and must agree.
    """
    product = obj.data.b_mat * obj.section.linear
    matrix_route = product == product.transpose()
    curvature = local_system_curvature(obj)
    target = _restricted(obj, background_field_form(obj).scale(MINUS_I))
    form_route = curvature == target
    if matrix_route != form_route:
        raise MirrorInconsistencyError("curvature/background criteria disagree")
    return matrix_route


def is_fukaya_object(obj: SymplecticSideObject) -> bool:
    """Both object conditions at once.

    Also recomputes the single equivalent criterion (a T symmetric, with
    T recovered from the mirror data) and insists it matches; the
    combined condition factors through minus the inverse transpose of the
    period matrix.
    """
    verdict = is_lagrangian(obj) and curvature_matches_background(obj)
    combined = obj.data.negative_inverse_transpose() * obj.section.linear
    single_condition = combined == combined.transpose()
    if single_condition != verdict:
        raise MirrorInconsistencyError(
            "combined object condition disagrees with its factorisation"
        )
    return verdict


# --- duality matcher -----------------------------------------------------------------


class MatchVerdict(enum.Enum):
    MIRROR_DUAL = "MIRROR_DUAL"
    BOTH_OBSTRUCTED = "BOTH_OBSTRUCTED"

    def __str__(self) -> str:
        return self.value


def mirror_match(
    complex_obj: ComplexSideObject, symplectic_obj: SymplecticSideObject
) -> MatchVerdict:
    """Match the two sides of one parameter set.

    Yields MIRROR_DUAL when both objects are admissible and
    BOTH_OBSTRUCTED when neither is; a split verdict contradicts the
    duality equivalence and raises an internal assertion error.
    """
    if (
        complex_obj.section.linear != symplectic_obj.section.linear
        or complex_obj.section.offset != symplectic_obj.section.offset
        or complex_obj.q != symplectic_obj.q
        or complex_obj.tau != symplectic_obj.tau
        or complex_obj.period.matrix != symplectic_obj.period.matrix
    ):
        raise ParameterMismatchError("mirror match requires shared parameters")
    left = check_integrability(complex_obj).integrable
    right = is_fukaya_object(symplectic_obj)
    if left and right:
        return MatchVerdict.MIRROR_DUAL
    if not left and not right:
        return MatchVerdict.BOTH_OBSTRUCTED
    raise MirrorInconsistencyError(
        f"sides disagree: integrable={left}, admissible={right}"
    )
