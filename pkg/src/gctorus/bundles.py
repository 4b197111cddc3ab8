"""Complex-side line bundle objects over the (possibly twisted) torus.

An object is determined by an affine section s(x) = a x + c with integer
linear part, a real shift vector q, a period matrix, and an alternating
twist matrix tau.  From these the module builds the chartwise connection
one-form, its local and true curvature two-forms, the transition
exponents on the 9^n cover, and decides integrability both through the
matrix criterion (a T symmetric) and through the antiholomorphic part of
the curvature; the two routes are cross-checked on every call.

Transitions are never evaluated: they are stored as exponent vectors (in
units of 2 pi i) attached to the wrap vector of an ordered chart pair,
and cocycle verification is integer arithmetic on those exponents.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    MirrorInconsistencyError,
    NotAlternatingError,
    ParameterMismatchError,
    SideMismatchError,
)
from .forms import (
    Form,
    PQForm,
    Poly,
    complex_coords,
    constant_covector_row,
    covector_pairing,
    coordinate_pairing,
    pq_split,
)
from .gerbe import (
    COMPLEX_SIDE,
    EXHAUSTIVE_CHART_LIMIT,
    CoverIndex,
    GerbeConnection,
    cover_indices,
    cover_size,
    nonempty_triples,
    wrap_vector,
)
from .linalg import MINUS_I, CMatrix, CScalar, PeriodMatrix, alt_check
from .report import AxiomResult
from .sampling import DEFAULT_AX_SAMPLES


@dataclass(frozen=True)
class AffineSection:
    """Affine section s(x) = linear * x + offset with integer linear part.

    Integrality of ``linear`` is what makes the section quasi-periodic:
    shifting a coordinate by one changes s by the matching column.
    """

    n: int
    linear: CMatrix
    offset: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.linear.rows != self.n or self.linear.cols != self.n:
            raise DimensionMismatchError(f"linear part must be {self.n}x{self.n}")
        if not self.linear.is_integer():
            raise ValueError("linear part of a section must have integer entries")
        if len(self.offset) != self.n:
            raise DimensionMismatchError("offset length does not match dimension")

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(v.re for v in self.linear.column(j))


@dataclass(frozen=True)
class ComplexSideObject:
    """Line bundle datum (section, shift vector, twist) over a fixed torus."""

    section: AffineSection
    q: Tuple[Fraction, ...]
    tau: CMatrix
    period: PeriodMatrix

    def __post_init__(self):
        n = self.period.n
        if self.section.n != n or len(self.q) != n:
            raise DimensionMismatchError("object parameters disagree in dimension")
        if self.tau.rows != n or self.tau.cols != n:
            raise DimensionMismatchError("twist dimension mismatch")
        if not alt_check(self.tau):
            raise NotAlternatingError("twist must be an alternating real matrix")

    @property
    def n(self) -> int:
        return self.period.n

    def untwisted(self) -> "ComplexSideObject":
        return replace(self, tau=CMatrix.zeros(self.n, self.n))

    def shares_parameters(self, other: "ComplexSideObject") -> bool:
        return (
            self.section == other.section
            and self.q == other.q
            and self.tau == other.tau
            and self.period.matrix == other.period.matrix
        )


def connection_form(obj: ComplexSideObject) -> Form:
    """Chartwise connection one-form.

    -2 pi i (s(x)^t + q^t T) dy  -  pi i x^t tau dx; the twist term is the
    only dependence on tau.
    """
    coords = complex_coords(obj.n)
    n = obj.n
    minus_two_pi_i = CScalar(0, -2)
    dy_terms: Dict[tuple, Poly] = {}
    for k in range(n):
        poly = Poly.zero(coords.nvars)
        for j in range(n):
            entry = obj.section.linear[(k, j)]
            if not entry.is_zero():
                expo = tuple(1 if t == j else 0 for t in range(coords.nvars)) + (1,)
                poly = poly + Poly(coords.nvars, {expo: minus_two_pi_i * entry})
        qt_k = sum(
            (CScalar(obj.q[j]) * obj.period.matrix[(j, k)] for j in range(n)),
            start=CScalar(obj.section.offset[k]),
        )
        if not qt_k.is_zero():
            poly = poly + Poly.const(coords.nvars, minus_two_pi_i * qt_k, pi_power=1)
        if not poly.is_zero():
            dy_terms[(coords.y_index(k),)] = poly
    base = Form(coords, dy_terms)
    twist = coordinate_pairing(
        coords, obj.tau, var_offset=0, cov_offset=0, scalar=MINUS_I, pi_power=1
    )
    return base + twist


def local_curvature(obj: ComplexSideObject) -> Form:
    """Curvature of the chartwise form: d omega (rank one, so no wedge term)."""
    return connection_form(obj).d()


def gerbe_two_form(obj: ComplexSideObject) -> Form:
    """The chart two-form of the twist gerbe: -pi i dx^t tau dx."""
    coords = complex_coords(obj.n)
    return covector_pairing(
        coords, obj.tau, row_offset=0, col_offset=0, scalar=MINUS_I, pi_power=1
    )


def true_curvature(obj: ComplexSideObject) -> Form:
    """Local curvature minus the gerbe two-form; independent of the twist."""
    return local_curvature(obj) - gerbe_two_form(obj)


def curvature_antiholomorphic_part(obj: ComplexSideObject) -> PQForm:
    """(0,2)-part of the true curvature in the dz/dzb basis."""
    return pq_split(true_curvature(obj), obj.period).component(0, 2)


def _expected_local_02(obj: ComplexSideObject) -> PQForm:
    """Closed form of the (0,2)-part of the local curvature when the object
    is integrable: -pi i dzb^t W^t T^t tau T W dzb with W = (T - conj(T))^{-1}."""
    coords = complex_coords(obj.n)
    T = obj.period.matrix
    W = (T - obj.period.conjugate()).inverse()
    middle = W.transpose() * T.transpose() * obj.tau * T * W
    n = obj.n
    terms: Dict[tuple, Poly] = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = MINUS_I * middle[(i, j)]
            if c.is_zero():
                continue
            lo, hi = (n + i, n + j) if i < j else (n + j, n + i)
            sign = 1 if i < j else -1
            poly = Poly.const(coords.nvars, c if sign > 0 else -c, pi_power=1)
            key = (lo, hi)
            acc = terms.get(key)
            terms[key] = poly if acc is None else acc + poly
    return PQForm(coords, obj.period, terms)


@dataclass(frozen=True)
class IntegrabilityResult:
    integrable: bool
    curvature_02: PQForm

    def __bool__(self) -> bool:
        return self.integrable


def check_integrability(obj: ComplexSideObject) -> IntegrabilityResult:
    """Decide integrability and cross-check the two characterisations.

    The matrix route tests a T = (a T)^t; the form route tests vanishing
    of the (0,2) curvature part.  Disagreement is an internal error.  When
    integrable, the closed form of the local curvature's (0,2)-part is
    also recomputed and compared against the split of the actual local
    curvature.
    """
    aT = obj.section.linear * obj.period.matrix
    matrix_route = aT == aT.transpose()
    part = curvature_antiholomorphic_part(obj)
    form_route = part.is_zero()
    if matrix_route != form_route:
        raise MirrorInconsistencyError(
            "matrix and curvature criteria for integrability disagree"
        )
    if matrix_route:
        local_02 = pq_split(local_curvature(obj), obj.period).component(0, 2)
        if local_02 != _expected_local_02(obj):
            raise MirrorInconsistencyError(
                "local curvature (0,2)-part does not match its closed form"
            )
    return IntegrabilityResult(matrix_route, part)


def is_integrable(obj: ComplexSideObject) -> bool:
    return check_integrability(obj).integrable


def tensor_deform(obj: ComplexSideObject, tau: CMatrix) -> ComplexSideObject:
    """Object-level twist: deform an untwisted object by ``tau``.

    Only the connection picks up the term -pi i x^t tau dx; section,
    shift vector and transitions are unchanged.
    """
    if not obj.tau.is_zero():
        raise ParameterMismatchError("tensor deformation starts from an untwisted object")
    if not alt_check(tau):
        raise NotAlternatingError("twist must be an alternating real matrix")
    return replace(obj, tau=tau)


# --- transitions -----------------------------------------------------------------


@dataclass(frozen=True)
class TransitionData:
    """Transition exponents of the bundle on the 9^n cover.

    For an ordered chart pair the transition function is
    exp(2 pi i e^t y) in the source chart's coordinates, where e is the
    integer exponent vector ``linear * wrap`` of the pair's base wrap
    vector.  Exponents compose additively, so cocycle verification is
    exact integer arithmetic.
    """

    n: int
    linear: CMatrix

    def exponent_vector(self, i: CoverIndex, j: CoverIndex) -> Tuple[Fraction, ...]:
        dl, _ = wrap_vector(i, j)
        return self._vector(dl)

    def _vector(self, dl: Tuple[int, ...]) -> Tuple[Fraction, ...]:
        return tuple(
            sum((self.linear[(t, s)].re * dl[s] for s in range(self.n)), Fraction(0))
            for t in range(self.n)
        )

    def is_trivial(self, i: CoverIndex, j: CoverIndex) -> bool:
        return all(v == 0 for v in self.exponent_vector(i, j))


def build_transitions(obj: ComplexSideObject) -> TransitionData:
    """Transition data of the object; the twist plays no role here."""
    return TransitionData(obj.n, obj.section.linear)


def transition_cocycle_report(
    data: TransitionData,
    samples: int = DEFAULT_AX_SAMPLES,
    seed: int = 0,
) -> AxiomResult:
    """Verify that around every nonempty chart triple the transition
    exponents sum to an integer constant (zero linear part included), so
    the product of the three transition functions is one."""
    n = data.n
    limit = None if cover_size(n) <= EXHAUSTIVE_CHART_LIMIT else samples
    vector_memo: Dict[Tuple[int, ...], Tuple[Fraction, ...]] = {}

    def exponent(dl: Tuple[int, ...]) -> Tuple[Fraction, ...]:
        vec = vector_memo.get(dl)
        if vec is None:
            vec = data._vector(dl)
            vector_memo[dl] = vec
        return vec

    checked: set = set()
    for i, j, k in nonempty_triples(n, limit, seed):
        dl_ij, dm_ij = wrap_vector(i, j)
        dl_jk, dm_jk = wrap_vector(j, k)
        dl_ki, _ = wrap_vector(k, i)
        # The verdict depends on the pair wrap vectors only; skip repeats.
        key = (dl_ij, dl_jk, dm_ij, dm_jk)
        if key in checked:
            continue
        checked.add(key)
        v_ij = exponent(dl_ij)
        v_jk = exponent(dl_jk)
        v_ki = exponent(dl_ki)
        linear_sum = tuple(a + b + c for a, b, c in zip(v_ij, v_jk, v_ki))
        if any(v != 0 for v in linear_sum):
            return AxiomResult(
                "transition-cocycle", False, f"{i}{j}{k}: linear part {linear_sum}"
            )
        _, dm_ik = wrap_vector(i, k)
        constant = sum(a * s for a, s in zip(v_ij, dm_jk)) + sum(
            a * s for a, s in zip(v_ki, dm_ik)
        )
        if Fraction(constant).denominator != 1:
            return AxiomResult(
                "transition-cocycle", False, f"{i}{j}{k}: constant {constant}"
            )
    return AxiomResult("transition-cocycle", True)


# --- twisted compatibility ----------------------------------------------------------


def _shift_form(form: Form, dl: Sequence[int], dm: Sequence[int]) -> Form:
    offsets = [Fraction(v) for v in dl] + [Fraction(v) for v in dm]
    if all(v == 0 for v in offsets):
        return form
    return Form(form.coords, {i: p.shift(offsets) for i, p in form.terms.items()})


def check_twisted_compatibility(
    obj: ComplexSideObject,
    gerbe: GerbeConnection,
    perturbations: Optional[Dict[CoverIndex, Form]] = None,
    samples: int = DEFAULT_AX_SAMPLES,
    seed: int = 0,
) -> AxiomResult:
    """Verify the gluing defect of the chartwise connection.

    Across every ordered chart pair, the difference of the two chart
    connection forms (expressed in the same coordinates) minus the
    logarithmic derivative of the transition function must equal minus i
    times the gerbe's overlap one-form.  ``perturbations`` adds chartwise
    one-forms, which lets tests break single charts deliberately.
    """
    if gerbe.side != COMPLEX_SIDE:
        raise SideMismatchError("twisted compatibility needs a complex-side gerbe")
    if gerbe.tau != obj.tau:
        raise ParameterMismatchError("gerbe and object carry different twists")
    perturbations = perturbations or {}
    n = obj.n
    base = connection_form(obj)
    transitions = build_transitions(obj)
    exhaustive = cover_size(n) <= EXHAUSTIVE_CHART_LIMIT or perturbations
    charts = list(cover_indices(n))
    if exhaustive:
        pair_iter = itertools.permutations(charts, 2)
    else:
        rng = random.Random(seed)
        pair_iter = (tuple(rng.sample(charts, 2)) for _ in range(samples))

    def chart_form(c: CoverIndex) -> Form:
        extra = perturbations.get(c)
        return base if extra is None else base + extra

    # Without perturbations the defect only depends on the wrap vector.
    clean = not perturbations and not gerbe.overrides
    seen: set = set()
    for i, j in pair_iter:
        dl, dm = wrap_vector(i, j)
        if clean:
            if (dl, dm) in seen:
                continue
            seen.add((dl, dm))
        omega_j = chart_form(j)
        omega_i = _shift_form(chart_form(i), dl, dm)
        exponent = transitions._vector(dl)
        dlog = constant_covector_row(
            complex_coords(n),
            [CScalar(0, 2) * CScalar(v) for v in exponent],
            cov_offset=n,
            pi_power=1,
        )
        defect = omega_j - omega_i - dlog
        expected = gerbe.zero_conn(i, j).scale(MINUS_I)
        if defect != expected:
            return AxiomResult(
                "twisted-compatibility",
                False,
                f"{i}{j}: defect {(defect - expected).render()}",
            )
    return AxiomResult("twisted-compatibility", True)
