"""Complex-side objects: connections, curvatures, transitions, integrability."""

import random
from fractions import Fraction

import pytest

from gctorus.bundles import (
    AffineSection,
    ComplexSideObject,
    build_transitions,
    check_integrability,
    check_twisted_compatibility,
    connection_form,
    gerbe_two_form,
    is_integrable,
    local_curvature,
    tensor_deform,
    transition_cocycle_report,
    true_curvature,
)
from gctorus.errors import ParameterMismatchError, SideMismatchError
from gctorus.forms import (
    Form,
    PQForm,
    Poly,
    complex_coords,
    pq_split,
)
from gctorus.gerbe import CoverIndex, build_gerbe, cover_indices
from gctorus.linalg import CMatrix, CScalar, validate_period
from gctorus.sampling import (
    random_alternating,
    random_integer_matrix,
    random_period_matrix,
    random_vector,
)

from oracles import brute_d, form_to_raw

TAU2 = CMatrix.from_rows([[0, 1], [-1, 0]])


def _period(rows):
    return validate_period(CMatrix.from_rows(rows))


def _object(n, a_rows, c=None, q=None, tau=None, period=None):
    a = CMatrix.from_rows(a_rows)
    c = tuple(Fraction(v) for v in (c or [0] * n))
    q = tuple(Fraction(v) for v in (q or [0] * n))
    tau = tau if tau is not None else CMatrix.zeros(n, n)
    period = period or _period([[{"im": 1} if i == j else 0 for j in range(n)] for i in range(n)])
    return ComplexSideObject(AffineSection(n, a, c), q, tau, period)


def test_section_requires_integer_linear_part():
    with pytest.raises(ValueError):
        AffineSection(1, CMatrix.from_rows([["1/2"]]), (Fraction(0),))


def test_connection_form_of_trivial_object_vanishes():
    obj = _object(2, [[0, 0], [0, 0]])
    assert connection_form(obj).is_zero()


def test_connection_form_dimension_one():
    """a = (1), c = q = 0, twistless, square torus: the connection is
    -2 pi i x dy, frozen from expanding the defining formula."""
    obj = _object(1, [[1]])
    coords = complex_coords(1)
    x_coeff = Poly(coords.nvars, {(1, 0, 1): CScalar(0, -2)})
    assert connection_form(obj) == Form(coords, {(1,): x_coeff})


def test_twist_adds_exactly_the_potential_term():
    obj0 = _object(2, [[1, 2], [2, 5]], c=["1/2", 0], q=["1/3", 0])
    obj1 = tensor_deform(obj0, TAU2)
    difference = connection_form(obj1) - connection_form(obj0)
    coords = complex_coords(2)
    expected = Form(
        coords,
        {
            (0,): Poly(coords.nvars, {(0, 1, 0, 0, 1): CScalar(0, 1)}),
            (1,): Poly(coords.nvars, {(1, 0, 0, 0, 1): CScalar(0, -1)}),
        },
    )
    assert difference == expected


def test_local_curvature_is_derivative_of_connection():
    rng = random.Random(40)
    for _ in range(10):
        n = rng.randint(1, 2)
        obj = ComplexSideObject(
            AffineSection(n, random_integer_matrix(rng, n), random_vector(rng, n)),
            random_vector(rng, n),
            random_alternating(rng, n),
            random_period_matrix(rng, n),
        )
        omega = connection_form(obj)
        got = local_curvature(obj)
        assert got == omega.d()
        assert form_to_raw(got) == brute_d(form_to_raw(omega), 2 * n)


def test_local_curvature_constant_section():
    # a = 0 with arbitrary shift vector: closed connection form.
    obj = _object(2, [[0, 0], [0, 0]], q=["1/3", "2/5"])
    assert local_curvature(obj).is_zero()


def test_local_curvature_twist_only():
    obj = _object(2, [[0, 0], [0, 0]], tau=TAU2)
    assert local_curvature(obj) == gerbe_two_form(obj)
    coords = complex_coords(2)
    expected = Form(coords, {(0, 1): Poly.const(coords.nvars, CScalar(0, -2), pi_power=1)})
    assert local_curvature(obj) == expected


def test_true_curvature_is_twist_independent():
    rng = random.Random(41)
    for _ in range(10):
        n = rng.randint(1, 3)
        period = random_period_matrix(rng, n)
        a = random_integer_matrix(rng, n)
        c = random_vector(rng, n)
        q = random_vector(rng, n)
        plain = ComplexSideObject(AffineSection(n, a, c), q, CMatrix.zeros(n, n), period)
        twisted = ComplexSideObject(
            AffineSection(n, a, c), q, random_alternating(rng, n), period
        )
        assert true_curvature(plain) == true_curvature(twisted)


def test_true_curvature_expansion():
    obj = _object(2, [[0, 1], [1, 0]])
    coords = complex_coords(2)
    minus_2pi_i = Poly.const(coords.nvars, CScalar(0, -2), pi_power=1)
    expected = Form(coords, {(0, 3): minus_2pi_i, (1, 2): minus_2pi_i})
    assert true_curvature(obj) == expected


def test_integrability_dimension_one_is_automatic():
    rng = random.Random(42)
    for _ in range(5):
        obj = ComplexSideObject(
            AffineSection(1, random_integer_matrix(rng, 1), random_vector(rng, 1)),
            random_vector(rng, 1),
            CMatrix.zeros(1, 1),
            random_period_matrix(rng, 1),
        )
        assert is_integrable(obj)


def test_integrability_asymmetric_section_fails():
    obj = _object(2, [[0, 1], [0, 0]])
    result = check_integrability(obj)
    assert not result.integrable
    assert not result.curvature_02.is_zero()


def test_integrable_twisted_object_has_expected_local_02_part():
    """Square torus, standard twist, symmetric section: the (0,2)-part of
    the local curvature is -(pi i / 2) dzb1 ^ dzb2."""
    obj = _object(2, [[1, 2], [2, 5]], tau=TAU2)
    result = check_integrability(obj)
    assert result.integrable
    local_02 = pq_split(local_curvature(obj), obj.period).component(0, 2)
    coords = complex_coords(2)
    expected = PQForm(
        coords,
        obj.period,
        {(2, 3): Poly.const(coords.nvars, CScalar(0, "-1/2"), pi_power=1)},
    )
    assert local_02 == expected


def test_integrability_equivalence_on_random_instances():
    """Matrix criterion vs curvature criterion, cross-checked inside
    check_integrability on random data (it raises if they split)."""
    rng = random.Random(43)
    seen = {True: 0, False: 0}
    for _ in range(30):
        n = rng.randint(1, 3)
        period = random_period_matrix(rng, n)
        a = random_integer_matrix(rng, n)
        obj = ComplexSideObject(
            AffineSection(n, a, random_vector(rng, n)),
            random_vector(rng, n),
            random_alternating(rng, n),
            period,
        )
        seen[check_integrability(obj).integrable] += 1
    assert seen[True] > 0 and seen[False] > 0  # both branches exercised


def test_offset_never_changes_verdicts():
    rng = random.Random(44)
    for _ in range(10):
        n = 2
        period = random_period_matrix(rng, n)
        a = random_integer_matrix(rng, n)
        q = random_vector(rng, n)
        tau = random_alternating(rng, n)
        base = ComplexSideObject(
            AffineSection(n, a, (Fraction(0), Fraction(0))), q, tau, period
        )
        shifted = ComplexSideObject(
            AffineSection(n, a, random_vector(rng, n)), q, tau, period
        )
        assert is_integrable(base) == is_integrable(shifted)
        assert true_curvature(base) == true_curvature(shifted)


def test_tensor_deform_requires_untwisted_input():
    obj = _object(2, [[1, 0], [0, 1]], tau=TAU2)
    with pytest.raises(ParameterMismatchError):
        tensor_deform(obj, TAU2)


def test_tensor_deform_zero_twist_is_identity():
    obj = _object(2, [[1, 0], [0, 1]])
    assert tensor_deform(obj, CMatrix.zeros(2, 2)) == obj


def test_tensor_deform_preserves_integrability():
    rng = random.Random(45)
    for _ in range(10):
        n = rng.randint(1, 3)
        obj = ComplexSideObject(
            AffineSection(n, random_integer_matrix(rng, n), random_vector(rng, n)),
            random_vector(rng, n),
            CMatrix.zeros(n, n),
            random_period_matrix(rng, n),
        )
        deformed = tensor_deform(obj, random_alternating(rng, n))
        assert is_integrable(obj) == is_integrable(deformed)


# --- transitions -----------------------------------------------------------------


def test_transitions_trivial_for_constant_section():
    obj = _object(2, [[0, 0], [0, 0]])
    data = build_transitions(obj)
    charts = list(cover_indices(2))
    assert all(data.is_trivial(charts[0], c) for c in charts[:10])


def test_transitions_dimension_one_unit_section():
    """a = (1): the exponent vector is y exactly on base-wrap overlaps."""
    obj = _object(1, [[1]])
    data = build_transitions(obj)
    wrap_i = CoverIndex((3,), (2,))
    wrap_j = CoverIndex((1,), (2,))
    assert data.exponent_vector(wrap_i, wrap_j) == (Fraction(1),)
    assert data.exponent_vector(wrap_j, wrap_i) == (Fraction(-1),)
    same = CoverIndex((2,), (1,))
    other = CoverIndex((2,), (3,))
    assert data.is_trivial(same, other)  # fiber wrap alone stays trivial


def test_transitions_ignore_twist():
    obj0 = _object(2, [[1, 2], [2, 5]])
    obj1 = tensor_deform(obj0, TAU2)
    assert build_transitions(obj0) == build_transitions(obj1)


def test_transition_cocycle_sums_are_integers_exhaustively():
    rng = random.Random(46)
    for _ in range(5):
        obj = _object(2, random_integer_matrix(rng, 2).to_lists())
        result = transition_cocycle_report(build_transitions(obj))
        assert result.passed, result.witness


def test_transition_cocycle_sampled_for_n3():
    rng = random.Random(47)
    obj = ComplexSideObject(
        AffineSection(3, random_integer_matrix(rng, 3), random_vector(rng, 3)),
        random_vector(rng, 3),
        CMatrix.zeros(3, 3),
        random_period_matrix(rng, 3),
    )
    result = transition_cocycle_report(build_transitions(obj), samples=300, seed=3)
    assert result.passed


# --- twisted compatibility ----------------------------------------------------------


def test_untwisted_compatibility_passes():
    obj = _object(2, [[1, 2], [2, 5]], c=["1/2", 0], q=["1/3", 0])
    gerbe = build_gerbe(2, CMatrix.zeros(2, 2))
    assert check_twisted_compatibility(obj, gerbe).passed


def test_twisted_compatibility_passes():
    rng = random.Random(48)
    for _ in range(5):
        n = 2
        tau = random_alternating(rng, n, nonzero=True)
        obj = ComplexSideObject(
            AffineSection(n, random_integer_matrix(rng, n), random_vector(rng, n)),
            random_vector(rng, n),
            tau,
            random_period_matrix(rng, n),
        )
        gerbe = build_gerbe(n, tau)
        assert check_twisted_compatibility(obj, gerbe).passed


def test_twisted_compatibility_sampled_for_n3():
    rng = random.Random(49)
    tau = random_alternating(rng, 3, nonzero=True)
    obj = ComplexSideObject(
        AffineSection(3, random_integer_matrix(rng, 3), random_vector(rng, 3)),
        random_vector(rng, 3),
        tau,
        random_period_matrix(rng, 3),
    )
    assert check_twisted_compatibility(obj, build_gerbe(3, tau), samples=200, seed=9).passed


def test_corrupted_chart_fails_with_witness_pair():
    obj = _object(2, [[1, 0], [0, 1]], q=["1/5", 0], tau=TAU2)
    gerbe = build_gerbe(2, TAU2)
    coords = complex_coords(2)
    chart = CoverIndex((2, 2), (2, 2))
    # Perturb the shift-vector term on one chart only.
    perturbation = Form(
        coords, {(2,): Poly.const(coords.nvars, CScalar(0, -2), pi_power=1)}
    )
    result = check_twisted_compatibility(obj, gerbe, perturbations={chart: perturbation})
    assert not result.passed
    assert "(22;22)" in result.witness


def test_compatibility_rejects_mirror_side_gerbe():
    obj = _object(2, [[1, 0], [0, 1]], tau=TAU2)
    gerbe = build_gerbe(2, TAU2, side="mirror")
    with pytest.raises(SideMismatchError):
        check_twisted_compatibility(obj, gerbe)


def test_compatibility_rejects_twist_mismatch():
    obj = _object(2, [[1, 0], [0, 1]], tau=TAU2)
    gerbe = build_gerbe(2, CMatrix.zeros(2, 2))
    with pytest.raises(ParameterMismatchError):
        check_twisted_compatibility(obj, gerbe)
