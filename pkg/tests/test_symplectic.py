"""Mirror-side objects: Lagrangian graphs, local systems, duality matching."""

import random
from fractions import Fraction

import pytest

from gctorus.bundles import AffineSection, ComplexSideObject
from gctorus.errors import (
    NonIntegralTwistError,
    ParameterMismatchError,
)
from gctorus.forms import Form, Poly, mirror_coords
from gctorus.linalg import CMatrix, CScalar, validate_period
from gctorus.sampling import (
    random_alternating,
    random_integer_matrix,
    random_period_matrix,
    random_vector,
)
from gctorus.symplectic import (
    ORDINARY,
    TWISTED,
    MatchVerdict,
    build_local_system,
    curvature_matches_background,
    first_chern,
    is_fukaya_object,
    is_lagrangian,
    local_system_curvature,
    mirror_match,
    symplectic_object,
)

TAU2 = CMatrix.from_rows([[0, 1], [-1, 0]])
HALF_TAU = CMatrix.from_rows([[0, "1/2"], ["-1/2", 0]])


def _period(rows):
    return validate_period(CMatrix.from_rows(rows))


def _square_period(n=2):
    return _period([[{"im": 1} if i == j else 0 for j in range(n)] for i in range(n)])


def _sobj(a_rows, c=None, q=None, tau=None, period=None, mode=None, n=2):
    a = CMatrix.from_rows(a_rows)
    c = tuple(Fraction(v) for v in (c or [0] * n))
    q = tuple(Fraction(v) for v in (q or [0] * n))
    tau = tau if tau is not None else CMatrix.zeros(n, n)
    period = period or _square_period(n)
    return symplectic_object(AffineSection(n, a, c), q, tau, period, mode=mode)


def test_constant_section_is_lagrangian():
    assert is_lagrangian(_sobj([[0, 0], [0, 0]]))


def test_square_torus_lagrangian_iff_symmetric():
    # omega_mat = I for T = i I by scalar inversion, so the test is symmetry.
    obj = _sobj([[1, 2], [2, 5]])
    assert obj.data.omega_mat == CMatrix.identity(2)
    assert is_lagrangian(obj)
    assert not is_lagrangian(_sobj([[0, 1], [0, 0]]))


def test_background_condition_trivial_when_b_vanishes():
    obj = _sobj([[0, 1], [0, 0]])
    assert obj.data.b_mat.is_zero()
    assert curvature_matches_background(obj)


def test_background_condition_dimension_one():
    period = _period([[{"re": 1, "im": 1}]])
    obj = _sobj([[3]], period=period, n=1)
    assert obj.data.b_mat == CMatrix.from_rows([["-1/2"]])
    assert curvature_matches_background(obj)  # 1x1 products are symmetric


def test_background_condition_fails_for_asymmetric_product():
    # T = -(1 - i)/2 I gives -(T^{-1})^t = (1 + i) I, so b_mat = I.
    period = _period(
        [
            [{"re": "-1/2", "im": "1/2"}, 0],
            [0, {"re": "-1/2", "im": "1/2"}],
        ]
    )
    obj = _sobj([[0, 1], [0, 0]], period=period)
    assert obj.data.b_mat == CMatrix.identity(2)
    assert not curvature_matches_background(obj)


def test_fukaya_object_dimension_one_always():
    rng = random.Random(50)
    for _ in range(5):
        obj = symplectic_object(
            AffineSection(1, random_integer_matrix(rng, 1), random_vector(rng, 1)),
            random_vector(rng, 1),
            CMatrix.zeros(1, 1),
            random_period_matrix(rng, 1),
        )
        assert is_fukaya_object(obj)


def test_fukaya_object_square_torus():
    assert is_fukaya_object(_sobj([[1, 2], [2, 5]], tau=TAU2))
    assert not is_fukaya_object(_sobj([[0, 1], [0, 0]], tau=TAU2))


def test_two_conditions_equal_one_matrix_condition():
    """Lagrangian + curvature matching is the same as a T symmetric,
    computed through the matrix route on random instances."""
    rng = random.Random(51)
    for _ in range(30):
        n = rng.randint(1, 3)
        period = random_period_matrix(rng, n)
        a = random_integer_matrix(rng, n)
        obj = symplectic_object(
            AffineSection(n, a, random_vector(rng, n)),
            random_vector(rng, n),
            random_alternating(rng, n),
            period,
        )
        aT = a * period.matrix
        assert is_fukaya_object(obj) == (aT == aT.transpose())


# --- local systems -----------------------------------------------------------------


def test_local_system_connection_form():
    obj = _sobj([[1, 0], [0, 1]], q=["1/3", 0], tau=TAU2)
    data = build_local_system(obj)
    coords = mirror_coords(2)
    expected = Form(
        coords,
        {
            (0,): Poly(
                coords.nvars,
                {
                    (0, 0, 0, 0, 1): CScalar(0, Fraction(-2, 3)),
                    (0, 1, 0, 0, 1): CScalar(0, 1),
                },
            ),
            (1,): Poly(coords.nvars, {(1, 0, 0, 0, 1): CScalar(0, -1)}),
        },
    )
    assert data.connection_form == expected


def test_local_system_curvature_is_twist_two_form():
    rng = random.Random(52)
    for mode in (ORDINARY, TWISTED):
        obj = _sobj([[1, 0], [0, 1]], q=["1/5", "1/7"], tau=TAU2, mode=mode)
        curv = local_system_curvature(obj)
        coords = mirror_coords(2)
        expected = Form(
            coords, {(0, 1): Poly.const(coords.nvars, CScalar(0, -2), pi_power=1)}
        )
        assert curv == expected
    del rng


def test_ordinary_transitions_are_half_twist_rows():
    obj = _sobj([[1, 0], [0, 1]], tau=TAU2, mode=ORDINARY)
    data = build_local_system(obj)
    assert data.transitions == {
        0: (Fraction(0), Fraction(1, 2)),
        1: (Fraction(-1, 2), Fraction(0)),
    }


def test_twisted_transitions_are_trivial():
    obj = _sobj([[1, 0], [0, 1]], tau=HALF_TAU, mode=TWISTED)
    data = build_local_system(obj)
    assert data.transitions == {}
    # Chartwise curvature agrees with the ordinary-mode curvature form.
    assert local_system_curvature(obj) == build_local_system(obj).connection_form.d()


def test_ordinary_transitions_match_connection_quasiperiodicity():
    """Shifting a base coordinate by one changes the connection form by
    exactly the logarithmic derivative of the matching transition."""
    obj = _sobj([[1, 0], [0, 1]], q=["1/3", "1/5"], tau=TAU2, mode=ORDINARY)
    data = build_local_system(obj)
    coords = mirror_coords(2)
    n = 2
    for slot in range(n):
        offsets = [Fraction(1) if v == slot else Fraction(0) for v in range(2 * n)]
        shifted = Form(
            coords,
            {i: p.shift(offsets) for i, p in data.connection_form.terms.items()},
        )
        delta = shifted - data.connection_form
        row = data.transitions.get(slot, (Fraction(0),) * n)
        # d log(transition) = 2 pi i sum_t row_t dxv_t.
        expected = Form(
            coords,
            {
                (t,): Poly.const(coords.nvars, CScalar(0, 2) * CScalar(row[t]), pi_power=1)
                for t in range(n)
                if row[t] != 0
            },
        )
        assert delta == -expected


# --- first Chern character ------------------------------------------------------------


def test_first_chern_zero_twist():
    result = first_chern(_sobj([[1, 0], [0, 1]]))
    assert result.form.is_zero()
    assert result.integral


def test_first_chern_integer_twist():
    tau = CMatrix.from_rows([[0, 3], [-3, 0]])
    result = first_chern(_sobj([[1, 0], [0, 1]], tau=tau))
    coords = mirror_coords(2)
    assert result.form == Form(coords, {(0, 1): Poly.const(coords.nvars, CScalar(3))})
    assert result.integral


def test_first_chern_fractional_twist_gates_ordinary_mode():
    result = first_chern(_sobj([[1, 0], [0, 1]], tau=HALF_TAU, mode=TWISTED))
    assert not result.integral
    with pytest.raises(NonIntegralTwistError):
        _sobj([[1, 0], [0, 1]], tau=HALF_TAU, mode=ORDINARY)
    # Default mode selection obeys the gate.
    assert _sobj([[1, 0], [0, 1]], tau=HALF_TAU).mode == TWISTED
    assert _sobj([[1, 0], [0, 1]], tau=TAU2).mode == ORDINARY


# --- duality matching ------------------------------------------------------------------


def _pair(n, a_rows, c, q, tau, period):
    a = CMatrix.from_rows(a_rows)
    section = AffineSection(n, a, tuple(Fraction(v) for v in c))
    qv = tuple(Fraction(v) for v in q)
    e = ComplexSideObject(section, qv, tau, period)
    l = symplectic_object(section, qv, tau, period)
    return e, l


def test_match_dimension_one_always_dual():
    rng = random.Random(53)
    for _ in range(5):
        period = random_period_matrix(rng, 1)
        e, l = _pair(
            1,
            random_integer_matrix(rng, 1).to_lists(),
            random_vector(rng, 1),
            random_vector(rng, 1),
            CMatrix.zeros(1, 1),
            period,
        )
        assert mirror_match(e, l) is MatchVerdict.MIRROR_DUAL


def test_match_square_torus_symmetric_section():
    e, l = _pair(2, [[1, 2], [2, 5]], [0, "1/2"], ["1/3", 0], TAU2, _square_period())
    assert mirror_match(e, l) is MatchVerdict.MIRROR_DUAL


def test_match_obstructed_on_asymmetric_section():
    e, l = _pair(2, [[0, 1], [0, 0]], [0, 0], [0, 0], TAU2, _square_period())
    assert mirror_match(e, l) is MatchVerdict.BOTH_OBSTRUCTED


def test_match_requires_shared_parameters():
    period = _square_period()
    e, _ = _pair(2, [[1, 0], [0, 1]], [0, 0], [0, 0], TAU2, period)
    _, other = _pair(2, [[1, 0], [0, 1]], [0, "1/2"], [0, 0], TAU2, period)
    with pytest.raises(ParameterMismatchError):
        mirror_match(e, other)


def test_match_agreement_over_random_instances_both_modes():
    rng = random.Random(54)
    verdicts = set()
    for _ in range(40):
        n = rng.randint(1, 3)
        period = random_period_matrix(rng, n)
        tau = random_alternating(rng, n, integral=bool(rng.getrandbits(1)))
        e, l = _pair(
            n,
            random_integer_matrix(rng, n).to_lists(),
            random_vector(rng, n),
            random_vector(rng, n),
            tau,
            period,
        )
        verdicts.add(mirror_match(e, l))  # raises if the sides ever split
    assert verdicts == {MatchVerdict.MIRROR_DUAL, MatchVerdict.BOTH_OBSTRUCTED}
