"""Exact scalar and matrix arithmetic, period validation."""

import random
from fractions import Fraction

import pytest

from gctorus.errors import (
    NonSquareError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)
from gctorus.linalg import (
    CMatrix,
    CScalar,
    alt_check,
    block,
    parse_rational,
    parse_scalar,
    validate_period,
)
from gctorus.sampling import random_period_matrix, random_real_matrix, random_scalar

from oracles import cc_div, laplace_det, list_matmul, list_transpose, mat_to_pairs


def test_scalar_field_axioms():
    rng = random.Random(0)
    for _ in range(50):
        a, b = random_scalar(rng), random_scalar(rng)
        assert a + b == b + a
        assert (a + b) - b == a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a


def test_scalar_division_against_oracle():
    rng = random.Random(1)
    for _ in range(30):
        a, b = random_scalar(rng), random_scalar(rng)
        if b.is_zero():
            continue
        got = a / b
        want = cc_div((a.re, a.im), (b.re, b.im))
        assert (got.re, got.im) == want


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CScalar(1) / CScalar(0)


def test_parse_rational_strings():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_scalar({"re": "1/2", "im": "-1/3"}) == CScalar("1/2", "-1/3")
    assert parse_scalar("5") == CScalar(5)


def test_product_transpose_and_inverse_identities():
    """(A B)^t = B^t A^t and A^{-1} A = I, exactly, on random matrices."""
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randint(1, 4)
        A = CMatrix.from_rows(
            [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        )
        B = CMatrix.from_rows(
            [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        )
        assert (A * B).transpose() == B.transpose() * A.transpose()
        if not A.det().is_zero():
            assert A.inverse() * A == CMatrix.identity(n)
            assert A * A.inverse() == CMatrix.identity(n)


def test_matmul_and_det_against_oracles():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 3)
        A = CMatrix.from_rows(
            [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        )
        B = CMatrix.from_rows(
            [[random_scalar(rng) for _ in range(n)] for _ in range(n)]
        )
        assert mat_to_pairs(A * B) == list_matmul(mat_to_pairs(A), mat_to_pairs(B))
        assert mat_to_pairs(A.transpose()) == list_transpose(mat_to_pairs(A))
        det = A.det()
        assert (det.re, det.im) == laplace_det(mat_to_pairs(A))


def test_block_assembly():
    eye = CMatrix.identity(2)
    zero = CMatrix.zeros(2, 2)
    big = block([[eye, zero], [zero, eye]])
    assert big == CMatrix.identity(4)


def test_alt_check_examples():
    assert alt_check(CMatrix.from_rows([[0, 1], [-1, 0]]))
    assert alt_check(CMatrix.zeros(3, 3))
    assert not alt_check(CMatrix.from_rows([[0, 1], [1, 0]]))


def test_validate_period_accepts_diagonal_imaginary():
    T = CMatrix.from_rows([[{"im": 1}, 0], [0, {"im": 1}]])
    period = validate_period(T)
    assert period.n == 2
    assert period.im == CMatrix.identity(2)


def test_validate_period_one_by_one():
    period = validate_period(CMatrix.from_rows([[{"re": 1, "im": 1}]]))
    assert period.re == CMatrix.from_rows([[1]])
    assert period.im == CMatrix.from_rows([[1]])


def test_validate_period_rejects_indefinite_imaginary():
    # Second leading minor of [[1,2],[2,1]] is 1*1 - 2*2 = -3 < 0 by the
    # expansion oracle.
    Y = [[(Fraction(1), Fraction(0)), (Fraction(2), Fraction(0))],
         [(Fraction(2), Fraction(0)), (Fraction(1), Fraction(0))]]
    assert laplace_det(Y) == (Fraction(-3), Fraction(0))
    T = CMatrix.from_rows(
        [[{"im": 1}, {"im": 2}], [{"im": 2}, {"im": 1}]]
    )
    with pytest.raises(NotPositiveDefiniteError):
        validate_period(T)


def test_validate_period_rejects_asymmetric_imaginary():
    T = CMatrix.from_rows([[{"im": 1}, {"im": 1}], [{"im": 0}, {"im": 1}]])
    with pytest.raises(NotPositiveDefiniteError):
        validate_period(T)


def test_validate_period_rejects_non_square():
    with pytest.raises(NonSquareError):
        validate_period(CMatrix.from_rows([[{"im": 1}, {"im": 0}]]))


def test_validate_period_rejects_singular():
    # X = [[0,1],[-1,0]], Y = I gives det T = 0.
    T = CMatrix.from_rows(
        [[{"im": 1}, {"re": 1}], [{"re": -1}, {"im": 1}]]
    )
    with pytest.raises(SingularMatrixError):
        validate_period(T)


def test_period_core_matrix_nonsingular():
    """det(Y + X Y^{-1} X) is nonzero for every accepted period matrix."""
    rng = random.Random(4)
    for _ in range(20):
        period = random_period_matrix(rng, rng.randint(1, 3))
        X, Y = period.re, period.im
        core = Y + X * Y.inverse() * X
        assert not core.det().is_zero()


def test_inverse_transpose_closed_forms():
    """Re and Im of -(T^{-1})^t match their closed forms through
    (Y + X Y^{-1} X)^{-1}, exactly."""
    rng = random.Random(5)
    for _ in range(20):
        period = random_period_matrix(rng, rng.randint(1, 3))
        X, Y = period.re, period.im
        K = -(period.matrix.inverse().transpose())
        core_inv_t = (Y + X * Y.inverse() * X).inverse().transpose()
        assert K.imag() == core_inv_t
        assert K.real() == -core_inv_t * X.transpose() * Y.inverse().transpose()


def test_real_matrix_entries_are_real():
    rng = random.Random(6)
    M = random_real_matrix(rng, 3)
    assert M.is_real()
    assert not (M + CMatrix.from_rows([[{"im": 1}] + [0] * 2, [0] * 3, [0] * 3])).is_real()
