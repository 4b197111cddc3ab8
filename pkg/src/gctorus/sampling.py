"""Seeded random generators for rationals, matrices and polynomials.

Everything here takes an explicit ``random.Random`` instance so that
property checks and report generation stay reproducible; nothing in the
package ever touches the global random state.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .errors import SingularMatrixError
from .linalg import CMatrix, CScalar, PeriodMatrix, validate_period

# Sample counts used by the axiom checkers once a cover is too large to
# enumerate exhaustively.
DEFAULT_AX_SAMPLES = 1000


def random_rational(
    rng: random.Random,
    num_bound: int = 3,
    dens: Sequence[int] = (1, 2, 3),
    nonzero: bool = False,
) -> Fraction:
    while True:
        value = Fraction(rng.randint(-num_bound, num_bound), rng.choice(list(dens)))
        if value != 0 or not nonzero:
            return value


def random_scalar(rng: random.Random, num_bound: int = 3) -> CScalar:
    return CScalar(random_rational(rng, num_bound), random_rational(rng, num_bound))


def random_vector(rng: random.Random, n: int, num_bound: int = 3) -> tuple:
    return tuple(random_rational(rng, num_bound) for _ in range(n))


def random_real_matrix(
    rng: random.Random, n: int, num_bound: int = 2, symmetric: bool = False
) -> CMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if symmetric and j < i:
                rows[i][j] = rows[j][i]
            else:
                rows[i][j] = random_rational(rng, num_bound)
    return CMatrix.from_rows(rows)


def random_integer_matrix(rng: random.Random, n: int, bound: int = 2) -> CMatrix:
    return CMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    )


def random_alternating(
    rng: random.Random,
    n: int,
    integral: Optional[bool] = None,
    num_bound: int = 2,
    nonzero: bool = False,
) -> CMatrix:
    """Random alternating real matrix; ``integral`` forces (non-)integer
    entries, None mixes freely.  ``nonzero`` retries until some entry is
    nonzero (impossible for n = 1, where the zero matrix is returned)."""
    while True:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if integral is True:
                    value = Fraction(rng.randint(-num_bound, num_bound))
                elif integral is False:
                    value = Fraction(rng.randint(-num_bound, num_bound) * 2 + 1, 2)
                else:
                    value = random_rational(rng, num_bound)
                rows[i][j] = value
                rows[j][i] = -value
        matrix = CMatrix.from_rows(rows)
        if n == 1 or not nonzero or not matrix.is_zero():
            return matrix


def random_period_matrix(
    rng: random.Random, n: int, symmetric_x: bool = False
) -> PeriodMatrix:
    """Random valid period matrix: the imaginary part is (A^t A + I)
    optionally halved (exactly symmetric positive definite), the real
    part arbitrary with small denominators.  Retries the rare draws with
    zero determinant.  Entry sizes are kept small so that downstream
    exact arithmetic stays fast."""
    while True:
        A = random_integer_matrix(rng, n, bound=1)
        Y = A.transpose() * A + CMatrix.identity(n)
        if rng.random() < 0.5:
            Y = Y * CScalar(Fraction(1, 2))
        X = CMatrix.from_rows(
            [
                [random_rational(rng, num_bound=2, dens=(1, 2)) for _ in range(n)]
                for _ in range(n)
            ]
        )
        if symmetric_x:
            X = X + X.transpose()
        T = X + CScalar(0, 1) * Y
        try:
            return validate_period(T)
        except SingularMatrixError:
            continue


def random_exponent(rng: random.Random, nvars: int, degree: int) -> tuple:
    expo = [0] * (nvars + 1)
    for _ in range(rng.randint(0, degree)):
        expo[rng.randrange(nvars)] += 1
    return tuple(expo)
