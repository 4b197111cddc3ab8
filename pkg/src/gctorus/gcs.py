"""Generalized complex structures on real 2n-tori as constant matrices.

A structure is a 4n x 4n matrix acting on the frame
(d/dx, d/dy, dx, dy) by right multiplication of the frame row vector.
Both defining axioms are enforced exactly at construction: the matrix
squares to minus the identity and it preserves the natural pairing
between tangent and cotangent directions.

The three constructors are the structure induced by a period matrix, the
shear by a closed two-form datum (B-field transform) and the involution
exchanging the fiber-tangent and fiber-cotangent frame blocks (mirror
transform).  The mirror of the period-induced structure is of symplectic
type; its matrix data (symplectic pairing, background two-form, twist)
is exposed as :class:`MirrorSymplecticData`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    MirrorInconsistencyError,
    NotAlternatingError,
)
from .linalg import I, CMatrix, PeriodMatrix, alt_check, block


@dataclass(frozen=True)
class GCStructure:
    """Validated generalized complex structure.

    ``matrix`` is 4n x 4n over the frame blocks
    (base tangent, fiber tangent, base cotangent, fiber cotangent).
    """

    n: int
    matrix: CMatrix

    def __post_init__(self):
        if self.matrix.rows != 4 * self.n or self.matrix.cols != 4 * self.n:
            raise DimensionMismatchError(
                f"structure matrix must be {4 * self.n}x{4 * self.n}"
            )
        size = 4 * self.n
        if self.matrix * self.matrix != -CMatrix.identity(size):
            raise ValueError("structure matrix does not square to minus the identity")
        # J^t P J = P with P the half-size block swap, so P J is J with its
        # row halves exchanged.
        swapped = _swap_row_halves(self.matrix)
        if self.matrix.transpose() * swapped != natural_pairing(self.n):
            raise ValueError("structure matrix does not preserve the natural pairing")


def natural_pairing(n: int) -> CMatrix:
    """The tangent/cotangent pairing [[0, I],[I, 0]] in 2n-blocks."""
    zero = CMatrix.zeros(2 * n, 2 * n)
    eye = CMatrix.identity(2 * n)
    return block([[zero, eye], [eye, zero]])


def _swap_row_halves(matrix: CMatrix) -> CMatrix:
    half = matrix.rows // 2
    rows = [matrix.row(i) for i in range(matrix.rows)]
    flat = []
    for row in rows[half:] + rows[:half]:
        flat.extend(row)
    return CMatrix(matrix.rows, matrix.cols, flat)


@dataclass(frozen=True)
class BField:
    """Closed two-form datum entering the shear transform.

    Assembled matrix [[B1, B2], [-B2^t, B3]] with B1, B3 alternating real
    and B2 real; the assembled matrix is itself alternating.
    """

    n: int
    b1: CMatrix
    b2: CMatrix
    b3: CMatrix

    def __post_init__(self):
        for name, mat in (("B1", self.b1), ("B2", self.b2), ("B3", self.b3)):
            if mat.rows != self.n or mat.cols != self.n:
                raise DimensionMismatchError(f"{name} must be {self.n}x{self.n}")
            if not mat.is_real():
                raise NotAlternatingError(f"{name} must be real")
        for name, mat in (("B1", self.b1), ("B3", self.b3)):
            if not alt_check(mat):
                raise NotAlternatingError(f"{name} must be alternating")

    @property
    def matrix(self) -> CMatrix:
        return block([[self.b1, self.b2], [-self.b2.transpose(), self.b3]])

    @staticmethod
    def base_twist(tau: CMatrix) -> "BField":
        """B-field supported on the base block only (B1 = tau, B2 = B3 = 0)."""
        n = tau.rows
        zero = CMatrix.zeros(n, n)
        return BField(n, tau, zero, zero)


def tangent_block(period: PeriodMatrix) -> CMatrix:
    """The 2n x 2n complex-structure block determined by a period matrix."""
    X = period.re
    Y = period.im
    y_inv = Y.inverse()
    xy = X * y_inv
    return block([[-xy, -Y - xy * X], [y_inv, y_inv * X]])


def complex_structure(period: PeriodMatrix) -> GCStructure:
    """Generalized complex structure induced by the complex structure of the
    torus with the given period matrix: block diagonal with tangent block A
    and cotangent block -A^t."""
    A = tangent_block(period)
    zero = CMatrix.zeros(2 * period.n, 2 * period.n)
    return GCStructure(period.n, block([[A, zero], [zero, -A.transpose()]]))


def _shear(n: int, b_matrix: CMatrix) -> CMatrix:
    zero = CMatrix.zeros(2 * n, 2 * n)
    eye = CMatrix.identity(2 * n)
    return block([[eye, zero], [b_matrix, eye]])


def b_transform(structure: GCStructure, field: BField) -> GCStructure:
    """Conjugate the structure by the shear of the given B-field."""
    if field.n != structure.n:
        raise DimensionMismatchError("B-field dimension does not match the structure")
    B = field.matrix
    left = _shear(structure.n, -B)
    right = _shear(structure.n, B)
    return GCStructure(structure.n, left * structure.matrix * right)


def mirror_involution(n: int) -> CMatrix:
    """Frame swap exchanging the fiber tangent and fiber cotangent blocks."""
    eye = CMatrix.identity(n)
    zero = CMatrix.zeros(n, n)
    return block(
        [
            [eye, zero, zero, zero],
            [zero, zero, zero, eye],
            [zero, zero, eye, zero],
            [zero, eye, zero, zero],
        ]
    )


def mirror(structure: GCStructure) -> GCStructure:
    """Mirror transform: conjugation by the fiber frame swap (an involution).

    The swap is a permutation matrix, so the conjugation is applied as a
    simultaneous row and column permutation exchanging the fiber-tangent
    and fiber-cotangent blocks.
    """
    n = structure.n
    perm = list(range(0, n)) + list(range(3 * n, 4 * n)) + list(range(2 * n, 3 * n)) + list(range(n, 2 * n))
    src = structure.matrix
    size = 4 * n
    flat = [src[(perm[i], perm[j])] for i in range(size) for j in range(size)]
    return GCStructure(n, CMatrix(size, size, flat))


def mirror_matrix_direct(period: PeriodMatrix) -> CMatrix:
    """The mirror structure of :func:`complex_structure`, assembled directly
    from its closed-form blocks rather than by conjugation."""
    n = period.n
    X = period.re
    Y = period.im
    y_inv_t = Y.inverse().transpose()
    xt = X.transpose()
    zero = CMatrix.zeros(n, n)
    return block(
        [
            [-X * Y.inverse(), zero, zero, -Y - X * Y.inverse() * X],
            [zero, -xt * y_inv_t, Y.transpose() + xt * y_inv_t * xt, zero],
            [zero, -y_inv_t, y_inv_t * xt, zero],
            [Y.inverse(), zero, zero, Y.inverse() * X],
        ]
    )


@dataclass(frozen=True)
class MirrorSymplecticData:
    """Matrix data of the mirror complexified symplectic structure.

    ``omega_mat`` is the symplectic pairing Im(-(T^{-1})^t), ``b_mat`` the
    background two-form Re(-(T^{-1})^t), and ``tau`` the base twist (zero
    when undeformed).  ``omega_mat`` is always invertible.
    """

    omega_mat: CMatrix
    b_mat: CMatrix
    tau: CMatrix

    def __post_init__(self):
        if self.omega_mat.det().is_zero():
            raise MirrorInconsistencyError("mirror symplectic pairing is singular")

    @property
    def n(self) -> int:
        return self.omega_mat.rows

    def negative_inverse_transpose(self) -> CMatrix:
        """Reassemble the complex matrix b_mat + i * omega_mat, which equals
        minus the inverse transpose of the period matrix."""
        return self.b_mat + I * self.omega_mat

    def period_matrix(self) -> CMatrix:
        """Recover the period matrix: T = -((b_mat + i omega_mat)^t)^{-1}."""
        return -(self.negative_inverse_transpose().transpose().inverse())


def mirror_symplectic_data(period: PeriodMatrix, tau: CMatrix) -> MirrorSymplecticData:
    """Extract the mirror symplectic matrix data for a period matrix and twist.

    Also re-derives the mirror structure matrix in two independent ways
    (closed-form blocks, and the shear * antidiagonal * shear
    factorization through omega_mat and b_mat) and insists they agree
    with the conjugation route; a mismatch would be an internal error.
    """
    if tau.rows != period.n or tau.cols != period.n:
        raise DimensionMismatchError("twist dimension does not match the period matrix")
    if not alt_check(tau):
        raise NotAlternatingError("twist must be an alternating real matrix")
    n = period.n
    K = -(period.matrix.inverse().transpose())
    omega_mat = K.imag()
    b_mat = K.real()

    mirrored = mirror(complex_structure(period)).matrix
    if mirrored != mirror_matrix_direct(period):
        raise MirrorInconsistencyError("mirror matrix disagrees with its closed form")

    eye = CMatrix.identity(n)
    zero = CMatrix.zeros(n, n)
    omega_inv = omega_mat.inverse()
    shear_out = block(
        [
            [eye, zero, zero, zero],
            [zero, eye, zero, zero],
            [zero, -b_mat, eye, zero],
            [b_mat.transpose(), zero, zero, eye],
        ]
    )
    core = block(
        [
            [zero, zero, zero, -omega_inv.transpose()],
            [zero, zero, omega_inv, zero],
            [zero, -omega_mat, zero, zero],
            [omega_mat.transpose(), zero, zero, zero],
        ]
    )
    shear_in = block(
        [
            [eye, zero, zero, zero],
            [zero, eye, zero, zero],
            [zero, b_mat, eye, zero],
            [-b_mat.transpose(), zero, zero, eye],
        ]
    )
    if shear_out * core * shear_in != mirrored:
        raise MirrorInconsistencyError(
            "mirror matrix does not factor through its symplectic data"
        )
    return MirrorSymplecticData(omega_mat, b_mat, tau)
