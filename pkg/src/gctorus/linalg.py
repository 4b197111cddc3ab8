"""Exact Gaussian-rational linear algebra.

Scalars are complex numbers with rational real and imaginary parts
(:class:`CScalar`); matrices are dense row-major grids of them
(:class:`CMatrix`).  Everything is computed exactly: addition,
multiplication, inversion and determinants never round, so downstream
identity checks are genuine zero tests rather than tolerance comparisons.

A :class:`PeriodMatrix` is a validated square complex matrix whose
imaginary part is symmetric positive definite (leading principal minors
all positive, tested over the rationals) and whose determinant is
nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    NonSquareError,
    NotAlternatingError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)

RationalLike = Union[int, str, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse a rational from an int, Fraction, or a "p/q" / "p" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot parse rational from {value!r}")


class CScalar:
    """A complex number with exact rational components.

    Immutable by convention; all arithmetic returns new values.  Division
    is defined iff the divisor is nonzero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = parse_rational(re)
        self.im = parse_rational(im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return CScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return CScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return CScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero CScalar")
        return CScalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return CScalar(-self.re, -self.im)

    def conjugate(self) -> "CScalar":
        return CScalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"CScalar({self.re!r}, {self.im!r})"


def _coerce(value) -> "CScalar | None":
    if isinstance(value, CScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return CScalar(value)
    return None


ZERO = CScalar(0)
ONE = CScalar(1)
I = CScalar(0, 1)
MINUS_I = CScalar(0, -1)

ScalarLike = Union[CScalar, int, str, Fraction]


def parse_scalar(value) -> CScalar:
    """Parse a complex scalar from a string/int/Fraction or an {re, im} record."""
    if isinstance(value, CScalar):
        return value
    if isinstance(value, dict):
        extra = set(value) - {"re", "im"}
        if extra:
            raise TypeError(f"unexpected fields in complex record: {sorted(extra)}")
        return CScalar(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
    return CScalar(parse_rational(value))


class CMatrix:
    """Dense matrix of :class:`CScalar` entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[CScalar]):
        if len(entries) != rows * cols:
            raise DimensionMismatchError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    # --- constructors -----------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[ScalarLike]]) -> "CMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatchError("ragged rows")
            flat.extend(parse_scalar(v) for v in row)
        return CMatrix(nrows, ncols, flat)

    @staticmethod
    def zeros(rows: int, cols: int) -> "CMatrix":
        return CMatrix(rows, cols, [ZERO] * (rows * cols))

    @staticmethod
    def identity(n: int) -> "CMatrix":
        return CMatrix(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    # --- access -----------------------------------------------------------

    def __getitem__(self, key) -> CScalar:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_complex(self) -> list:
        """Binary64 snapshot of the matrix, for the CLI float mode only."""
        return [[complex(v) for v in self.row(i)] for i in range(self.rows)]

    # --- algebra ----------------------------------------------------------

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, CMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            out = []
            for i in range(self.rows):
                lrow = self.row(i)
                # Block matrices here are mostly zeros; skip them.
                support = [(k, v) for k, v in enumerate(lrow) if not v.is_zero()]
                for j in range(other.cols):
                    acc = ZERO
                    for k, v in support:
                        rhs = other.entries[k * other.cols + j]
                        if not rhs.is_zero():
                            acc = acc + v * rhs
                    out.append(acc)
            return CMatrix(self.rows, other.cols, out)
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return CMatrix(self.rows, self.cols, [scalar * a for a in self.entries])

    def __rmul__(self, other):
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return CMatrix(self.rows, self.cols, [scalar * a for a in self.entries])

    def transpose(self) -> "CMatrix":
        return CMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def conjugate(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [a.conjugate() for a in self.entries])

    def real(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [CScalar(a.re) for a in self.entries])

    def imag(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [CScalar(a.im) for a in self.entries])

    def map_entries(self, fn: Callable[[CScalar], CScalar]) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [fn(a) for a in self.entries])

    def det(self) -> CScalar:
        """Determinant via exact Gaussian elimination (zero-test pivoting)."""
        if self.rows != self.cols:
            raise NonSquareError("determinant of a non-square matrix")
        n = self.rows
        work = [list(self.row(i)) for i in range(n)]
        sign = 1
        det = ONE
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if not work[r][col].is_zero():
                    pivot_row = r
                    break
            if pivot_row is None:
                return ZERO
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                sign = -sign
            pivot = work[col][col]
            det = det * pivot
            for r in range(col + 1, n):
                factor = work[r][col] / pivot
                if factor.is_zero():
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return det if sign == 1 else -det

    def inverse(self) -> "CMatrix":
        """Exact inverse by Gauss-Jordan elimination.

        Raises :class:`SingularMatrixError` when no nonzero pivot exists.
        """
        if self.rows != self.cols:
            raise NonSquareError("inverse of a non-square matrix")
        n = self.rows
        work = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if not work[r][col].is_zero():
                    pivot_row = r
                    break
            if pivot_row is None:
                raise SingularMatrixError("matrix is singular")
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
            inv_pivot = ONE / work[col][col]
            work[col] = [inv_pivot * a for a in work[col]]
            for r in range(n):
                if r == col:
                    continue
                factor = work[r][col]
                if factor.is_zero():
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return CMatrix(n, n, [work[i][n + j] for i in range(n) for j in range(n)])

    # --- predicates ---------------------------------------------------------

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries)

    def is_real(self) -> bool:
        return all(a.is_real() for a in self.entries)

    def is_integer(self) -> bool:
        return all(a.is_integer() for a in self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(str(v) for v in self.row(i)) for i in range(self.rows)
        ) + "]"

    def __repr__(self) -> str:
        return f"CMatrix({self.rows}x{self.cols}: {self})"

    def _same_shape(self, other: "CMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


def block(grid: Sequence[Sequence[CMatrix]]) -> CMatrix:
    """Assemble a block matrix from a grid of conforming blocks."""
    row_heights = [row[0].rows for row in grid]
    col_widths = [blk.cols for blk in grid[0]]
    for row in grid:
        if len(row) != len(col_widths):
            raise DimensionMismatchError("ragged block grid")
        for blk, w in zip(row, col_widths):
            if blk.cols != w or blk.rows != row[0].rows:
                raise DimensionMismatchError("non-conforming blocks")
    out = []
    for bi, row in enumerate(grid):
        for r in range(row_heights[bi]):
            for blk in row:
                out.extend(blk.row(r))
    return CMatrix(sum(row_heights), sum(col_widths), out)


def parse_matrix(grid: Sequence[Sequence]) -> CMatrix:
    return CMatrix.from_rows(grid)


def parse_vector(values: Iterable[RationalLike]) -> tuple:
    """Parse a real rational vector as a tuple of Fractions."""
    return tuple(parse_rational(v) for v in values)


def alt_check(matrix: CMatrix) -> bool:
    """True iff the matrix is alternating: M^t = -M.

    Requires a square matrix with real entries; complex or non-square
    input is a caller error.
    """
    if not matrix.is_square():
        raise NonSquareError("alternating test needs a square matrix")
    if not matrix.is_real():
        raise NotAlternatingError("alternating test needs real entries")
    return matrix.transpose() == -matrix


@dataclass(frozen=True)
class PeriodMatrix:
    """A validated period matrix for an n-dimensional complex torus.

    ``imag`` is symmetric positive definite and ``matrix`` is nonsingular;
    both facts are established exactly by :func:`validate_period`.
    """

    n: int
    matrix: CMatrix

    @property
    def re(self) -> CMatrix:
        return self.matrix.real()

    @property
    def im(self) -> CMatrix:
        return self.matrix.imag()

    def conjugate(self) -> CMatrix:
        return self.matrix.conjugate()


def validate_period(T: CMatrix) -> PeriodMatrix:
    """Validate a candidate period matrix.

    The imaginary part must be symmetric with all leading principal
    minors positive (Sylvester's criterion, decided exactly over the
    rationals), and the matrix itself must be nonsingular.
    """
    if not T.is_square():
        raise NonSquareError(f"period matrix must be square, got {T.rows}x{T.cols}")
    n = T.rows
    Y = T.imag()
    # Sylvester's criterion presumes symmetry; an asymmetric imaginary
    # part can never be symmetric positive definite.
    if not Y.is_symmetric():
        raise NotPositiveDefiniteError("imaginary part is not symmetric")
    for k in range(1, n + 1):
        minor = CMatrix(k, k, [Y[(i, j)] for i in range(k) for j in range(k)]).det()
        if not (minor.is_real() and minor.re > 0):
            raise NotPositiveDefiniteError(
                f"leading principal minor {k} of the imaginary part is {minor}"
            )
    if T.det().is_zero():
        raise SingularMatrixError("period matrix has zero determinant")
    return PeriodMatrix(n, T)
