"""Exception hierarchy shared by all toolkit modules.

Every failure mode that callers are expected to handle gets its own class;
the CLI maps them onto exit codes (config/validation problems -> 2,
internal consistency violations -> 3).
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class NonSquareError(ToolkitError):
    """A square matrix was required."""


class SingularMatrixError(ToolkitError):
    """Matrix inversion or period validation hit a zero determinant."""


class NotPositiveDefiniteError(ToolkitError):
    """The imaginary part of a candidate period matrix is not symmetric
    positive definite (leading principal minor test over the rationals)."""


class NotAlternatingError(ToolkitError):
    """An alternating (skew-symmetric) real matrix was required."""


class CoordinateMismatchError(ToolkitError):
    """Two forms live over different coordinate systems."""


class DimensionMismatchError(ToolkitError):
    """Operands have incompatible dimensions."""


class SideMismatchError(ToolkitError):
    """Complex-side data was combined with mirror-side data."""


class ParameterMismatchError(ToolkitError):
    """Objects that must share parameters (section, shift vector, twist,
    period matrix) do not."""


class ChainMismatchError(ToolkitError):
    """Morphism composition attempted on a non-composable pair."""


class NonIntegrableObjectError(ToolkitError):
    """A dg-category verification was requested over an object whose
    connection is not integrable; the differential would not square to
    zero, so the request is refused rather than reported as a failure."""


class NonIntegralTwistError(ToolkitError):
    """An ordinary local system was requested for a non-integer twist;
    only the twisted variant exists in that case."""


class MirrorInconsistencyError(ToolkitError):
    """Internal assertion: the complex-side and symplectic-side verdicts
    disagreed, which the duality statements rule out."""


class ConfigError(ToolkitError):
    """Malformed or inconsistent run configuration."""
