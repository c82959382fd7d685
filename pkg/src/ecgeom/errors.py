"""Exception hierarchy shared by all ecgeom modules."""


class ECGeomError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPivot(ECGeomError):
    """Unpivoted LU hit a pivot below the relative threshold."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"zero pivot at index {index}")


class Singular(ECGeomError):
    """Pivoted elimination found no usable pivot."""


class ZeroDiagonal(ECGeomError):
    """Triangular matrix has a (near-)zero diagonal entry."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"zero diagonal entry at index {index}")


class RankDeficient(ECGeomError):
    """Smallest singular value is numerically zero."""


class MissingZeroRoot(ECGeomError):
    """Characteristic polynomial lacks the root z=0, so the space has no constants."""


class InvalidInterval(ECGeomError):
    """Interval endpoints are degenerate or reversed."""


class IllConditioned(ECGeomError):
    """A construction-stage matrix is too ill-conditioned for the expected accuracy."""

    def __init__(self, stage, report):
        self.stage = stage
        self.report = report
        super().__init__(
            f"stage '{stage}' is ill-conditioned: condition number "
            f"{report.condition_number:.6g}, estimated correct digits "
            f"{report.estimated_correct_digits}"
        )


class OutOfDomain(ECGeomError):
    """Parameter value lies outside the definition domain."""


class ZeroDenominator(ECGeomError):
    """An endpoint derivative used as a divisor underflowed."""


class SearchFailed(ECGeomError):
    """Critical-length scan became unstable before bracketing any zero."""


class NotASubspace(ECGeomError):
    """Order elevation target does not contain the source space."""


class IntervalMismatch(ECGeomError):
    """Spaces are defined over different intervals."""


class DimensionMismatch(ECGeomError):
    """Coefficient or control-point shapes do not match the space dimensions."""


class SingularCollocation(ECGeomError):
    """Interpolation collocation system could not be solved."""


class DegeneratePoint(ECGeomError):
    """Surface is not regular at the given parameter pair."""

    def __init__(self, u0, u1, message=None):
        self.u0 = u0
        self.u1 = u1
        super().__init__(message or f"degenerate surface point at ({u0}, {u1})")


class ConfigError(ECGeomError):
    """Run configuration file is missing fields or malformed."""


class IoFailure(ECGeomError):
    """Output file could not be written."""


class TooFewSamples(ECGeomError):
    """Confidence interval needs at least two samples."""
