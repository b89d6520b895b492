"""Error types raised by the library.

Every error derives from :class:`SpectralError` so callers (and the CLI exit
code mapping) can separate numerical failures from programming errors.
"""


class SpectralError(Exception):
    """Base class for numerical failures."""


class SeriesError(SpectralError):
    """A power series did not meet its truncation rule within ``max_terms``."""

    def __init__(self, message: str, last_term: float):
        super().__init__(f"{message} (last term magnitude {last_term:.3e})")
        self.last_term = last_term


class DomainError(SpectralError, ValueError):
    """Argument outside the domain of the function (pole, zero, bad order)."""


class BranchCutError(DomainError):
    """Argument lies on a branch cut, where the requested branch is undefined."""


class PoleError(DomainError):
    """Evaluation too close to a pole of a meromorphic function."""


class BoundaryError(DomainError):
    """Extension angle on the boundary of the atom-bearing interval."""


class ConvergenceError(SpectralError):
    """A limit procedure (extrapolation, refinement) failed to settle."""


class AccuracyError(SpectralError):
    """Quadrature exhausted its panel budget before reaching the tolerance."""

    def __init__(self, message: str, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class InconclusiveTruncation(SpectralError):
    """A truncated spectral integral has a tail estimate above tolerance.

    This is not a failure of the identity being checked; the caller should
    retry with a larger energy cutoff.
    """

    def __init__(self, message: str, defect: float, tail: float):
        super().__init__(message)
        self.defect = defect
        self.tail = tail
