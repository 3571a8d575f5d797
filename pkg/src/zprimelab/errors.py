"""Exception types raised by the evaluation and verification routines."""


class ZPrimeLabError(Exception):
    """Base class for all package errors."""


class DomainError(ZPrimeLabError):
    """Argument outside the validity domain of an evaluation formula."""


class WindowError(ZPrimeLabError):
    """Abscissa outside the window a fixed-anchor formula is valid on."""


class ConstraintError(ZPrimeLabError):
    """Structural parameter constraint violated (ranges, products, parity)."""


class AccuracyError(ZPrimeLabError):
    """Requested accuracy target cannot be met with the configured terms."""


class QuadratureError(ZPrimeLabError):
    """Step-halving disagreement beyond the configured tolerance."""


class SolverError(ZPrimeLabError):
    """Root/inverse solver failed to converge within its iteration budget."""


class CacheRangeError(ZPrimeLabError):
    """Query outside the cached integral range and extension is disabled."""


class RootNotFoundError(ZPrimeLabError):
    """No sign change of Z' found on the scan grid."""


class RangeError(ZPrimeLabError):
    """Computed abscissa beyond the numerically representable range."""
