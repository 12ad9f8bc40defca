"""
Error hierarchy for the RD_alpha spectra toolkit.

Every library failure derives from SpectraError so the CLI can map it to an
exit code in one place (see exit_code_for).
"""

from typing import Optional, Tuple

# Exit codes are part of the CLI contract
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class SpectraError(Exception):
    """Base class for all toolkit errors."""


# =============================================================================
# Graph and matrix preconditions
# =============================================================================


class DisconnectedGraph(SpectraError):
    def __init__(self, pair: Optional[Tuple[int, int]] = None):
        self.pair = pair
        where = f" (vertices {pair[0]} and {pair[1]} are unreachable)" if pair else ""
        super().__init__(f"graph is not connected{where}")


class AlphaOutOfRange(SpectraError):
    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(f"alpha must lie in [0, 1], got {alpha}")


class AsymmetricMatrix(SpectraError):
    pass


class InvalidPartition(SpectraError):
    pass


class NotRegular(SpectraError):
    def __init__(self, index: int, degrees):
        self.index = index
        self.degrees = sorted(set(degrees))
        super().__init__(
            f"component {index} is not regular (degrees {self.degrees})"
        )


# =============================================================================
# Numerical failures
# =============================================================================


class NoConvergence(SpectraError):
    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"Jacobi did not converge after {sweeps} sweeps "
            f"(max off-diagonal {off_norm:.3e})"
        )


class ComplexSpectrum(SpectraError):
    def __init__(self, imag: float):
        self.imag = imag
        super().__init__(
            f"equitable quotient produced an eigenvalue with imaginary part {imag:.3e}"
        )


# =============================================================================
# Group specifications and decompositions
# =============================================================================


class InvalidSpec(SpectraError):
    pass


class InvalidParameter(SpectraError):
    pass


class DegenerateDecomposition(SpectraError):
    pass


# =============================================================================
# Input handling
# =============================================================================


class ParseError(SpectraError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class UsageError(SpectraError):
    pass


def exit_code_for(exc: BaseException) -> int:
    """Map an exception raised by a command to the CLI exit code."""
    if isinstance(exc, (ParseError, UsageError, InvalidSpec, InvalidParameter, AlphaOutOfRange)):
        return EXIT_USAGE
    if isinstance(exc, (DisconnectedGraph, NotRegular, DegenerateDecomposition)):
        return EXIT_PRECONDITION
    return EXIT_MISMATCH
