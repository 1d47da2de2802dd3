"""Exceptions raised by the package."""


class LatticeError(Exception):
    """Base class of all package errors."""


class DimensionError(LatticeError, ValueError):
    """Operand shapes do not agree."""


class RankDeficiencyError(LatticeError):
    """A constructed matrix is not full rank after the retry budget."""

    def __init__(self, message: str, rank: int = -1, attempts: int = 0):
        super().__init__(message)
        self.rank = rank
        self.attempts = attempts


class InfeasibleMappingError(LatticeError):
    """No parent row covers a diagonal position of the triangular split."""


class InconsistentLevelsError(LatticeError):
    """Prior levels do not satisfy their congruences, the syndrome is undefined."""


class SingularMatrixError(LatticeError):
    """A GF(2) matrix that must be inverted is singular."""


class CodebookTooLargeError(LatticeError):
    """Brute-force enumeration exceeds the size guard."""


class ConfigError(LatticeError):
    """Missing or malformed configuration."""


class FormatError(LatticeError):
    """Malformed input file."""


class DesignInfeasibleError(LatticeError):
    """The rate design has no feasible point."""
