# msldpc_core/errors.py
"""
Exception hierarchy for msldpc.
Every failure a library call can raise derives from MsldpcError, so callers
(the CLI in particular) can normalize them in one place.
"""

from typing import Any, List, Optional


class MsldpcError(Exception):
    """Base class for all msldpc errors."""
    pass


# ---------- field / length preconditions ----------
class EvenLength(MsldpcError):
    """Code length n must be odd."""
    pass


class LengthTooSmall(MsldpcError):
    pass


class FieldTooLarge(MsldpcError):
    """Extension degree m exceeds the configured table cap."""
    pass


class DivisionByZero(MsldpcError):
    pass


class LengthMismatch(MsldpcError):
    """Operand does not live in the expected length (exponent >= n, vector size != n)."""
    pass


# ---------- polynomial arithmetic ----------
class BothZero(MsldpcError):
    pass


class NonzeroRemainder(MsldpcError):
    pass


class ZeroPolynomial(MsldpcError):
    pass


class PolynomialParseError(MsldpcError):
    pass


# ---------- factorization / spectral domain ----------
class NonBinaryCoefficient(MsldpcError):
    """A minimal polynomial came out with coefficients outside GF(2): broken field context."""
    pass


class FactorizationError(MsldpcError):
    pass


class NotAFactor(MsldpcError):
    pass


class NotIdempotent(MsldpcError):
    pass


class EmptySubset(MsldpcError):
    pass


class SpectralLawViolation(MsldpcError):
    """Internal consistency failure between the z-domain laws and a direct measurement."""
    pass


# ---------- search / analysis ----------
class BudgetExceeded(MsldpcError):
    """
    Raised when an enumeration hits its budget.
    `partial` carries whatever was produced before truncation (records for a
    search, the running minimum weight for a distance enumeration).
    """

    def __init__(self, message: str, partial: Optional[List[Any]] = None, nodes: int = 0,
                 running_min: Optional[int] = None):
        super().__init__(message)
        self.partial = partial or []
        self.nodes = nodes
        self.running_min = running_min


class ZeroDimension(MsldpcError):
    pass


class InconsistentParityCheck(MsldpcError):
    pass


# ---------- configuration / files ----------
class ConfigError(MsldpcError):
    pass


class AlistFormatError(MsldpcError):
    pass


class CatalogError(MsldpcError):
    pass


class RecordNotFound(MsldpcError):
    """A record file has no usable record at the requested index."""
