"""
Exception hierarchy for affhecke.

Every error carries the exit code the command line maps it to. Mathematical
failures (a relation that does not hold, a sequence that is not regular) are
reported as data and never raised.
"""

from typing import Optional, Sequence


class AffHeckeError(Exception):
    """Base class for all affhecke errors."""

    exit_code = 2


class TypeSpecError(AffHeckeError):
    """Unknown or malformed type string such as ``Z9`` or ``D2``."""


class CartanMatrixError(AffHeckeError):
    """The matrix is not a Cartan matrix of finite type."""


class DimensionMismatchError(AffHeckeError):
    """Vectors of different lengths were paired or combined."""


class RootDatumMismatchError(AffHeckeError):
    """Arithmetic was attempted between objects over different root data."""


class InputParseError(AffHeckeError):
    """Command-line or file input could not be parsed."""


class ConfigurationError(AffHeckeError):
    """A configuration value is outside its accepted set."""


class HomogeneityError(AffHeckeError):
    """A homogeneous-only routine received an inhomogeneous polynomial."""


class KoszulInputError(AffHeckeError):
    """Empty generator list or a zero generator."""


class ResourceBoundError(AffHeckeError):
    """A configured resource bound would be exceeded."""

    exit_code = 3


class GroupSizeError(ResourceBoundError):
    """The Weyl group is larger than the enumeration bound."""


class BasisWindowError(ResourceBoundError):
    """A standard-basis conversion left its weight window."""


class KoszulSizeError(ResourceBoundError):
    """The Koszul linear algebra exceeds the matrix-size bound."""


class NonReducedWordError(AffHeckeError):
    """A word that was required to be reduced is not."""

    exit_code = 4

    def __init__(self, message: str, shorter: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.shorter = tuple(shorter) if shorter is not None else None
