"""Exception types raised by the fermifid package.

All exceptions derive from ``FermifidError`` (a ``ValueError``) so callers
can catch the whole family or individual conditions.
"""


class FermifidError(ValueError):
    """Base class for all fermifid errors."""


class ShapeMismatch(FermifidError):
    """Matrix or vector operands have incompatible shapes."""


class LengthMismatch(FermifidError):
    """Parameter lists that must be equally long are not."""


class OddSize(FermifidError):
    """The number of fermionic modes must be even."""


class NotSymmetric(FermifidError):
    """Hopping matrix deviates from symmetry beyond tolerance."""


class NotAntisymmetric(FermifidError):
    """Pairing matrix deviates from antisymmetry beyond tolerance."""


class NotOrthogonal(FermifidError):
    """Matrix fails the orthogonality check."""


class UnpairedRealEigenvalue(FermifidError):
    """Real eigenvalue count of an orthogonal matrix has impossible parity.

    For even dimension the +1 and -1 multiplicities must sum to an even
    number; anything else signals numerical breakdown upstream.
    """


class NegativeDeterminant(FermifidError):
    """A real logarithm was requested for an orthogonal matrix with det -1."""


class AngleAtBranchCut(FermifidError):
    """An eigenvalue too close to -1 makes the matrix logarithm ill-conditioned."""


class NonSpecialOrthogonal(FermifidError):
    """A callable expected to produce special-orthogonal matrices did not."""


class PairingUndefined(FermifidError):
    """The pairing matrix does not exist because -1 is an eigenvalue of the
    orthogonal factor (the generating linear system is not invertible)."""


class IllConditioned(FermifidError):
    """A linear solve is numerically ill-conditioned without a detected
    structural cause."""


class SingularCoupling(FermifidError):
    """The coupling matrix is singular where a unique polar factor is required."""


class NegativeRelativeDeterminant(FermifidError):
    """The angle-product fidelity route requires det(T^T T') = +1."""


class TooLarge(FermifidError):
    """Fock-space construction was requested above the hard mode cap."""


class ConfigError(FermifidError):
    """Malformed command-line arguments or configuration file."""
