"""Exception types shared across the package."""


class LatticeError(ValueError):
    """Base class for domain errors raised by this package."""


class AllZeroError(LatticeError):
    """Every weight in the input sequence is zero."""


class NegativeWeightError(LatticeError):
    """A weight is negative."""


class BadToleranceError(LatticeError):
    """Truncation tolerance outside the accepted range (0, 1e-6]."""


class BadLambdaError(LatticeError):
    """Law parameter outside the open interval (0, 1)."""


class OutOfSupportError(LatticeError):
    """Index carries no probability mass (information content is infinite)."""


class DiracInputError(LatticeError):
    """Operation is undefined for a point mass."""


class NoBracketError(LatticeError):
    """Root finding could not bracket a sign change."""


class NoCrossingError(LatticeError):
    """The comparator dominates the sequence everywhere; crossing set is empty."""


class NotSymmetricError(LatticeError):
    """Operation requires a pmf symmetric about an integer."""


class MeanMismatchError(LatticeError):
    """Convex-order check requires equal means."""


class UnclassifiedError(LatticeError):
    """The pmf is outside the structural classes the bound covers."""


class NotMonotoneLogConcaveError(LatticeError):
    """Operation requires a monotone log-concave pmf."""


class BadOrdersError(LatticeError):
    """Invalid Renyi order or order pair."""


class DomainError(LatticeError):
    """Argument outside the domain of the evaluated functional."""
