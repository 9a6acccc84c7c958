"""Exception types shared across the package."""


class FourthMomentError(Exception):
    """Base class for all domain errors raised by this package."""


class SizeExceededError(FourthMomentError):
    """Requested enumeration exceeds the configured combinatorial ceiling.

    This signals combinatorial blow-up of the request, not a bug; raise the
    ceiling explicitly if the blow-up is intended.
    """


class NotAPairPartitionError(FourthMomentError):
    """Crossing statistics are only defined for partitions into pairs."""


class DomainError(FourthMomentError):
    """A parameter lies outside its documented domain."""


class MissingCdfError(FourthMomentError):
    """The operation needs a distribution with an evaluable CDF."""


class MissingAtomsError(FourthMomentError):
    """The operation needs a distribution with a finite atom list."""


class MissingLipschitzError(FourthMomentError):
    """The operation needs a certified Lipschitz bound for the CDF."""


class NegativeRadicandError(FourthMomentError):
    """The bound's radicand is negative; the input law cannot be divisible
    at the claimed order.  Run the kurtosis audit on the moment sequence to
    find the largest admissible order."""


class ZeroVarianceError(FourthMomentError):
    """Kurtosis is undefined for a law with zero central second moment."""


class UnknownExampleError(FourthMomentError):
    """The requested worked example is not in the catalog."""


class CertificationError(FourthMomentError):
    """A requested numerical certificate could not be achieved within the
    evaluation budget."""
