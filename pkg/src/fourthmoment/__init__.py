"""Fourth-moment approximation bounds for divisible laws.

Exact classical/free moment-cumulant transforms over (non-crossing) set
partitions, a catalog of laws with certified CDFs, a Kolmogorov-distance
engine with numerical error certificates, theorem right-hand-side
evaluators, and the kurtosis divisibility audit.
"""

from .bounds import (
    BoundReport,
    KurtosisAudit,
    Theorem,
    classical_bound,
    free_bound,
    kurtosis_audit,
    run_verification_suite,
    verify_example,
)
from .cumulants import (
    ConvolutionKind,
    CumulantSequence,
    MomentSequence,
    central_moments,
    cumulants_from_moments,
    dilate_moments,
    moments_from_cumulants,
    qgaussian_moments,
    scale_law,
)
from .distributions import (
    DistributionSpec,
    compound_poisson_moments,
    gaussian_cdf,
    gaussian_spec,
    kesten_mckay,
    make_spec,
    qgaussian_spec,
    semicircle_cdf,
    semicircle_spec,
    shifted_lognormal,
    standardized_poisson,
)
from .errors import (
    CertificationError,
    DomainError,
    FourthMomentError,
    MissingAtomsError,
    MissingCdfError,
    MissingLipschitzError,
    NegativeRadicandError,
    NotAPairPartitionError,
    SizeExceededError,
    UnknownExampleError,
    ZeroVarianceError,
)
from .kolmogorov import (
    DistanceMethod,
    DistanceResult,
    distance,
    distance_atomic_vs_continuous,
    distance_continuous,
)
from .partitions import (
    Partition,
    PartitionFamily,
    PartitionKind,
    crossing_count,
    enumerate_partitions,
    is_noncrossing,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CertificationError",
    "ConvolutionKind",
    "CumulantSequence",
    "DistanceMethod",
    "DistanceResult",
    "DistributionSpec",
    "DomainError",
    "FourthMomentError",
    "KurtosisAudit",
    "MissingAtomsError",
    "MissingCdfError",
    "MissingLipschitzError",
    "MomentSequence",
    "NegativeRadicandError",
    "NotAPairPartitionError",
    "Partition",
    "PartitionFamily",
    "PartitionKind",
    "SizeExceededError",
    "Theorem",
    "UnknownExampleError",
    "ZeroVarianceError",
    "central_moments",
    "classical_bound",
    "compound_poisson_moments",
    "crossing_count",
    "cumulants_from_moments",
    "dilate_moments",
    "distance",
    "distance_atomic_vs_continuous",
    "distance_continuous",
    "enumerate_partitions",
    "free_bound",
    "gaussian_cdf",
    "gaussian_spec",
    "is_noncrossing",
    "kesten_mckay",
    "kurtosis_audit",
    "make_spec",
    "moments_from_cumulants",
    "qgaussian_moments",
    "qgaussian_spec",
    "run_verification_suite",
    "scale_law",
    "semicircle_cdf",
    "semicircle_spec",
    "shifted_lognormal",
    "standardized_poisson",
    "verify_example",
]
