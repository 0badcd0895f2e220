"""Iterated modified Dedekind psi: classes, exact densities, Mersenne bounds."""

from ._kernel import BACKEND, available_backends
from .atlas import (
    ClassExtremes,
    ClassQueryResult,
    MAX_SIEVE_LIMIT,
    SieveTable,
    build_sieve,
    class_members,
    largest_odd_in_class,
    section_of,
    smallest_multiple_in_class,
    smallest_odd_in_class,
    verify_class_structure,
)
from .core import (
    FUNCTION_IDS,
    PHI,
    PSI,
    PSI_BAR,
    TailHit,
    TrajectoryReport,
    big_d,
    check_white_conditions,
    dedekind_psi,
    euler_phi,
    factorize,
    is_prime,
    lambda_additive,
    lambda_trajectory,
    primes_up_to,
    psi_bar,
    psi_tail_detect,
    trajectory,
    verify_white_behavior,
)
from .density import (
    DensityRow,
    as_exact,
    density_table,
    in_t,
    in_v,
    k_max,
    odd_part_in_v,
    progression_closure_report,
    t_witness,
    verify_density_claims,
)
from .errors import (
    CapacityError,
    InsufficientSieveError,
    InternalInconsistencyError,
    IterationCapExceeded,
    SieveFileError,
)
from .mersenne import (
    BoundReport,
    KNOWN_MERSENNE_EXPONENTS,
    MersennePair,
    bound_report,
    mersenne_power_inequality,
    mersenne_witness,
    skupien_rep,
    verify_bound_chain,
)
from .report import Claim, VerificationReport
from .sievefile import load_sieve, save_sieve

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundReport",
    "CapacityError",
    "Claim",
    "ClassExtremes",
    "ClassQueryResult",
    "DensityRow",
    "FUNCTION_IDS",
    "InsufficientSieveError",
    "InternalInconsistencyError",
    "IterationCapExceeded",
    "KNOWN_MERSENNE_EXPONENTS",
    "MAX_SIEVE_LIMIT",
    "MersennePair",
    "PHI",
    "PSI",
    "PSI_BAR",
    "SieveFileError",
    "SieveTable",
    "TailHit",
    "TrajectoryReport",
    "VerificationReport",
    "as_exact",
    "available_backends",
    "big_d",
    "bound_report",
    "build_sieve",
    "check_white_conditions",
    "class_members",
    "dedekind_psi",
    "density_table",
    "euler_phi",
    "factorize",
    "in_t",
    "in_v",
    "is_prime",
    "k_max",
    "lambda_additive",
    "lambda_trajectory",
    "largest_odd_in_class",
    "load_sieve",
    "mersenne_power_inequality",
    "mersenne_witness",
    "odd_part_in_v",
    "primes_up_to",
    "progression_closure_report",
    "psi_bar",
    "psi_tail_detect",
    "save_sieve",
    "section_of",
    "skupien_rep",
    "smallest_multiple_in_class",
    "smallest_odd_in_class",
    "t_witness",
    "trajectory",
    "verify_bound_chain",
    "verify_class_structure",
    "verify_density_claims",
    "verify_white_behavior",
    "__version__",
]
