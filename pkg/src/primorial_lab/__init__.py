"""primorial-lab: primality heuristics for primorials, explicit prime-counting
bounds, and reproducible number-theory tables."""

from primorial_lab._backend import BACKEND
from primorial_lab.bignum import (
    Primorial,
    PrimalityVerdict,
    UniversalPrimorial,
    is_prime,
    log_primorial,
    primorial,
    realize,
)
from primorial_lab.heuristics import (
    ExclusionSet,
    HeuristicParams,
    OmegaBounds,
    OmegaValue,
    ThetaFactor,
    alpha,
    exclusion_set,
    likelihood,
    likelihood_asymptotic,
    mertens_product,
    omega_elementary_bounds,
    omega_sum,
    theta_factor,
    twin_prime_constant,
)
from primorial_lab.prime_engine import PrimeStats, PrimeTable, sieve_up_to

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExclusionSet",
    "HeuristicParams",
    "OmegaBounds",
    "OmegaValue",
    "PrimalityVerdict",
    "PrimeStats",
    "PrimeTable",
    "Primorial",
    "ThetaFactor",
    "UniversalPrimorial",
    "alpha",
    "exclusion_set",
    "is_prime",
    "likelihood",
    "likelihood_asymptotic",
    "log_primorial",
    "mertens_product",
    "omega_elementary_bounds",
    "omega_sum",
    "primorial",
    "realize",
    "sieve_up_to",
    "theta_factor",
    "twin_prime_constant",
    "__version__",
]
