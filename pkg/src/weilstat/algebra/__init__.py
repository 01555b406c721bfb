"""Exact arithmetic kernel: prime fields, F_ell[x] factorization and
integer polynomial algebra."""

from .factor_z import FactorizationZ, factor_over_z, is_irreducible_z
from .polyf import FactorizationF, PolyF, PrimeFieldCtx, factor_mod_l
from .polyz import (
    PolyZ,
    composed_product,
    discriminant,
    graeffe_power,
    power_sums,
    real_root_count,
    resultant,
    squarefree_decomposition,
    squarefree_degree,
    squarefree_part,
    sturm_roots_in_interval,
)
from .primes import is_prime, is_prime_power, legendre, primes_up_to

__all__ = [
    "FactorizationF",
    "FactorizationZ",
    "PolyF",
    "PolyZ",
    "PrimeFieldCtx",
    "composed_product",
    "discriminant",
    "factor_mod_l",
    "factor_over_z",
    "graeffe_power",
    "is_irreducible_z",
    "is_prime",
    "is_prime_power",
    "legendre",
    "power_sums",
    "primes_up_to",
    "real_root_count",
    "resultant",
    "squarefree_decomposition",
    "squarefree_degree",
    "squarefree_part",
    "sturm_roots_in_interval",
]
