"""Exact counts of relatively prime subsets and supersets of integer ranges.

The heavy lifting happens in the compiled extension; this package re-exports
its functions. Counts come back as plain Python ints of arbitrary size.
"""

from ._core import (
    __version__,
    binomial,
    binomial_range_sum,
    divisors,
    enumerate_count,
    enumerate_witnesses,
    epsilon_interval,
    epsilon_k_interval,
    f_interval,
    f_k_interval,
    gcd_fold,
    meet_f,
    meet_f_k,
    meet_phi,
    meet_phi_k,
    mobius,
    mobius_sieve,
    phi_interval,
    phi_k_interval,
    phi_k_union,
    phi_union,
    pow2,
    psi,
    psi_k,
    radical,
    squarefree_divisors,
    superset_f,
    superset_f_k,
    superset_phi,
    superset_phi_k,
)

__all__ = [
    "__version__",
    "binomial",
    "binomial_range_sum",
    "divisors",
    "enumerate_count",
    "enumerate_witnesses",
    "epsilon_interval",
    "epsilon_k_interval",
    "f_interval",
    "f_k_interval",
    "gcd_fold",
    "meet_f",
    "meet_f_k",
    "meet_phi",
    "meet_phi_k",
    "mobius",
    "mobius_sieve",
    "phi_interval",
    "phi_k_interval",
    "phi_k_union",
    "phi_union",
    "pow2",
    "psi",
    "psi_k",
    "radical",
    "squarefree_divisors",
    "superset_f",
    "superset_f_k",
    "superset_phi",
    "superset_phi_k",
]
