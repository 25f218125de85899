"""Sieved Möbius/Liouville tables and the averages built on them."""

from mobiuslab.arithmetic.means import (
    CorrelationQuery,
    GapSequenceSpec,
    chowla_sum,
    eventually_periodic_mean,
    gap_bounded_mean,
    mean_mobius,
    mertens,
    progression_mean,
    progression_sum,
)
from mobiuslab.arithmetic.sieve import MobiusTable, sieve_mobius, small_primes

__all__ = [
    "CorrelationQuery",
    "GapSequenceSpec",
    "MobiusTable",
    "chowla_sum",
    "eventually_periodic_mean",
    "gap_bounded_mean",
    "mean_mobius",
    "mertens",
    "progression_mean",
    "progression_sum",
    "sieve_mobius",
    "small_primes",
]
