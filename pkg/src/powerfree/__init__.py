"""Lexicographically least a/b-power-free words over the natural numbers.

The package has five working parts:

- ``words``: finite words over ZZ>=0 (plus the primed markers 0', 1'),
  fractional-power detection, and the greedy lexicographically least
  generator in three avoidance modes.
- ``morphisms``: uniform shift morphisms phi(n) = u (n+d) with optional
  transients and primed overrides, streaming fixed-point expansion.
- ``verifier``: automatic a/b-power-freeness and lexicographic-leastness
  proofs for explicit morphisms, including transient prefixes.
- ``symbolic``: the same proofs carried out symbolically in a and b, over
  exact rational intervals, for whole families of morphisms at once.
- ``miner``: conjecturing morphism structure from raw word prefixes and
  generalizing pairs of explicit morphisms into symbolic families.
"""

from .words import (
    AvoidMode,
    Fraction,
    Word,
    compare_lex,
    find_power_factor,
    first_occurrences,
    generate_lexleast,
    is_fractional_power,
    power_suffix,
)

__all__ = [
    "AvoidMode",
    "Fraction",
    "Word",
    "compare_lex",
    "find_power_factor",
    "first_occurrences",
    "generate_lexleast",
    "is_fractional_power",
    "power_suffix",
]

__version__ = "0.1.0"
