"""Symbolic a/b-power-freeness machinery.

Everything here manipulates words whose run lengths are integer linear
combinations of a, b and 1 (plus bounded window parameters), over exact
rational intervals for the ratio a/b.  The prover reproduces whole
theorem families at once: it finds a locating length by candidate
search, slides symbolic windows, refutes equality of the window halves
by a battery of criteria, splits the interval where comparisons change
sign, and checks every split point explicitly.
"""

from .forms import LinearForm, ParamEnv, RationalInterval, SplitRequest, UndecidableComparison
from .swords import SymbolicMorphism, SymbolicWord, sym_take
from .unequal import sym_unequal
from .tables import sym_factor_table, sym_locating_table
from .prover import (
    ExceptionRational,
    GcdViolation,
    NoSymbolicLocatingLength,
    OutOfInterval,
    SymbolicProof,
    instantiate,
    sym_locating_length,
    sym_verify_free,
)
from .conj4r import conj4r_morphism

__all__ = [
    "LinearForm",
    "ParamEnv",
    "RationalInterval",
    "SplitRequest",
    "UndecidableComparison",
    "SymbolicMorphism",
    "SymbolicWord",
    "sym_take",
    "sym_unequal",
    "sym_factor_table",
    "sym_locating_table",
    "ExceptionRational",
    "GcdViolation",
    "NoSymbolicLocatingLength",
    "OutOfInterval",
    "SymbolicProof",
    "instantiate",
    "sym_locating_length",
    "sym_verify_free",
    "conj4r_morphism",
]
