"""The 4r-nonzero-letter family of morphisms, one for each r >= 2.

Six building blocks, each a zero run followed by a single 1, assemble
into a ((2r+1)a - (2r-1)b)-uniform morphism.  For r = 2 one factor has a
negative repetition count; interpreting it in the free group cancels an
adjacent block into a plain zero run, which lands exactly on the
8-nonzero-letter morphism.
"""

from __future__ import annotations

from fractions import Fraction as Frac

from .forms import LinearForm, RationalInterval
from .swords import SymbolicMorphism


def conj4r_morphism(r: int) -> SymbolicMorphism:
    """The 4r-letter morphism; r >= 2."""
    if r < 2:
        raise ValueError("r must be at least 2")
    A = LinearForm.of(1, -1, -1)
    B = LinearForm.of(2, -2, -1)
    C = LinearForm.of(3, -3, -1)
    X = LinearForm.of(2 * r + 1, -(2 * r + 2), -1)
    Y = LinearForm.of(-(2 * r - 2), 2 * r - 1, -1)
    Z = LinearForm.of(2 * r, -(2 * r + 1), -1)

    if r >= 3:
        seq = [X] + [Y, Z] * (r - 2) + [B, A, Y] + [B] * (r - 2) + [C, Y] + [B] * (r - 3) + [Y, A]
    else:
        # r = 2: the factor Y B^{-1} collapses, in the free group, to the
        # zero run 0^{-4a+5b}, which merges into the following Y block
        merged_y = Y + LinearForm.of(-4, 5)
        seq = [X, B, A, Y, C, merged_y, A]

    blocks = [(e, 1) for e in seq]
    tail = LinearForm.of(1, -1, -1)
    k = LinearForm.of(2 * r + 1, -(2 * r - 1))
    interval = RationalInterval.open(Frac(2 * r + 1, 2 * r), Frac(2 * r, 2 * r - 1))
    return SymbolicMorphism(
        name=f"family-{4 * r}-{2 * r + 1}a-{2 * r - 1}b",
        blocks=blocks,
        d=1,
        k=k,
        tail=tail,
        interval=interval,
        gcd_s=2 * r + 1,
        exceptions=[Frac(4 * r + 1, 4 * r - 1)],
    )
