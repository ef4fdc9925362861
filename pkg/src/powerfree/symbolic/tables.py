"""Symbolic factor tables: all windows of a given length, parameterized.

The windows of phi(n0) phi(n1) ... are generated by sliding: take the
window at the current offset, then note that the next i_max windows
differ only in their run lengths, where i_max is the least first-block
length among the window's subfactors and the upcoming queue block.  One
table row therefore covers a whole parameter family, and a full period
k of start offsets is covered by finitely many rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import LinearForm, ParamEnv, RationalInterval, compare, form_min, ZERO
from .swords import Queue, SymbolicMorphism, SymbolicWord

IVAR = "i"


@dataclass
class Row:
    """A family of windows: subfactors at slide offsets start + i."""

    start: LinearForm  # offset of the i = 0 window
    i_lo: int  # 0 for the first row, 1 afterwards
    i_max: LinearForm
    parts: list  # SymbolicWords parameterized by the slide variable

    def env(self, base: ParamEnv | None = None) -> ParamEnv:
        env = base if base is not None else ParamEnv()
        return env.with_param(IVAR, LinearForm.const(self.i_lo), self.i_max)

    def part_at(self, idx: int, var: LinearForm) -> SymbolicWord:
        """The subfactor with the slide variable replaced by `var`."""
        out = SymbolicWord()
        for letter, e in self.parts[idx].blocks:
            out.push(letter, e.subst(IVAR, var))
        return out


def _slide_parts(parts, next_letters, i):
    """Shift every subfactor i letters right; entering letters come from
    the following subfactor's head (or the queue head for the last)."""
    out = []
    for idx, word in enumerate(parts):
        w = SymbolicWord()
        first = True
        for letter, e in word.blocks:
            w.push(letter, e - i if first else e)
            first = False
        w.push(next_letters[idx], i)
        out.append(w)
    return out


def _build_table(m: SymbolicMorphism, lengths, ival: RationalInterval) -> list:
    """Rows covering one period of window starts; lengths gives the
    subfactor lengths (their sum is the window length)."""
    k = m.k
    rows = []
    cursor = Queue(m, ival)
    cum = ZERO
    i_lo = 0
    ivar = LinearForm.var(IVAR)
    while True:
        probe = cursor.clone()
        parts = [probe.take(length) for length in lengths]
        q_letter, q_rem = probe.head_positive()
        firsts = []
        next_letters = []
        for idx, part in enumerate(parts):
            if not part.blocks:
                raise ValueError("empty subfactor in table construction")
            firsts.append(part.blocks[0][1])
            if idx + 1 < len(parts):
                next_letters.append(parts[idx + 1].blocks[0][0])
            else:
                next_letters.append(q_letter)
        # cap so the final offset is k-1: offset k would repeat offset 0
        room = (k - cum) - 1
        i_max = form_min(firsts + [q_rem], ival)
        rel = compare(i_max, room, ival)
        last = False
        if rel in (">", ">=", "="):
            i_max = room
            last = True
        empty_row = i_lo == 1 and i_max.is_const() and i_max.gamma < 1
        if not empty_row:
            rows.append(
                Row(start=cum, i_lo=i_lo, i_max=i_max, parts=_slide_parts(parts, next_letters, ivar))
            )
        if last:
            break
        cursor.take(i_max)
        cum = cum + i_max
        i_lo = 1
    return rows


def sym_factor_table(m: SymbolicMorphism, mult: int, ival: RationalInterval) -> list:
    """All length-(mult*a) windows split as x y z with |x| = |z| = mult(a-b).

    Rows parameterize the slide; raises SplitRequest when a comparison
    changes sign inside the interval.
    """
    xlen = LinearForm.of(mult, -mult)
    ylen = LinearForm.of(-mult, 2 * mult)
    return _build_table(m, [xlen, ylen, xlen], ival)


def sym_locating_table(m: SymbolicMorphism, length: LinearForm, ival: RationalInterval) -> list:
    """All windows of the given length, unsplit, for the locating test."""
    return _build_table(m, [length], ival)
