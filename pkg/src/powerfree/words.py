"""Words over the natural numbers and fractional-power avoidance.

Letters are natural numbers, plus two primed markers 0' and 1' used by
morphisms with transients.  Internally a word is a numpy int32 array in
which plain letters are stored as themselves and the primed letters as
the sentinels PRIME0 = -1 and PRIME1 = -2.  All power detection and
ordering happens after the coding tau (0' -> 0, 1' -> 1); the primes are
bookkeeping markers, never semantic letters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

PRIME0 = -1
PRIME1 = -2

MODE_EXACT = 0
MODE_AT_LEAST = 1
MODE_GREATER = 2


class AvoidMode(Enum):
    """Which set of fractional powers the generator avoids."""

    EXACT = MODE_EXACT  # a/b-powers only
    AT_LEAST = MODE_AT_LEAST  # all p/q-powers with p/q >= a/b
    GREATER = MODE_GREATER  # all p/q-powers with p/q > a/b

    @staticmethod
    def parse(s: str) -> "AvoidMode":
        table = {"exact": AvoidMode.EXACT, "geq": AvoidMode.AT_LEAST, "gt": AvoidMode.GREATER}
        if s not in table:
            raise ValueError(f"unknown mode {s!r} (expected exact, geq or gt)")
        return table[s]


@dataclass(frozen=True)
class Fraction:
    """A reduced exponent a/b with a/b > 1."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"{self.a}/{self.b} is not reduced")
        if self.a <= self.b:
            raise ValueError(f"{self.a}/{self.b} <= 1: every word of length {self.a} "
                             "would be a power and no avoiding word exists")

    @staticmethod
    def parse(s: str) -> "Fraction":
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s), 1)

    def __str__(self):
        return f"{self.a}/{self.b}"

    def __float__(self):
        return self.a / self.b


def tau(letters: np.ndarray) -> np.ndarray:
    """The coding: 0' -> 0, 1' -> 1, n -> n."""
    out = np.asarray(letters).copy()
    out[out == PRIME0] = 0
    out[out == PRIME1] = 1
    return out


class Word:
    """A finite word, indexed from position 0."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] | np.ndarray):
        arr = np.asarray(letters, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("a word is a flat sequence of letters")
        self.letters = arr

    @staticmethod
    def parse(text: str) -> "Word":
        out = []
        for tok in text.split():
            if tok == "0'":
                out.append(PRIME0)
            elif tok == "1'":
                out.append(PRIME1)
            else:
                out.append(int(tok))
        return Word(out)

    @staticmethod
    def from_digits(digits: str) -> "Word":
        """Single-character letters, as printed in compact displays ("001102")."""
        return Word([int(ch) for ch in digits])

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return int(self.letters[i])

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return len(self.letters) == len(other.letters) and bool(
            np.array_equal(self.letters, other.letters)
        )

    def __hash__(self):
        return hash(self.letters.tobytes())

    def __repr__(self):
        shown = self.text() if len(self) <= 24 else self[:24].text() + " ..."
        return f"Word({len(self)}: {shown})"

    def text(self) -> str:
        """The shared text format: space-separated letters, primes as 0'/1'."""
        toks = []
        for v in self.letters:
            if v == PRIME0:
                toks.append("0'")
            elif v == PRIME1:
                toks.append("1'")
            else:
                toks.append(str(int(v)))
        return " ".join(toks)

    def digits(self) -> str:
        if len(self.letters) and (self.letters.max(initial=0) > 9 or self.letters.min(initial=0) < 0):
            raise ValueError("digit rendering requires plain letters 0..9")
        return "".join(str(int(v)) for v in self.letters)

    def coded(self) -> "Word":
        return Word(tau(self.letters))


def _as_coded_array(w) -> np.ndarray:
    if isinstance(w, Word):
        return tau(w.letters)
    if isinstance(w, str):
        return tau(Word.from_digits(w).letters)
    return tau(np.asarray(w, dtype=np.int32))


def is_fractional_power(w, f: Fraction) -> bool:
    """Whether the whole word is an a/b-power.

    A word of length m*a (m >= 1) is an a/b-power iff w(i) = w(i - m*b)
    for all m*b <= i < m*a; for 1 < a/b < 2 this is the xyx shape with
    |x| = m(a-b) and |y| = m(2b-a).
    """
    arr = _as_coded_array(w)
    n = len(arr)
    if n == 0 or n % f.a != 0:
        return False
    m = n // f.a
    s = m * f.b
    return bool(np.array_equal(arr[s:], arr[: n - s]))


def find_power_factor(w, f: Fraction) -> Optional[tuple[int, int]]:
    """Leftmost, then shortest, factor of w that is an a/b-power.

    Returns (start, m) with the factor w[start : start + m*a], or None if
    the word is a/b-power-free.
    """
    arr = _as_coded_array(w)
    n = len(arr)
    a, b = f.a, f.b
    best = None
    for m in range(1, n // a + 1):
        length, s = m * a, m * b
        eq = arr[s:] == arr[: n - s]
        run = 0
        need = length - s
        # run of matches ending at i+s covers a factor when run >= need
        for i in range(len(eq)):
            run = run + 1 if eq[i] else 0
            if run >= need:
                start = i + s - length + 1
                if best is None or start < best[0]:
                    best = (start, m)
                break  # leftmost for this m; smaller start only from other m
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    # prefer leftmost, then shortest
    start0 = best[0]
    for m in range(1, best[1]):
        length, s = m * a, m * b
        if start0 + length <= n and np.array_equal(
            arr[start0 + s : start0 + length], arr[start0 : start0 + length - s]
        ):
            return (start0, m)
    return best


def _mode_threshold(s: int, a: int, b: int, mode: int) -> int:
    """Matched-run length at shift s that completes a forbidden suffix."""
    if mode == MODE_EXACT:
        return (s // b) * (a - b)  # s is a multiple of b here
    if mode == MODE_AT_LEAST:
        return -((-s * (a - b)) // b)  # ceil
    return s * (a - b) // b + 1


def power_suffix(w, f: Fraction, mode: AvoidMode = AvoidMode.EXACT) -> Optional[int]:
    """Smallest m >= 1 whose witness suffix is a forbidden power.

    Exact mode: the suffix of length m*a is an a/b-power.  In the range
    modes the shortest forbidden suffix (a p/q-power with p/q in the
    mode's range) has some length L, and ceil(L/a) is reported as m.
    Returns None when no suffix is forbidden.
    """
    arr = _as_coded_array(w)
    n = len(arr)
    a, b = f.a, f.b
    md = mode.value
    best_len = None
    shifts = range(b, n, b) if md == MODE_EXACT else range(1, n)
    for s in shifts:
        need = _mode_threshold(s, a, b, md)
        if s + need > n:
            if md == MODE_EXACT:
                break
            continue
        run = 0
        j = n - 1
        while j - s >= 0 and arr[j] == arr[j - s] and run < need:
            run += 1
            j -= 1
        if run >= need:
            length = s + need
            if best_len is None or length < best_len:
                best_len = length
    if best_len is None:
        return None
    if md == MODE_EXACT:
        return best_len // a
    return -((-best_len) // a)


def generate_lexleast(f: Fraction, n: int, mode: AvoidMode = AvoidMode.EXACT) -> Word:
    """Length-n prefix of the lexicographically least infinite word.

    At each position the least letter is appended whose arrival completes
    no forbidden power suffix; on the alphabet ZZ>=0 this never needs to
    backtrack.  Prefixes are cached per (a, b, mode).
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    from . import _kernel

    return Word(_kernel.generate(f.a, f.b, mode.value, n))


def compare_lex(w1, w2) -> int:
    """Lexicographic comparison by coded letter value.

    Returns -1, 0 or 1.  A word compares equal to any extension of itself
    (only the shared range is examined).
    """
    x = _as_coded_array(w1)
    y = _as_coded_array(w2)
    n = min(len(x), len(y))
    diff = np.nonzero(x[:n] != y[:n])[0]
    if len(diff) == 0:
        return 0
    i = diff[0]
    return -1 if x[i] < y[i] else 1


def first_occurrences(w) -> dict[int, int]:
    """Least index of each letter value occurring in the (coded) word."""
    arr = _as_coded_array(w)
    out: dict[int, int] = {}
    for i, v in enumerate(arr):
        if int(v) not in out:
            out[int(v)] = i
    return out
