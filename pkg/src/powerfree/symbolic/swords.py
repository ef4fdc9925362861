"""Run-length words with symbolic exponents, and symbolic shift morphisms.

A symbolic word is a list of blocks (letter, exponent) where the letter
is an explicit natural number or a renamed image-final unknown ("n", i)
standing for n_i + d, and the exponent is a LinearForm.  The morphisms
are phi(n) = 0^{e1} c1 0^{e2} c2 ... (n + d) with the block exponents
linear in a, b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as Frac
from typing import Optional

from .forms import (
    LinearForm,
    ParamEnv,
    RationalInterval,
    SplitRequest,
    UndecidableComparison,
    ZERO,
    compare,
    form_min,
    is_positive,
    sign_of,
)

Sym = tuple  # ("n", index)


def is_sym(letter) -> bool:
    return isinstance(letter, tuple)


def letter_str(letter) -> str:
    return f"n{letter[1]}" if is_sym(letter) else str(letter)


class SymbolicWord:
    """Blocks of (letter, exponent LinearForm); exponents >= 0 on validity."""

    __slots__ = ("blocks",)

    def __init__(self, blocks=()):
        self.blocks = [(l, e) for (l, e) in blocks]

    def copy(self) -> "SymbolicWord":
        return SymbolicWord(self.blocks)

    def length(self) -> LinearForm:
        total = ZERO
        for _, e in self.blocks:
            total = total + e
        return total

    def push(self, letter, exponent: LinearForm):
        if exponent.is_const() and exponent.gamma == 0:
            return
        if self.blocks and self.blocks[-1][0] == letter:
            last_letter, last_exp = self.blocks[-1]
            self.blocks[-1] = (last_letter, last_exp + exponent)
        else:
            self.blocks.append((letter, exponent))

    def normalized(self, ival, env=None) -> "SymbolicWord":
        """Drop provably-zero blocks, merge equal neighbours."""
        out = SymbolicWord()
        for letter, e in self.blocks:
            try:
                s = sign_of(e, ival, env)
            except SplitRequest:
                s = "unknown"
            if s == "zero":
                continue
            out.push(letter, e)
        return out

    def reversed_word(self) -> "SymbolicWord":
        return SymbolicWord(list(reversed(self.blocks)))

    def instantiate(self, a: int, b: int, params: Optional[dict] = None,
                    sym_values: Optional[dict] = None) -> list:
        """Concrete letter list; sym letters need values for n_i."""
        out = []
        for letter, e in self.blocks:
            count = e.eval(a, b, params)
            if count < 0:
                raise ValueError(f"negative run length {e} at ({a},{b})")
            if is_sym(letter):
                if sym_values is None or letter[1] not in sym_values:
                    raise ValueError(f"unbound image-final unknown {letter_str(letter)}")
                value = sym_values[letter[1]]
            else:
                value = letter
            out.extend([value] * count)
        return out

    def __str__(self):
        return " ".join(f"{letter_str(l)}^{{{e}}}" for l, e in self.blocks) or "eps"

    def __repr__(self):
        return f"SymbolicWord({self})"


@dataclass
class SymbolicMorphism:
    """phi(n) = interleaved zero runs and explicit letters, then (n + d)."""

    name: str
    blocks: list  # [(exponent LinearForm, letter int)] pairs: 0^{e} then letter
    d: int
    k: LinearForm  # = s*a - t*b
    tail: LinearForm  # zero run between the last explicit letter and (n+d)
    interval: RationalInterval
    gcd_s: int  # hypothesis gcd(b, gcd_s) = 1
    exceptions: list = field(default_factory=list)  # excluded ratios (Frac)

    @property
    def s(self) -> int:
        return self.k.alpha

    @property
    def t(self) -> int:
        return -self.k.beta

    def nonzero_letters(self) -> int:
        return len(self.blocks) + 1  # the explicit letters plus the shifted final

    def check_k(self) -> bool:
        total = ZERO
        for e, _ in self.blocks:
            total = total + e + 1
        total = total + self.tail + 1
        return total == self.k

    def image_blocks(self, index: int) -> list:
        """Blocks of phi(n_index), final letter renamed ("n", index)."""
        out = []
        for e, letter in self.blocks:
            out.append((0, e))
            out.append((letter, LinearForm.const(1)))
        out.append((0, self.tail))
        out.append((("n", index), LinearForm.const(1)))
        return [(l, e) for (l, e) in out if not (e.is_const() and e.gamma == 0)]

    def image_word(self, index: int = 0) -> SymbolicWord:
        w = SymbolicWord()
        for letter, e in self.image_blocks(index):
            w.push(letter, e)
        return w

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "kind": "symbolic-shift",
            "name": self.name,
            "blocks": [[[e.alpha, e.beta, e.gamma], letter] for e, letter in self.blocks],
            "tail": [self.tail.alpha, self.tail.beta, self.tail.gamma],
            "d": self.d,
            "k": [self.k.alpha, self.k.beta, self.k.gamma],
            "interval": str(self.interval),
            "gcd_condition": [self.gcd_s],
            "exceptions": [str(x) for x in self.exceptions],
        }
        return json.dumps(obj, indent=1)

    @staticmethod
    def from_json(text: str) -> "SymbolicMorphism":
        obj = json.loads(text)
        if obj.get("kind") != "symbolic-shift":
            raise ValueError(f"not a symbolic morphism file: kind={obj.get('kind')!r}")
        return SymbolicMorphism(
            name=obj.get("name", "unnamed"),
            blocks=[(LinearForm(*coeffs), int(letter)) for coeffs, letter in obj["blocks"]],
            tail=LinearForm(*obj["tail"]),
            d=int(obj["d"]),
            k=LinearForm(*obj["k"]),
            interval=RationalInterval.parse(obj["interval"]),
            gcd_s=int(obj["gcd_condition"][0]),
            exceptions=[Frac(x) for x in obj.get("exceptions", [])],
        )


def load_symbolic(path) -> SymbolicMorphism:
    with open(path) as fh:
        return SymbolicMorphism.from_json(fh.read())


class Queue:
    """Cursor into phi(n_0) phi(n_1) ... with whole/partial block pops."""

    def __init__(self, morphism: SymbolicMorphism, ival: RationalInterval,
                 env: Optional[ParamEnv] = None):
        self.m = morphism
        self.ival = ival
        self.env = env
        self.img = 0
        self.block = 0
        self.used = ZERO  # letters consumed from the current block
        self._cur = morphism.image_blocks(0)

    def clone(self) -> "Queue":
        q = Queue.__new__(Queue)
        q.m, q.ival, q.env = self.m, self.ival, self.env
        q.img, q.block, q.used = self.img, self.block, self.used
        q._cur = self._cur
        return q

    def _advance_block(self):
        self.block += 1
        self.used = ZERO
        if self.block >= len(self._cur):
            self.img += 1
            self.block = 0
            self._cur = self.m.image_blocks(self.img)

    def head(self):
        """(letter, remaining LinearForm) of the current partial block."""
        letter, e = self._cur[self.block]
        return letter, e - self.used

    def head_positive(self):
        """Skip provably empty block remainders, then return head().

        A remainder that vanishes only at scattered interior points is
        returned as-is: block lists with occasionally-empty blocks still
        denote the right word pointwise.
        """
        while True:
            letter, rem = self.head()
            s = sign_of(rem, self.ival, self.env)
            if s == "zero":
                self._advance_block()
                continue
            if s in ("pos", "nonneg"):
                return letter, rem
            raise ValueError(f"negative block remainder {rem} on {self.ival}")

    def take(self, length: LinearForm) -> SymbolicWord:
        """Pop exactly `length` letters as a SymbolicWord (sym_take)."""
        out = SymbolicWord()
        remaining = length
        while True:
            s = sign_of(remaining, self.ival, self.env)
            if s == "zero":
                return out
            if s not in ("pos", "nonneg"):
                raise ValueError(f"take length went negative: {remaining}")
            letter, rem = self.head_positive()
            rel = compare(remaining, rem, self.ival, self.env)
            if rel in (">", ">=", "="):
                out.push(letter, rem)
                remaining = remaining - rem
                self._advance_block()
            elif rel in ("<", "<="):
                # a partial pop; an exactly-full pop leaves an empty
                # remainder that head_positive skips later
                out.push(letter, remaining)
                self.used = self.used + remaining
                return out
            else:
                raise UndecidableComparison(
                    f"pop of {remaining} vs block {rem} undecided on {self.ival}"
                )


def sym_take(morphism: SymbolicMorphism, length: LinearForm, ival: RationalInterval,
             env: Optional[ParamEnv] = None) -> SymbolicWord:
    """Prefix of phi(n_0) phi(n_1)... of the given symbolic length."""
    return Queue(morphism, ival, env).take(length)
