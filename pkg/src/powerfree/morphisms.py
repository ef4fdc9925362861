"""Uniform shift morphisms phi(n) = u (n + d) and their fixed points.

The plain form maps every natural number n to the word u followed by
n + d.  Three optional extensions cover everything encountered in
practice:

- shift exceptions: finitely many letters get a different image-final
  letter (phi(0) = u 1, phi(n) = u (n+2) for n >= 1);
- a transient prefix v starting with 0', with phi(0') = v phi(0);
- full primed overrides, where phi(0') and/or phi(1') are arbitrary
  length-k words.

Fixed points are expanded by streaming: the output buffer is its own
work queue, so memory stays O(output length) even for k ~ 50000.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .words import PRIME0, PRIME1, Word, tau


class NotProlongable(ValueError):
    """The morphism has no fixed point starting at its start letter."""


class UnknownLetter(KeyError):
    """A letter with no image under the morphism."""


def _letters_key(v: int) -> str:
    return {PRIME0: "0'", PRIME1: "1'"}.get(v, str(v))


def _parse_letter(tok) -> int:
    if tok == "0'":
        return PRIME0
    if tok == "1'":
        return PRIME1
    return int(tok)


def rle_encode(arr) -> list:
    out = []
    for v in np.asarray(arr, dtype=np.int32):
        v = int(v)
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [[_letters_key(v) if v < 0 else v, c] for v, c in out]


def rle_decode(data) -> np.ndarray:
    if data is None:
        return np.empty(0, dtype=np.int32)
    out = []
    for item in data:
        if isinstance(item, list):
            letter, count = item
            out.extend([_parse_letter(letter)] * int(count))
        else:
            out.append(_parse_letter(item))
    return np.asarray(out, dtype=np.int32)


@dataclass
class ExplicitMorphism:
    """k-uniform morphism on ZZ>=0, with optional transient and primes."""

    k: int
    u: np.ndarray
    d: int = 0
    shift_exceptions: dict[int, int] = field(default_factory=dict)
    transient: Optional[np.ndarray] = None
    primed_overrides: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.int32)
        if len(self.u) != self.k - 1:
            raise ValueError(f"|u| = {len(self.u)} but k - 1 = {self.k - 1}")
        if self.transient is not None:
            self.transient = np.asarray(self.transient, dtype=np.int32)
            if len(self.transient) == 0 or self.transient[0] != PRIME0:
                raise ValueError("a transient must begin with 0'")
            if np.count_nonzero(self.transient == PRIME0) != 1:
                raise ValueError("0' may occur only at the start of the transient")
        for letter, img in self.primed_overrides.items():
            self.primed_overrides[letter] = np.asarray(img, dtype=np.int32)
            if len(self.primed_overrides[letter]) != self.k:
                raise ValueError("primed override images must have length k")

    # -- structure ---------------------------------------------------------

    @property
    def start(self) -> int:
        if self.transient is not None or PRIME0 in self.primed_overrides:
            return PRIME0
        return 0

    def final_letter(self, n: int) -> int:
        """Image-final letter of phi(n) for plain n >= 0."""
        return self.shift_exceptions.get(n, n + self.d)

    def final_attainable(self, e: int) -> bool:
        """Whether e occurs as the image-final letter of some phi(n)."""
        if e in self.shift_exceptions.values():
            return True
        n = e - self.d
        return n >= 0 and n not in self.shift_exceptions

    def image(self, letter: int) -> np.ndarray:
        if letter >= 0:
            return np.concatenate([self.u, [self.final_letter(letter)]]).astype(np.int32)
        if letter in self.primed_overrides:
            return self.primed_overrides[letter]
        if letter == PRIME0 and self.transient is not None:
            return np.concatenate([self.transient, self.image(0)]).astype(np.int32)
        raise UnknownLetter(_letters_key(letter))

    def alphabet_note(self) -> str:
        return f"{self.k}-uniform, d={self.d}" + (
            f", |v|={len(self.transient)}" if self.transient is not None else ""
        )

    # -- operations --------------------------------------------------------

    def apply(self, w) -> Word:
        """Concatenation of images (uncoded)."""
        letters = w.letters if isinstance(w, Word) else np.asarray(w, dtype=np.int32)
        if len(letters) == 0:
            return Word([])
        return Word(np.concatenate([self.image(int(v)) for v in letters]))

    def expand_fixed_point(self, n: int, coded: bool = True) -> Word:
        """Length-n prefix of tau(phi^inf(start)) by streaming expansion."""
        if n <= 0:
            return Word([])
        start = self.start
        seed = self.image(start)
        if len(seed) == 0 or seed[0] != start:
            raise NotProlongable(
                f"phi({_letters_key(start)}) does not begin with {_letters_key(start)}"
            )
        out = np.empty(max(n + len(seed) + self.k, 2 * self.k), dtype=np.int32)
        wp = min(len(seed), n + self.k)
        out[:wp] = seed[:wp]
        rp = 1
        while wp < n:
            if rp >= wp:  # pragma: no cover - cannot happen for k >= 2
                raise NotProlongable("expansion stalled")
            letter = int(out[rp])
            rp += 1
            if letter >= 0:
                if wp + self.k > len(out):
                    out = np.concatenate([out, np.empty(len(out), dtype=np.int32)])
                out[wp : wp + self.k - 1] = self.u
                out[wp + self.k - 1] = self.final_letter(letter)
                wp += self.k
            else:
                img = self.image(letter)
                if wp + len(img) > len(out):
                    out = np.concatenate(
                        [out, np.empty(max(len(out), len(img)), dtype=np.int32)]
                    )
                out[wp : wp + len(img)] = img
                wp += len(img)
        res = out[:n]
        return Word(tau(res)) if coded else Word(res.copy())

    def letter_at(self, i: int) -> int:
        """Letter i of the coded fixed point, via the base-k recurrence.

        Peels base-k digits of the (transient-adjusted) position: interior
        digits read off u directly, and each final digit costs one
        application of the image-final map.  Falls back to bounded
        expansion when primed overrides break the plain recurrence.
        """
        if self.primed_overrides:
            return self.expand_fixed_point(i + 1)[i]
        off = len(self.transient) if self.transient is not None else 0
        shifts = 0
        while True:
            if i < off:
                base = int(tau(self.transient[i : i + 1])[0])
                break
            q = i - off
            r = q % self.k
            if r < self.k - 1:
                base = int(self.u[r])
                break
            i = q // self.k
            shifts += 1
        for _ in range(shifts):
            base = self.final_letter(base)
        return base

    # -- validation --------------------------------------------------------

    def validate(self) -> list[dict]:
        """Checks used as hypotheses by the freeness machinery."""
        results = []
        uniform = all(len(self.primed_overrides[p]) == self.k for p in self.primed_overrides)
        results.append({"check": "uniform", "passed": bool(uniform), "detail": f"k={self.k}"})

        try:
            seed = self.image(self.start)
            prolong = len(seed) > 0 and seed[0] == self.start
        except UnknownLetter:
            prolong = False
        results.append({"check": "prolongable", "passed": bool(prolong), "detail": ""})

        # is u (n + d) an alpha-power for some alpha >= 2 and some n?
        power_witness = None
        for period in range(1, self.k):
            if self.k % period != 0:
                continue
            w = list(self.u)
            if not all(w[i] == w[i + period] for i in range(self.k - 1 - period)):
                continue
            e = int(w[self.k - 1 - period])
            if self.final_attainable(e):
                ns = [n for n, x in self.shift_exceptions.items() if x == e]
                if e - self.d >= 0 and (e - self.d) not in self.shift_exceptions:
                    n = e - self.d
                else:
                    n = min(ns)
                power_witness = (self.k // period, n)
                break
        results.append(
            {
                "check": "image-not-a-power",
                "passed": power_witness is None,
                "detail": "" if power_witness is None
                else f"phi({power_witness[1]}) is a {power_witness[0]}-power",
            }
        )

        # images pairwise differ in at most one position
        images = [np.concatenate([self.u, [0]])]  # plain images share everything but the end
        for p in self.primed_overrides.values():
            images.append(p)
        max_diff = 0
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                diff = int(np.count_nonzero(images[i][:-1] != images[j][:-1]))
                max_diff = max(max_diff, diff)
        results.append(
            {
                "check": "one-position-difference",
                "passed": max_diff == 0,
                "detail": f"interior positions differing: {max_diff}",
            }
        )
        return results

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "kind": "uniform-shift",
            "k": self.k,
            "u": rle_encode(self.u),
            "d": self.d,
            "shift_exceptions": sorted([[int(n), int(e)] for n, e in self.shift_exceptions.items()]),
            "transient": rle_encode(self.transient) if self.transient is not None else None,
            "primed_overrides": {
                _letters_key(p): rle_encode(img) for p, img in sorted(self.primed_overrides.items())
            }
            or None,
        }
        return json.dumps(obj, indent=1)

    @staticmethod
    def from_json(text: str) -> "ExplicitMorphism":
        obj = json.loads(text)
        if obj.get("kind") != "uniform-shift":
            raise ValueError(f"not a uniform-shift morphism file: kind={obj.get('kind')!r}")
        overrides = {}
        for key, img in (obj.get("primed_overrides") or {}).items():
            overrides[_parse_letter(key)] = rle_decode(img)
        return ExplicitMorphism(
            k=int(obj["k"]),
            u=rle_decode(obj["u"]),
            d=int(obj.get("d", 0)),
            shift_exceptions={int(n): int(e) for n, e in (obj.get("shift_exceptions") or [])},
            transient=rle_decode(obj["transient"]) if obj.get("transient") else None,
            primed_overrides=overrides,
        )


def load_morphism(path) -> ExplicitMorphism:
    with open(path) as fh:
        return ExplicitMorphism.from_json(fh.read())
