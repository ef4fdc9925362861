"""Exact linear forms in a, b and interval sign analysis.

A LinearForm is alpha*a + beta*b + gamma plus optional bounded integer
window parameters.  Signs over an interval of ratios a/b are decided
exactly, using three facts: at a single reduced ratio p/q the only
coprime pair is (a, b) = (p, q); on an interval avoiding the root of the
homogeneous part the quantity alpha*a + beta*b is a nonzero multiple of
gcd(alpha, beta); and any remaining small-|value| cases involve only
finitely many denominators, which are enumerated.

When a sign genuinely changes inside an interval, the analysis reports
the homogeneous root so the caller can split there; SplitRequest carries
that root through the table-building machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Frac
from math import ceil, floor, gcd
from typing import Optional

AB = ("a", "b")


class UndecidableComparison(RuntimeError):
    """No criterion settled the comparison on this interval."""


class SplitRequest(Exception):
    """A comparison changes sign inside the interval; split at .point."""

    def __init__(self, point: Frac):
        super().__init__(f"split at {point}")
        self.point = point


@dataclass(frozen=True)
class LinearForm:
    """alpha*a + beta*b + gamma (+ bounded extra parameters)."""

    alpha: int = 0
    beta: int = 0
    gamma: int = 0
    extra: tuple = ()  # sorted tuple of (name, coeff), coeff != 0

    @staticmethod
    def const(c: int) -> "LinearForm":
        return LinearForm(0, 0, c)

    @staticmethod
    def of(alpha: int, beta: int, gamma: int = 0) -> "LinearForm":
        return LinearForm(alpha, beta, gamma)

    @staticmethod
    def var(name: str, coeff: int = 1) -> "LinearForm":
        if name == "a":
            return LinearForm(coeff, 0, 0)
        if name == "b":
            return LinearForm(0, coeff, 0)
        return LinearForm(0, 0, 0, ((name, coeff),))

    def _extra_dict(self):
        return dict(self.extra)

    def __add__(self, other):
        if isinstance(other, int):
            other = LinearForm.const(other)
        ed = self._extra_dict()
        for name, c in other.extra:
            ed[name] = ed.get(name, 0) + c
        extra = tuple(sorted((n, c) for n, c in ed.items() if c))
        return LinearForm(
            self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma, extra
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = LinearForm.const(other)
        return self + (other * -1)

    def __mul__(self, c: int):
        return LinearForm(
            self.alpha * c,
            self.beta * c,
            self.gamma * c,
            tuple((n, k * c) for n, k in self.extra if k * c),
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def subst(self, name: str, value: "LinearForm") -> "LinearForm":
        ed = self._extra_dict()
        if name not in ed:
            return self
        c = ed.pop(name)
        base = LinearForm(self.alpha, self.beta, self.gamma, tuple(sorted(ed.items())))
        return base + value * c

    def eval(self, a: int, b: int, params: Optional[dict] = None) -> int:
        total = self.alpha * a + self.beta * b + self.gamma
        for name, c in self.extra:
            if params is None or name not in params:
                raise ValueError(f"unbound parameter {name}")
            total += c * params[name]
        return total

    def is_const(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and not self.extra

    def pure(self) -> bool:
        return not self.extra

    def __str__(self):
        parts = []
        for coeff, name in ((self.alpha, "a"), (self.beta, "b")):
            if coeff:
                parts.append(f"{'+' if coeff > 0 and parts else ''}{coeff if abs(coeff) != 1 else ('-' if coeff < 0 else '')}{name}")
        for name, coeff in self.extra:
            if coeff:
                parts.append(f"{'+' if coeff > 0 and parts else ''}{coeff if abs(coeff) != 1 else ('-' if coeff < 0 else '')}{name}")
        if self.gamma or not parts:
            parts.append(f"{'+' if self.gamma >= 0 and parts else ''}{self.gamma}")
        return "".join(parts)


ZERO = LinearForm.const(0)
ONE = LinearForm.const(1)


@dataclass(frozen=True)
class RationalInterval:
    """An interval of ratios a/b with exact rational endpoints."""

    lo: Frac
    hi: Frac
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self}")

    @staticmethod
    def open(lo, hi) -> "RationalInterval":
        return RationalInterval(Frac(lo), Frac(hi))

    @staticmethod
    def point(p) -> "RationalInterval":
        p = Frac(p)
        return RationalInterval(p, p, True, True)

    @staticmethod
    def parse(text: str) -> "RationalInterval":
        text = text.strip()
        lo_closed = text.startswith("[")
        hi_closed = text.endswith("]")
        body = text.lstrip("[(").rstrip(")]")
        lo, hi = body.split("..")
        return RationalInterval(Frac(lo), Frac(hi), lo_closed, hi_closed)

    def __str__(self):
        return (
            ("[" if self.lo_closed else "(")
            + f"{self.lo}..{self.hi}"
            + ("]" if self.hi_closed else ")")
        )

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, r: Frac) -> bool:
        if r == self.lo:
            return self.lo_closed
        if r == self.hi:
            return self.hi_closed
        return self.lo < r < self.hi

    def interior(self) -> "RationalInterval":
        return RationalInterval(self.lo, self.hi, False, False)

    def split_at(self, r: Frac):
        """Open-left, point, open-right; r must be strictly interior."""
        if not (self.lo < r < self.hi):
            raise ValueError(f"{r} is not interior to {self}")
        return (
            RationalInterval(self.lo, r, self.lo_closed, False),
            RationalInterval.point(r),
            RationalInterval(r, self.hi, False, self.hi_closed),
        )

    def sample(self) -> Frac:
        """An interior rational (the endpoint for point intervals)."""
        if self.is_point():
            return self.lo
        return (self.lo + self.hi) / 2

    def sample_pairs(self, count=3, coprime_to: int = 1):
        """Concrete coprime (a, b) pairs with a/b inside the interval."""
        out = []
        q = 2
        while len(out) < count and q < 10000:
            lo_p = floor(self.lo * q) + 1
            hi_p = ceil(self.hi * q) - 1
            for p in range(lo_p, hi_p + 1):
                r = Frac(p, q)
                if not self.contains(r):
                    continue
                if r.denominator == q and gcd(r.denominator, coprime_to) == 1:
                    pair = (r.numerator, r.denominator)
                    if pair not in out:
                        out.append(pair)
                if len(out) >= count:
                    break
            q += 1
        return out


class ParamEnv:
    """Declared ranges for window parameters: name -> (lo, hi) LinearForms."""

    def __init__(self, ranges: Optional[dict] = None):
        self.ranges = dict(ranges or {})

    def with_param(self, name: str, lo: LinearForm, hi: LinearForm) -> "ParamEnv":
        d = dict(self.ranges)
        d[name] = (lo, hi)
        return ParamEnv(d)

    def __contains__(self, name):
        return name in self.ranges

    def __repr__(self):
        return f"ParamEnv({self.ranges})"


# ---------------------------------------------------------------------------
# sign analysis

POS, NEG, ZER, NONNEG, NONPOS, MIXED = "pos", "neg", "zero", "nonneg", "nonpos", "mixed"


def _sign_at_point(f: LinearForm, r: Frac) -> str:
    value = f.alpha * r.numerator + f.beta * r.denominator + f.gamma
    return POS if value > 0 else NEG if value < 0 else ZER


def _combine(s1: str, s2: str) -> str:
    if s1 == s2:
        return s1
    pair = {s1, s2}
    if pair <= {POS, ZER, NONNEG}:
        return NONNEG
    if pair <= {NEG, ZER, NONPOS}:
        return NONPOS
    return MIXED


_SIGN_CACHE: dict = {}


def _sign_pure(f: LinearForm, ival: RationalInterval) -> str:
    key = (f, ival)
    hit = _SIGN_CACHE.get(key)
    if hit is None:
        try:
            hit = _sign_pure_raw(f, ival)
        except SplitRequest as req:
            _SIGN_CACHE[key] = ("split", req.point)
            raise
        if len(_SIGN_CACHE) > 1 << 20:
            _SIGN_CACHE.clear()
        _SIGN_CACHE[key] = hit
    elif isinstance(hit, tuple):
        raise SplitRequest(hit[1])
    return hit


def _sign_pure_raw(f: LinearForm, ival: RationalInterval) -> str:
    """Sign of a parameter-free form over all coprime (a,b) with a/b in ival.

    May raise SplitRequest when the homogeneous root is interior.
    """
    if ival.is_point():
        return _sign_at_point(f, ival.lo)
    al, be, ga = f.alpha, f.beta, f.gamma
    if al == 0 and be == 0:
        return POS if ga > 0 else NEG if ga < 0 else ZER

    # sign contributions of the closed endpoints, if any
    endpoint_signs = []
    if ival.lo_closed:
        endpoint_signs.append(_sign_at_point(f, ival.lo))
    if ival.hi_closed:
        endpoint_signs.append(_sign_at_point(f, ival.hi))

    root = None
    if al != 0:
        root = Frac(-be, al)
    if root is not None and ival.lo < root < ival.hi:
        raise SplitRequest(root)

    # homogeneous part u = alpha*a + beta*b has a fixed strict sign on the
    # open interior (the root is outside), and g | u
    mid = (ival.lo + ival.hi) / 2
    if mid == root:
        mid = (ival.lo + mid) / 2
    su = _sign_at_point(LinearForm(al, be, 0), mid)
    g = gcd(abs(al), abs(be))
    if su == POS:
        if ga >= 0:
            interior = POS
        elif g + ga > 0:
            interior = POS
        else:
            interior = _sign_by_enumeration(f, ival, root, su)
    elif su == NEG:
        if ga <= 0:
            interior = NEG
        elif -g + ga < 0:
            interior = NEG
        else:
            interior = _sign_by_enumeration(f, ival, root, su)
    else:  # pragma: no cover - root interior was already handled
        interior = MIXED

    for s in endpoint_signs:
        interior = _combine(interior, s)
    return interior


def _sign_by_enumeration(f: LinearForm, ival: RationalInterval, root, su: str) -> str:
    """|u| can undershoot |gamma| only at small b; enumerate those exactly."""
    al, be, ga = f.alpha, f.beta, f.gamma
    g = gcd(abs(al), abs(be))
    eps = min(
        abs(Frac(al) * ival.lo + be),
        abs(Frac(al) * ival.hi + be),
    )
    if eps == 0:
        # the root is an open endpoint: |u| >= g is all we know, for
        # arbitrarily large b, so only the gcd bound applies
        if su == POS:
            return POS if g + ga > 0 else NONNEG if g + ga == 0 else MIXED
        return NEG if -g + ga < 0 else NONPOS if -g + ga == 0 else MIXED
    bmax = int(abs(ga) / eps) + 1
    signs = {POS if su == POS else NEG}  # the asymptotic sign
    for b in range(1, bmax + 1):
        lo_a = floor(ival.lo * b)
        hi_a = ceil(ival.hi * b)
        for a in range(lo_a, hi_a + 1):
            r = Frac(a, b)
            if not ival.contains(r) or gcd(a, b) != 1:
                continue
            value = al * a + be * b + ga
            signs.add(POS if value > 0 else NEG if value < 0 else ZER)
    out = signs.pop()
    for s in signs:
        out = _combine(out, s)
    return out


def sign_of(f: LinearForm, ival: RationalInterval, env: Optional[ParamEnv] = None) -> str:
    """Exact sign classification; raises SplitRequest at interior roots."""
    if not f.extra:
        return _sign_pure(f, ival)
    if env is None:
        raise ValueError(f"form {f} has parameters but no environment")
    name, coeff = f.extra[0]
    if name not in env.ranges:
        raise ValueError(f"parameter {name} not declared")
    lo, hi = env.ranges[name]
    s_lo = sign_of(f.subst(name, lo), ival, env)
    s_hi = sign_of(f.subst(name, hi), ival, env)
    # f is affine (monotone) in the integer parameter, so the endpoint
    # signs bound all interior signs
    return _combine(s_lo, s_hi)


def never_zero(f: LinearForm, ival: RationalInterval, env: Optional[ParamEnv] = None) -> bool:
    """Provably nonzero for every point of the interval and parameter box."""
    coeffs = [f.alpha, f.beta] + [c for _, c in f.extra]
    g = gcd(*(abs(c) for c in coeffs)) if any(coeffs) else 0
    if g and f.gamma % g != 0:
        return True
    if g == 0:
        return f.gamma != 0
    try:
        return sign_of(f, ival, env) in (POS, NEG)
    except SplitRequest:
        return False


def is_nonneg(f, ival, env=None) -> bool:
    return sign_of(f, ival, env) in (POS, ZER, NONNEG)


def is_positive(f, ival, env=None) -> bool:
    return sign_of(f, ival, env) == POS


def compare(f: LinearForm, g: LinearForm, ival, env=None) -> str:
    """One of '<', '<=', '=', '>=', '>', or 'unknown' for f vs g."""
    s = sign_of(f - g, ival, env)
    return {POS: ">", NEG: "<", ZER: "=", NONNEG: ">=", NONPOS: "<=", MIXED: "unknown"}[s]


def form_min(forms, ival, env=None) -> LinearForm:
    """The pointwise-least form on the interval.

    Raises SplitRequest when the minimum switches inside, and
    UndecidableComparison when no form is provably least.
    """
    best = forms[0]
    for f in forms[1:]:
        rel = compare(f, best, ival, env)
        if rel in ("<", "<=", "="):
            best = f
        elif rel in (">", ">="):
            continue
        else:
            raise UndecidableComparison(f"min({f}, {best}) undecided on {ival}")
    return best
