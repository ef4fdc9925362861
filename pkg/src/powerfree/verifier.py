"""Automatic a/b-power-freeness and leastness proofs for explicit morphisms.

The proof scheme for a k-uniform shift morphism and a rational a/b with
1 < a/b < 2:

1. compute the minimal length l such that every length-l factor of
   phi(n0) phi(n1) ... pins down its start position mod k (the morphism
   "locates words of length l");
2. powers (xy)^{a/b} = xyx with |x| >= l then force k | m and descend
   into the preimage, so only window lengths m*a with m <= m_max =
   ceil(l/(a-b)) - 1 need scanning;
3. scan those windows over the symbolic pattern, treating each
   image-final letter as an independent unknown n_i + d.

A transient prefix v adds a second stage: a uniqueness length l' for
factors starting inside v, and a window sweep over starts 0..|v|-1.
Lexicographic leastness is verified by decrement search: every nonzero
letter, lowered to any smaller value, must complete a power suffix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .morphisms import ExplicitMorphism
from .words import Fraction, tau

SYM = -1  # image-final slot: stands for n + d with n a fresh unknown


class NoLocatingLength(RuntimeError):
    """Refinement stalled: some factor recurs at two residues forever."""

    def __init__(self, msg, colliding=None):
        super().__init__(msg)
        self.colliding = colliding


class HypothesisViolation(RuntimeError):
    """A precondition of the proof scheme fails for this morphism."""


class NoUniqueFactor(RuntimeError):
    """No factor starting at this transient position ever becomes unique."""

    def __init__(self, position):
        super().__init__(f"no uniquely-occurring factor starts at position {position}")
        self.position = position


@dataclass
class ProofReport:
    fraction: str
    kind: str  # freeness / transient-freeness / leastness
    k: int
    d: int
    status: str = "inconclusive"  # proved / refuted / inconclusive
    locating_length: Optional[int] = None
    m_max: Optional[int] = None
    short_words_check: Optional[bool] = None
    swept_m: int = 0
    violations: list = field(default_factory=list)
    transient_unique_length: Optional[int] = None
    anchor_hints: list = field(default_factory=list)
    leastness_witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    FIELD_ORDER = [
        "fraction", "kind", "k", "d", "status", "locating_length", "m_max",
        "short_words_check", "swept_m", "violations", "transient_unique_length",
        "anchor_hints", "leastness_witnesses", "notes",
    ]

    def to_json(self) -> str:
        obj = {}
        for name in self.FIELD_ORDER:
            value = getattr(self, name)
            if name == "leastness_witnesses":
                value = {str(k): v for k, v in value.items()}
            obj[name] = value
        return json.dumps(obj, indent=1)

    @property
    def exit_code(self) -> int:
        return {"proved": 0, "refuted": 1, "inconclusive": 2}[self.status]


# ---------------------------------------------------------------------------
# pattern utilities


def _attainable_table(m: ExplicitMorphism, size: int) -> np.ndarray:
    att = np.zeros(size, dtype=bool)
    for e in range(size):
        att[e] = m.final_attainable(e)
    return att


def _pattern(m: ExplicitMorphism, length: int) -> np.ndarray:
    """phi(n0) phi(n1) ... as codes: explicit letters, SYM at finals."""
    reps = length // m.k + 2
    block = np.empty(m.k, dtype=np.int64)
    block[: m.k - 1] = tau(m.u)
    block[m.k - 1] = SYM
    return np.tile(block, reps)[:length]


def _compat_vec(A: np.ndarray, B: np.ndarray, att: np.ndarray) -> np.ndarray:
    """Pointwise satisfiable-equality of two code arrays."""
    both = (A >= 0) & (B >= 0)
    out = np.empty(len(A), dtype=bool)
    out[both] = A[both] == B[both]
    mixed = ~both
    mx = np.maximum(A[mixed], B[mixed])  # the explicit letter, or -1 for sym/sym
    out[mixed] = np.where(mx < 0, True, att[np.minimum(mx, len(att) - 1)] & (mx < len(att)))
    return out


# ---------------------------------------------------------------------------
# locating length by position-set refinement


def _refine(streams, n_tokens, att, keep_mask=None, stall_check=None, max_steps=10**7):
    """Generic refinement: split token groups by successive letters.

    streams(tokens, step) yields the code of each token's next letter.
    Groups whose tokens are pairwise-compatible are kept; a group splits
    by explicit letter value, with the step's sym tokens joining every
    subgroup whose letter is an attainable image-final value.  Returns
    (step, certificate) where step is the first length at which no two
    tokens remain compatible and certificate is a surviving group at the
    previous length.
    """
    groups = [np.arange(n_tokens, dtype=np.int64)]
    cert = None
    step = 0
    while groups:
        step += 1
        if step > max_steps:
            raise NoLocatingLength(
                f"refinement did not terminate within {max_steps} steps",
                colliding=[g.tolist()[:8] for g in groups[:4]],
            )
        cert = [g.copy() for g in groups[:4]]
        nxt = []
        seen = set()
        for g in groups:
            codes = streams(g, step)
            symmask = codes == SYM
            syms = g[symmask]
            exp = g[~symmask]
            expcodes = codes[~symmask]
            subs = []
            if len(exp):
                order = np.argsort(expcodes, kind="stable")
                exp = exp[order]
                expcodes = expcodes[order]
                cuts = np.nonzero(np.diff(expcodes))[0] + 1
                pieces = np.split(exp, cuts)
                values = expcodes[np.concatenate([[0], cuts])] if len(exp) else []
                for piece, val in zip(pieces, values):
                    if len(syms) and val < len(att) and att[val]:
                        piece = np.concatenate([piece, syms])
                    subs.append(piece)
            if len(syms) >= 2 or (len(syms) and not subs):
                subs.append(syms)
            for sub in subs:
                if len(sub) < 2:
                    continue
                if keep_mask is not None and not keep_mask(sub):
                    continue
                key = sub.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(np.sort(sub))
        if stall_check is not None:
            for g in nxt:
                stall_check(g, step)
        groups = nxt
    return step, cert


def locating_length_explicit(m: ExplicitMorphism, max_steps: Optional[int] = None):
    """Minimal l such that the morphism locates words of length l.

    Returns (l, certificate); the certificate is a set of positions whose
    length-(l-1) factors still coincide, witnessing minimality.
    """
    k = m.k
    pat = _pattern(m, 2 * k)
    maxval = int(max(tau(m.u).max(initial=0), m.d, max(m.shift_exceptions.values(), default=0))) + 2
    att = _attainable_table(m, maxval + 1)
    if max_steps is None:
        max_steps = 2 * k + 64

    def streams(tokens, step):
        return pat[(tokens + step - 1) % k]

    step, cert = _refine(streams, k, att, max_steps=max_steps)
    return step, [c.tolist() for c in (cert or [])]


# ---------------------------------------------------------------------------
# window scans


def window_scan(m: ExplicitMorphism, f: Fraction, m_rep: int):
    """First window of length m_rep*a in phi(n0) phi(n1)... that can be a power.

    Slides over one period of start positions; returns (start, m_rep) for
    the first start where the power condition is satisfiable for some
    assignment of the image-final unknowns, or None.
    """
    a, b, k = f.a, f.b, m.k
    s = m_rep * b
    need = m_rep * (a - b)
    length = k + m_rep * a + s
    W = _pattern(m, length)
    maxval = int(max(tau(m.u).max(initial=0), m.d, max(m.shift_exceptions.values(), default=0))) + 2
    att = _attainable_table(m, maxval + 1)
    C = _compat_vec(W[s:], W[:-s], att)  # C[j-s]: pair (j, j-s)
    bad = np.cumsum(~C)
    # window at start p: pairs j in [p+s, p+m*a) -> C indices [p, p+need)
    for p in range(k):
        if bad[p + need - 1] - (bad[p - 1] if p else 0) == 0:
            return (p, m_rep)
    return None


def _short_words_ok(m_max: int, a: int, k: int) -> bool:
    return -((-(m_max * a - 1)) // k) + 1 <= a - 1


def verify_free_explicit(m: ExplicitMorphism, f: Fraction, progress=None) -> ProofReport:
    """Full freeness proof for the restriction of the morphism to ZZ>=0."""
    a, b = f.a, f.b
    rep = ProofReport(fraction=str(f), kind="freeness", k=m.k, d=m.d)
    if np.gcd(b, m.k) != 1:
        raise HypothesisViolation(f"gcd(b, k) = gcd({b}, {m.k}) != 1")
    if a >= 2 * b:
        return _verify_free_integerlike(m, f, rep)

    checks = {c["check"]: c for c in m.validate()}
    for name in ("image-not-a-power", "one-position-difference", "prolongable"):
        if not checks[name]["passed"]:
            raise HypothesisViolation(f"{name}: {checks[name]['detail']}")

    try:
        ell, cert = locating_length_explicit(m)
    except NoLocatingLength as exc:
        rep.status = "inconclusive"
        rep.notes.append(f"no locating length: {exc}")
        return rep
    rep.locating_length = ell
    rep.m_max = -((-ell) // (a - b)) - 1
    rep.short_words_check = _short_words_ok(rep.m_max, a, m.k)
    if not rep.short_words_check:
        rep.status = "inconclusive"
        rep.notes.append("short-words inequality fails; preimages may contain powers")
        return rep
    for m_rep in range(1, rep.m_max + 1):
        hit = window_scan(m, f, m_rep)
        rep.swept_m = m_rep
        if hit is not None:
            rep.status = "refuted"
            rep.violations.append({"start": hit[0], "m": hit[1], "length": hit[1] * a})
            return rep
        if progress:
            progress(m_rep, rep.m_max)
    rep.status = "proved"
    return rep


def _verify_free_integerlike(m: ExplicitMorphism, f: Fraction, rep: ProofReport) -> ProofReport:
    """a/b >= 2: the zero-spacing divisibility argument for u = 0^(k-1).

    Nonzero letters sit exactly at positions k-1 mod k, so a power's
    repetition unit has length divisible by k and deleting the zeros maps
    it to a shorter power in the preimage; only unit lengths below k need
    scanning, and those are covered by the m = 1 window sweep.
    """
    a = f.a
    if not np.all(tau(m.u) == 0) or m.k != a or m.shift_exceptions:
        rep.status = "inconclusive"
        rep.notes.append("a/b >= 2 path requires the morphism 0^(a-1)(n+d)")
        return rep
    rep.locating_length = m.k
    rep.m_max = 1
    rep.short_words_check = True
    hit = window_scan(m, f, 1)
    rep.swept_m = 1
    if hit is not None:
        rep.status = "refuted"
        rep.violations.append({"start": hit[0], "m": 1, "length": a})
        return rep
    rep.notes.append("m >= 2 discharged by the zero-spacing divisibility reduction")
    rep.status = "proved"
    return rep


# ---------------------------------------------------------------------------
# transient verification


def _transient_cfg(m: ExplicitMorphism):
    if m.transient is None:
        raise ValueError("morphism has no transient")
    v = tau(m.transient).astype(np.int64)
    k = m.k
    pat = np.empty(k, dtype=np.int64)
    pat[: k - 1] = tau(m.u)
    pat[k - 1] = SYM
    maxval = int(
        max(
            tau(m.u).max(initial=0),
            v.max(initial=0),
            m.d,
            max(m.shift_exceptions.values(), default=0),
        )
    ) + 2
    att = _attainable_table(m, maxval + 1)
    return v, pat, att


def transient_unique_length(m: ExplicitMorphism, skip_positions=()):
    """Minimal l' such that length-l' factors at transient positions are unique.

    Tokens are the concrete positions 0..|v|-1 plus one generic residue
    block standing for all later positions; a factor is unique once its
    token separates from every other token.  Raises NoUniqueFactor when a
    transient position can never separate (its tail agrees with a
    generic residue forever), unless that position is in skip_positions.
    """
    v, pat, att = _transient_cfg(m)
    nv, k = len(v), m.k
    skip = set(skip_positions)
    tokens_all = [i for i in range(nv) if i not in skip] + list(range(nv, nv + k))
    remap = np.full(nv + k, -1, dtype=np.int64)
    for idx, t in enumerate(tokens_all):
        remap[t] = idx
    ids = np.asarray(tokens_all, dtype=np.int64)

    def streams(tokens, step):
        t = ids[tokens]
        posn = np.where(t < nv, t + step - 1, 0)
        phase = np.where(t < nv, (t + step - 1 - nv) % k, (t - nv + step - 1) % k)
        out = np.where(
            (t < nv) & (posn < nv),
            v[np.minimum(posn, nv - 1)],
            pat[phase],
        )
        return out

    def keep_mask(sub):
        return bool((ids[sub] < nv).any())

    def stall_check(sub, step):
        t = ids[sub]
        pos_now = np.where(t < nv, t + step - 1, nv + step - 1)
        if (pos_now >= nv).all():
            phases = np.where(t < nv, (t + step - 1 - nv) % k, (t - nv + step - 1) % k)
            if len(np.unique(phases)) == 1:
                raise NoUniqueFactor(int(t[t < nv].min()))

    cap = nv + 16 * k + 8192
    step, cert = _refine(
        streams, len(tokens_all), att, keep_mask=keep_mask, stall_check=stall_check,
        max_steps=cap,
    )
    return step, [[int(ids[t]) for t in c] for c in (cert or [])]


def check_anchor(m: ExplicitMorphism, position: int, length: int, scan_length: int = 10**6) -> bool:
    """Machine-check a uniqueness hint against a long expansion."""
    w = m.expand_fixed_point(max(scan_length, position + 3 * length)).letters
    anchor = w[position : position + length]
    target = anchor.tobytes()
    hay = w.tobytes()
    first = hay.find(target)
    stride = w.itemsize
    if first != position * stride or first % stride:
        return False
    return hay.find(target, first + stride) == -1


def transient_window_scan(m: ExplicitMorphism, f: Fraction, m_rep: int, skip_positions=()):
    """Scan windows of length m_rep*a starting at positions 0..|v|-1."""
    a, b = f.a, f.b
    v, pat, att = _transient_cfg(m)
    nv, k = len(v), m.k
    s = m_rep * b
    need = m_rep * (a - b)
    total = nv + m_rep * a + k
    W = np.empty(total, dtype=np.int64)
    W[:nv] = v
    reps = (total - nv) // k + 1
    W[nv:] = np.tile(pat, reps)[: total - nv]
    C = _compat_vec(W[s:], W[:-s], att)
    bad = np.cumsum(~C)
    skip = set(skip_positions)
    for p in range(nv):
        if p in skip:
            continue
        if bad[p + need - 1] - (bad[p - 1] if p else 0) == 0:
            return (p, m_rep)
    return None


def verify_transient_free(
    m: ExplicitMorphism,
    f: Fraction,
    anchors=(),
    m_cap: Optional[int] = None,
    base_report: Optional[ProofReport] = None,
    progress=None,
) -> ProofReport:
    """Freeness of tau(phi^inf(0')) given that the plain part is free.

    anchors: (position, factor_length) uniqueness hints; each is checked
    against a long expansion, and hinted positions are excluded from the
    refinement and the sweep.
    """
    a = f.a
    rep = ProofReport(fraction=str(f), kind="transient-freeness", k=m.k, d=m.d)
    base = base_report if base_report is not None else verify_free_explicit(m, f)
    if base.status != "proved":
        rep.status = base.status
        rep.notes.append("plain restriction not proved free")
        return rep
    rep.locating_length = base.locating_length
    rep.short_words_check = base.short_words_check

    skip = []
    for position, length in anchors:
        ok = check_anchor(m, position, length)
        rep.anchor_hints.append({"position": position, "length": length, "checked": bool(ok)})
        if not ok:
            rep.status = "inconclusive"
            rep.notes.append(f"anchor hint at {position} failed its uniqueness check")
            return rep
        skip.append(position)

    try:
        ell2, _ = transient_unique_length(m, skip_positions=skip)
    except NoUniqueFactor as exc:
        rep.status = "inconclusive"
        rep.notes.append(str(exc) + "; supply an anchor hint for this position")
        return rep
    if skip:
        ell2 = max(ell2, max(length for _, length in anchors))
    rep.transient_unique_length = ell2
    m_max = -((-ell2) // (a - f.b)) - 1
    rep.m_max = m_max
    sweep_to = m_max if m_cap is None else min(m_cap, m_max)
    for m_rep in range(1, sweep_to + 1):
        hit = transient_window_scan(m, f, m_rep, skip_positions=skip)
        rep.swept_m = m_rep
        if hit is not None:
            rep.status = "refuted"
            rep.violations.append({"start": hit[0], "m": hit[1], "length": hit[1] * a})
            return rep
        if progress:
            progress(m_rep, sweep_to)
    rep.status = "proved" if sweep_to == m_max else "inconclusive"
    if sweep_to != m_max:
        rep.notes.append(f"window sweep capped at m = {sweep_to} of {m_max}")
    return rep


# ---------------------------------------------------------------------------
# lexicographic leastness


def _concrete_power_suffix(arr, a, b, p, c, cap):
    """Smallest m <= cap completing a power of length m*a ending at p with letter c."""
    top = min(cap, (p + 1) // a)
    if top < 1:
        return None
    ms = np.arange(1, top + 1)
    cands = ms[arr[p - ms * b] == c]
    for m_rep in cands:
        m_rep = int(m_rep)
        s = m_rep * b
        need = m_rep * (a - b)
        if need == 1 or np.array_equal(arr[p - need + 1 : p], arr[p - need + 1 - s : p - s]):
            return m_rep
    return None


def default_cap(ell: int, a: int, b: int) -> int:
    return max(256, 2 * (-((-ell) // (a - b))))


def verify_lex_least(m: ExplicitMorphism, f: Fraction, cap: Optional[int] = None) -> ProofReport:
    """Decrement search: every nonzero letter, lowered, completes a power.

    Image positions are handled per residue class with a for-all-contexts
    witness (no image-final unknown may be compared); occurrences too
    close to the word start or the transient are replayed concretely.
    The image-final letter lowered to an attainable value reduces to an
    earlier decrement and is discharged inductively.
    """
    a, b, k = f.a, f.b, m.k
    rep = ProofReport(fraction=str(f), kind="leastness", k=k, d=m.d)
    if m.primed_overrides:
        rep.status = "inconclusive"
        rep.notes.append("leastness search does not handle primed overrides")
        return rep
    ell_hint = k
    if cap is None:
        cap = default_cap(ell_hint, a, b)
    nv = len(m.transient) if m.transient is not None else 0
    boundary_images = -((-(cap * a)) // k) + 1
    need_len = nv + (boundary_images + 2) * k + cap * a
    arr = m.expand_fixed_point(need_len).letters.astype(np.int64)

    witnesses = {}
    unresolved = []

    # concrete positions: the transient, plus every occurrence whose
    # witness window could reach outside the periodic pattern
    concrete_limit = nv + boundary_images * k
    for p in range(concrete_limit):
        letter = int(arr[p])
        for c in range(letter):
            w = _concrete_power_suffix(arr, a, b, p, c, cap)
            if w is None:
                unresolved.append((f"pos{p}", c))
            else:
                witnesses[(f"pos{p}", c)] = w

    # generic image classes
    u = tau(m.u).astype(np.int64)
    maxm = cap
    ctx = maxm * a + k + 1
    u_ext = np.concatenate([u, [SYM]])
    qs = np.arange(ctx)
    for r in range(k - 1):
        letter = int(u[r])
        if letter == 0:
            continue
        # indices aligned so P[ctx-1] is the class position (image offset r)
        P = u_ext[(r + (qs - (ctx - 1))) % k].copy()
        for c in range(letter):
            P[ctx - 1] = c
            found = None
            for m_rep in range(1, maxm + 1):
                s = m_rep * b
                need = m_rep * (a - b)
                A = P[ctx - need : ctx]
                B = P[ctx - need - s : ctx - s]
                if ((A >= 0) & (B >= 0) & (A == B)).all():
                    found = m_rep
                    break
            if found is None:
                unresolved.append((f"class{r}", c))
            else:
                witnesses[(f"class{r}", c)] = found

    # the image-final class: targets beyond this bound are always attainable
    bound = max(
        m.d,
        max(m.shift_exceptions.values(), default=0),
        max((n + m.d for n in m.shift_exceptions), default=0),
    )
    final_targets = list(range(bound + 1))
    P = u_ext[(k - 1 + (qs - (ctx - 1))) % k].copy()
    for c in final_targets:
        if m.final_attainable(c):
            src = [n for n in m.shift_exceptions if m.shift_exceptions[n] == c]
            n0 = src[0] if src else c - m.d
            witnesses[("final", c)] = f"inductive: reduces to decrementing n to {n0}"
            continue
        P[ctx - 1] = c
        found = None
        for m_rep in range(1, maxm + 1):
            s = m_rep * b
            need = m_rep * (a - b)
            A = P[ctx - need : ctx]
            B = P[ctx - need - s : ctx - s]
            if ((A >= 0) & (B >= 0) & (A == B)).all():
                found = m_rep
                break
        if found is None:
            unresolved.append(("final", c))
        else:
            witnesses[("final", c)] = found

    rep.leastness_witnesses = witnesses
    if unresolved:
        rep.status = "inconclusive"
        rep.notes.append(f"cap {cap} exceeded for {len(unresolved)} class targets: "
                         f"{unresolved[:6]}")
    else:
        rep.status = "proved"
    numeric = [w for w in witnesses.values() if isinstance(w, int)]
    if numeric:
        rep.notes.append(f"max witness m = {max(numeric)}")
    rep.swept_m = cap
    return rep
