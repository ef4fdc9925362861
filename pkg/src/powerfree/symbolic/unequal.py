"""Refuting equality of symbolic words.

Equality of two run-length words with symbolic exponents is never
decided, only refuted; an exhausted battery returns False ("unknown").
The criteria, in order: strip forced-equal ends and recurse; unequal
head letters; the prefix/suffix shape c^{l0} c2... vs c^{l1} c3... with
provably different run lengths; delete explicit zeros and compare the
nonzero subsequences, falling back to the zero-run-length equation
system having no solution on the interval.

Comparisons that change sign inside the interval are collected into the
caller's `splits` list rather than deciding anything: the caller may
split the interval there and retry.
"""

from __future__ import annotations

from .forms import LinearForm, SplitRequest, compare, is_positive, never_zero
from .swords import SymbolicWord, is_sym

ZERO = LinearForm.const(0)


def _sat(c1, c2, d: int) -> bool:
    """Can the two letters take a common value (independent unknowns)?"""
    if is_sym(c1) and is_sym(c2):
        return True
    if is_sym(c1):
        return c2 >= d
    if is_sym(c2):
        return c1 >= d
    return c1 == c2


def _forced(c1, c2) -> bool:
    return not is_sym(c1) and not is_sym(c2) and c1 == c2


def _cmp(e1, e2, ival, env, splits):
    try:
        return compare(e1, e2, ival, env)
    except SplitRequest as req:
        if splits is not None:
            splits.append(req.point)
        return "unknown"


def _pos(e, ival, env, splits):
    try:
        return is_positive(e, ival, env)
    except SplitRequest as req:
        if splits is not None:
            splits.append(req.point)
        return False


def _nz(e, ival, env, splits):
    try:
        return never_zero(e, ival, env)
    except SplitRequest as req:
        if splits is not None:
            splits.append(req.point)
        return False


def _strip(xb, zb, ival, env, splits):
    """Remove a maximal forced-equal common prefix, blockwise."""
    xb, zb = list(xb), list(zb)
    while xb and zb:
        (c1, e1), (c2, e2) = xb[0], zb[0]
        if not _forced(c1, c2):
            break
        rel = _cmp(e1, e2, ival, env, splits)
        if rel == "=":
            xb.pop(0)
            zb.pop(0)
        elif rel == "<":
            zb[0] = (c2, e2 - e1)
            xb.pop(0)
        elif rel == ">":
            xb[0] = (c1, e1 - e2)
            zb.pop(0)
        else:
            break
    return xb, zb


def _shape_criterion(xb, zb, d, ival, env, splits) -> bool:
    """c^{l0} c2 ... vs c^{l1} c3 ...: distinct run lengths of a shared head."""
    if not xb or not zb:
        return False
    (c1, l0), (c2, l1) = xb[0], zb[0]
    if not _forced(c1, c2):
        return False
    if not _nz(l0 - l1, ival, env, splits):
        return False
    for rest in (xb, zb):
        if len(rest) >= 2:
            nxt_letter, nxt_exp = rest[1]
            if _sat(nxt_letter, c1, d) or not _pos(nxt_exp, ival, env, splits):
                return False
    return True


def _delete_zeros(blocks, d):
    """(nonzero letter list, zero-run LinearForms around them), or None.

    Requires every kept letter to be provably nonzero (explicit positive,
    or an image-final unknown with d >= 1) and the nonzero runs to have
    constant exponents.
    """
    letters = []
    runs = [ZERO]
    for letter, e in blocks:
        if not is_sym(letter) and letter == 0:
            runs[-1] = runs[-1] + e
            continue
        if is_sym(letter) and d < 1:
            return None
        if not e.is_const():
            return None
        for _ in range(e.gamma):
            letters.append(letter)
            runs.append(ZERO)
    return letters, runs


def sym_unequal(x: SymbolicWord, z: SymbolicWord, ival, env, d: int, splits=None) -> bool:
    """True when x != z is proved for every parameter value; else False."""
    xb = x.normalized(ival, env).blocks
    zb = z.normalized(ival, env).blocks

    xb, zb = _strip(xb, zb, ival, env, splits)
    rx, rz = _strip(list(reversed(xb)), list(reversed(zb)), ival, env, splits)
    xb, zb = list(reversed(rx)), list(reversed(rz))

    if not xb and not zb:
        return False  # equality is possible (in fact syntactic)

    if xb and zb:
        (c1, e1), (c2, e2) = xb[0], zb[0]
        if not _sat(c1, c2, d) and _pos(e1, ival, env, splits) and _pos(e2, ival, env, splits):
            return True
        (c1, e1), (c2, e2) = xb[-1], zb[-1]
        if not _sat(c1, c2, d) and _pos(e1, ival, env, splits) and _pos(e2, ival, env, splits):
            return True

    if _shape_criterion(xb, zb, d, ival, env, splits):
        return True
    if _shape_criterion(list(reversed(xb)), list(reversed(zb)), d, ival, env, splits):
        return True

    dx = _delete_zeros(xb, d)
    dz = _delete_zeros(zb, d)
    if dx is not None and dz is not None:
        lx, rx = dx
        lz, rz = dz
        if len(lx) != len(lz):
            return True
        if any(not _sat(a_, b_, d) for a_, b_ in zip(lx, lz)):
            return True
        # the zero-run equation system: some equation has no solution
        for ex, ez in zip(rx, rz):
            if _nz(ex - ez, ival, env, splits):
                return True
    return False
