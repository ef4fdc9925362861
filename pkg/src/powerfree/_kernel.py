"""Greedy-generator kernel.

The generator appends, at each position p, the least letter c whose
arrival completes no forbidden power suffix.  A suffix with period s is
forbidden once the run of matches w[j] == w[j-s] ending at p reaches a
threshold K(s) (K = m(a-b) for the exact mode with s = m*b; the ceiling
or floor variant of s(a-b)/b for the >= and > modes).  So position p
forbids exactly the letters w[p-s] for those shifts s whose last K(s)-1
pairs already match ("critical" shifts).

Scanning every shift at every position is quadratic, so criticality is
tracked lazily: per shift we remember the latest known mismatch (ca_lo)
and how far pairs have been examined (ca_hi), and a bucket calendar
schedules each shift at the earliest position where it could possibly
become critical.  Pairs never change once written, mismatches only occur
at pairs involving a nonzero letter, and windows only move right, so
each shift re-scans only pairs it has never seen, skipping zero-zero
pairs via the list of nonzero positions.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency normally
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _upper_idx(arr, cnt, x):
    """Largest index i < cnt with arr[i] <= x, else -1."""
    lo, hi = 0, cnt
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


@njit(cache=True)
def _gen(a, b, mode, n, record):
    """Generate n letters; mode 0 = exact, 1 = at-least, 2 = greater.

    Returns (w, nz, nzc, wit_pos, wit_c, wit_shift, wc, ok).  Witness
    triples record every critical event: at position wit_pos the letter
    wit_c was forbidden by the shift wit_shift (for the exact mode the
    shift is reported as m = s/b).
    """
    w = np.zeros(n, dtype=np.int32)
    nz = np.empty(n + 1, dtype=np.int64)
    nzc = 0

    if mode == 0:
        tmax = n // a
    else:
        tmax = (n * b) // a + 2

    ca_lo = np.empty(tmax + 1, dtype=np.int64)
    ca_hi = np.empty(tmax + 1, dtype=np.int64)
    kk = np.empty(tmax + 1, dtype=np.int64)  # threshold K per shift index
    ss = np.empty(tmax + 1, dtype=np.int64)  # shift s per index
    cal_head = np.full(n + 1, -1, dtype=np.int64)
    cal_next = np.full(tmax + 1, -1, dtype=np.int64)

    for t in range(1, tmax + 1):
        if mode == 0:
            s = t * b
            k = t * (a - b)
        else:
            s = t
            if mode == 1:
                k = (t * (a - b) + b - 1) // b
            else:
                k = t * (a - b) // b + 1
        ss[t] = s
        kk[t] = k
        ca_lo[t] = s - 1
        ca_hi[t] = s - 1
        p0 = s + k - 1
        if p0 < n:
            cal_next[t] = cal_head[p0]
            cal_head[p0] = t

    capc = 4096
    crit_t = np.empty(capc, dtype=np.int64)
    crit_f = np.empty(capc, dtype=np.int64)

    wcap = 1024 if record else 1
    wit_pos = np.empty(wcap, dtype=np.int64)
    wit_c = np.empty(wcap, dtype=np.int64)
    wit_shift = np.empty(wcap, dtype=np.int64)
    wc = 0

    ok = True
    for p in range(n):
        ncrit = 0
        e = cal_head[p]
        cal_head[p] = -1
        while e != -1:
            nxt = cal_next[e]
            cal_next[e] = -1
            s = ss[e]
            k = kk[e]
            # scan new pairs (j, j-s) for ca_hi < j <= p-1, latest first,
            # visiting only pairs with a nonzero letter on either side
            lo = ca_hi[e] + 1
            hi = p - 1
            i1 = _upper_idx(nz, nzc, hi)
            i2 = _upper_idx(nz, nzc, hi - s)
            while True:
                c1 = nz[i1] if i1 >= 0 and nz[i1] >= lo else -1
                c2 = nz[i2] + s if i2 >= 0 and nz[i2] + s >= lo else -1
                j = c1 if c1 >= c2 else c2
                if j < 0:
                    break
                if c1 == j:
                    i1 -= 1
                if c2 == j:
                    i2 -= 1
                if w[j] != w[j - s]:
                    ca_lo[e] = j
                    break
            ca_hi[e] = hi
            if ca_lo[e] <= p - k:
                if ncrit >= capc:
                    ok = False
                    break
                crit_t[ncrit] = e
                crit_f[ncrit] = w[p - s]
                ncrit += 1
            else:
                np2 = ca_lo[e] + k
                if np2 < n:
                    cal_next[e] = cal_head[np2]
                    cal_head[np2] = e
            e = nxt
        if not ok:
            break

        # least letter not forbidden by any critical shift
        c = 0
        changed = True
        while changed:
            changed = False
            for i in range(ncrit):
                if crit_f[i] == c:
                    c += 1
                    changed = True
        w[p] = c
        if c != 0:
            nz[nzc] = p
            nzc += 1

        for i in range(ncrit):
            e = crit_t[i]
            ca_lo[e] = p
            ca_hi[e] = p
            np2 = p + kk[e]
            if np2 < n:
                cal_next[e] = cal_head[np2]
                cal_head[np2] = e
            if record:
                if wc >= wcap:
                    wcap *= 2
                    tmp = np.empty(wcap, dtype=np.int64)
                    tmp[:wc] = wit_pos[:wc]
                    wit_pos = tmp
                    tmp = np.empty(wcap, dtype=np.int64)
                    tmp[:wc] = wit_c[:wc]
                    wit_c = tmp
                    tmp = np.empty(wcap, dtype=np.int64)
                    tmp[:wc] = wit_shift[:wc]
                    wit_shift = tmp
                wit_pos[wc] = p
                wit_c[wc] = crit_f[i]
                wit_shift[wc] = e if mode != 0 else e  # index is m for exact
                wc += 1

    return w, nz, nzc, wit_pos, wit_c, wit_shift, wc, ok


_CACHE: dict = {}
_CACHE_BUDGET = 64  # number of cached prefixes before eviction


def generate(a: int, b: int, mode: int, n: int) -> np.ndarray:
    """Cached length-n prefix for (a, b, mode)."""
    key = (a, b, mode)
    cur = _CACHE.get(key)
    if cur is None or len(cur) < n:
        w, _, _, _, _, _, _, ok = _gen(a, b, mode, n, False)
        if not ok:  # pragma: no cover - capc overflow never observed
            raise RuntimeError("generator critical-set overflow")
        if len(_CACHE) >= _CACHE_BUDGET:
            _CACHE.clear()
        _CACHE[key] = w
        cur = w
    return cur[:n].copy()


def generate_with_blockers(a: int, b: int, n: int):
    """Exact-mode prefix plus, per position, the letters blocked there.

    Returns (w, blockers) where blockers is a list of (position, letter,
    m) triples: appending `letter` at `position` would have completed an
    a/b-power of length m*a.  The generator's choice at each position is
    the least letter not blocked, so these triples certify lexicographic
    leastness of the prefix itself.
    """
    w, _, _, wp, wcl, wsh, wc, ok = _gen(a, b, 0, n, True)
    if not ok:  # pragma: no cover
        raise RuntimeError("generator critical-set overflow")
    return w, [(int(wp[i]), int(wcl[i]), int(wsh[i])) for i in range(wc)]
