"""Numba kernel behind every saturated denumerant scan.

The ring buffer holds suffix sums S_i(b) = T_i(b) + ... + T_n(b) for the last
a_n + 1 right-hand sides, so T_i(b) = S_i(b - a_i) is a single lookup and the
total count of b is S_1(b).
"""

import numba
import numpy as np

INT64_SAFE = 2**62


@numba.njit(cache=True)
def scan_saturated(a, cap, ceiling):
    """Scan b = 0, 1, ... with counts saturated at ``cap``.

    Stops once ``a[0]`` consecutive right-hand sides all reach ``cap``.

    Returns (last_eq, last_lt, b_end, exceeded) where last_eq[v] is the
    largest b >= 1 whose count is exactly v (or -1), last_lt the largest b >= 0
    with count < cap (or -1), and b_end the last right-hand side computed.
    """
    n = a.shape[0]
    width = a[n - 1] + 1
    a1 = a[0]
    S = np.zeros((width, n + 1), dtype=np.int64)
    last_eq = np.full(cap, -1, dtype=np.int64)
    last_lt = -1
    run = 0
    # b = 0 has the single empty representation; its ring-buffer column stays 0
    if cap > 1:
        last_lt = 0
    else:
        run = 1
    b = 0
    if run >= a1:
        return last_eq, last_lt, b, False
    while True:
        b += 1
        if b > ceiling:
            return last_eq, last_lt, b, True
        row = b % width
        S[row, n] = 0
        for i in range(n - 1, -1, -1):
            ai = a[i]
            if b == ai:
                t = 1
            elif b < ai:
                t = 0
            else:
                t = S[(b - ai) % width, i]
            s = t + S[row, i + 1]
            if s > cap:
                s = cap
            S[row, i] = s
        c = S[row, 0]
        if c < cap:
            last_eq[c] = b
            last_lt = b
            run = 0
        else:
            run += 1
            if run >= a1:
                return last_eq, last_lt, b, False


@numba.njit(cache=True)
def counts_saturated(a, cap, b_max):
    """Saturated counts for b = 0..b_max as one array (a sorted ascending)."""
    n = a.shape[0]
    width = a[n - 1] + 1
    S = np.zeros((width, n + 1), dtype=np.int64)
    out = np.empty(b_max + 1, dtype=np.int64)
    out[0] = 1 if cap >= 1 else 0
    for b in range(1, b_max + 1):
        row = b % width
        S[row, n] = 0
        for i in range(n - 1, -1, -1):
            ai = a[i]
            if b == ai:
                t = 1
            elif b < ai:
                t = 0
            else:
                t = S[(b - ai) % width, i]
            s = t + S[row, i + 1]
            if s > cap:
                s = cap
            S[row, i] = s
        out[b] = S[row, 0]
    return out
