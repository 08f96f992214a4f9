"""Compiled depth-first search core.

The search is iterative and resumable: all of its state lives in arrays
owned by the caller, so :func:`run_chunk` can be called repeatedly with a
node budget and the Python side checks the wall clock in between.
"""

import numpy as np
from numba import njit

# scalar state slots
DEPTH, EXPAND, NODES, FORCED, PRUNES, SOLUTIONS, TRAIL_LEN, STARTED = range(8)
N_SCALARS = 8

# run_chunk return codes
PAUSED, FOUND, EXHAUSTED, CAPPED = 0, 1, 2, 3

ASCENDING, DESCENDING, SHUFFLE = 0, 1, 2


def new_state(n: int, n_hex: int, weights: np.ndarray) -> dict:
    wcount = np.zeros((weights.shape[0], 4), np.int64)
    for w in range(4):
        wcount[:, w] = (weights == w).sum(axis=1)
    return {
        "wsum": np.zeros(weights.shape[0], np.int64),
        "wcount": wcount,
        "prefix": np.zeros(n + 1, np.int64),
        "scalars": np.zeros(N_SCALARS, np.int64),
        "values": np.zeros(n, np.int64),
        "used": np.zeros(n + 1, np.bool_),
        "hex_sum": np.zeros(n_hex, np.int64),
        "hex_free": np.full(n_hex, 6, np.int64),
        "trail": np.zeros(n, np.int64),
        "cands": np.zeros((n + 1, n), np.int64),
        "n_cands": np.zeros(n + 1, np.int64),
        "pos": np.zeros(n + 1, np.int64),
        "marks": np.zeros(n + 1, np.int64),
        "branch": np.zeros(n + 1, np.int64),
        "queue": np.zeros(4 * n + n_hex, np.int64),
    }


@njit(cache=True)
def _assign(v, x, magic, values, used, hex_sum, hex_free, trail, sc, vhex, queue, qlen, weights, wsum, wcount):
    for k in range(weights.shape[0]):
        w = weights[k, v]
        wsum[k] += w * x
        wcount[k, w] -= 1
    values[v] = x
    used[x] = True
    trail[sc[TRAIL_LEN]] = v
    sc[TRAIL_LEN] += 1
    ok = True
    for j in range(vhex.shape[1]):
        h = vhex[v, j]
        if h < 0:
            break
        hex_sum[h] += x
        hex_free[h] -= 1
        if hex_free[h] == 0:
            if hex_sum[h] != magic:
                ok = False
        elif hex_free[h] == 1:
            queue[qlen] = h
            qlen += 1
    return ok, qlen


@njit(cache=True)
def _undo(mark, values, used, hex_sum, hex_free, trail, sc, vhex, weights, wsum, wcount):
    while sc[TRAIL_LEN] > mark:
        sc[TRAIL_LEN] -= 1
        v = trail[sc[TRAIL_LEN]]
        x = values[v]
        for k in range(weights.shape[0]):
            w = weights[k, v]
            wsum[k] -= w * x
            wcount[k, w] += 1
        values[v] = 0
        used[x] = False
        for j in range(vhex.shape[1]):
            h = vhex[v, j]
            if h < 0:
                break
            hex_sum[h] -= x
            hex_free[h] += 1


@njit(cache=True)
def _propagate(qlen, magic, n, hexv, values, used, hex_sum, hex_free, trail, sc, vhex, queue, weights, wsum, wcount):
    while qlen > 0:
        qlen -= 1
        h = queue[qlen]
        if hex_free[h] != 1:
            continue
        forced = magic - hex_sum[h]
        if forced < 1 or forced > n or used[forced]:
            return False
        u = -1
        for j in range(6):
            if values[hexv[h, j]] == 0:
                u = hexv[h, j]
                break
        sc[FORCED] += 1
        ok, qlen = _assign(u, forced, magic, values, used, hex_sum, hex_free, trail, sc, vhex, queue, qlen,
                           weights, wsum, wcount)
        if not ok:
            return False
    return True


@njit(cache=True)
def _bounds_ok(magic, n, used, hex_sum, hex_free):
    lo = np.zeros(7, np.int64)
    hi = np.zeros(7, np.int64)
    k = 0
    x = 1
    while k < 6 and x <= n:
        if not used[x]:
            lo[k + 1] = lo[k] + x
            k += 1
        x += 1
    n_lo = k
    k = 0
    x = n
    while k < 6 and x >= 1:
        if not used[x]:
            hi[k + 1] = hi[k] + x
            k += 1
        x -= 1
    for h in range(hex_free.shape[0]):
        free = hex_free[h]
        if free == 0:
            continue
        if free > n_lo:
            return False
        s = hex_sum[h]
        if s + lo[free] > magic or s + hi[free] < magic:
            return False
    return True


@njit(cache=True)
def _covers_ok(magic, n, used, sizes, wsum, wcount, prefix):
    """Rearrangement bound on each hexagon set: its vertex-weighted sum must equal size * M.

    ``wsum[k]`` holds the weighted sum of assigned vertices, ``wcount[k, w]``
    the number of free vertices of weight ``w``.
    """
    free = 0
    for x in range(1, n + 1):
        if not used[x]:
            prefix[free + 1] = prefix[free] + x
            free += 1
    for k in range(sizes.shape[0]):
        need = sizes[k] * magic - wsum[k]
        c3 = wcount[k, 3]
        c2 = wcount[k, 2]
        c1 = wcount[k, 1]
        # smallest total puts the heaviest weights on the smallest free values
        lo = 3 * prefix[c3] + 2 * (prefix[c3 + c2] - prefix[c3]) + (prefix[c3 + c2 + c1] - prefix[c3 + c2])
        if lo > need:
            return False
        top = prefix[free]
        hi = (3 * (top - prefix[free - c3]) + 2 * (prefix[free - c3] - prefix[free - c3 - c2])
              + (prefix[free - c3 - c2] - prefix[free - c3 - c2 - c1]))
        if hi < need:
            return False
    return True


@njit(cache=True)
def _pick(values, hex_free, vhex, membership):
    best = -1
    best_free = 99
    best_mem = -1
    for v in range(values.shape[0]):
        if values[v] != 0:
            continue
        f = 99
        for j in range(vhex.shape[1]):
            h = vhex[v, j]
            if h < 0:
                break
            if hex_free[h] < f:
                f = hex_free[h]
        if f < best_free or (f == best_free and membership[v] > best_mem):
            best, best_free, best_mem = v, f, membership[v]
    return best


@njit(cache=True)
def _fill_candidates(d, v, magic, n, used, hex_sum, hex_free, vhex, cands, n_cands, order):
    lo = 1
    hi = n
    for j in range(vhex.shape[1]):
        h = vhex[v, j]
        if h < 0:
            break
        rest = hex_free[h] - 1
        need = magic - hex_sum[h]
        top = 0
        for i in range(rest):
            top += n - i
        a = need - rest * (rest + 1) // 2
        b = need - top
        if a < hi:
            hi = a
        if b > lo:
            lo = b
    c = 0
    for x in range(lo, hi + 1):
        if not used[x]:
            cands[d, c] = x
            c += 1
    if order == DESCENDING:
        for i in range(c // 2):
            t = cands[d, i]
            cands[d, i] = cands[d, c - 1 - i]
            cands[d, c - 1 - i] = t
    elif order == SHUFFLE:
        for i in range(c - 1, 0, -1):
            j = np.random.randint(0, i + 1)
            t = cands[d, i]
            cands[d, i] = cands[d, j]
            cands[d, j] = t
    n_cands[d] = c


@njit(cache=True)
def seed_rng(seed):
    np.random.seed(seed)


@njit(cache=True)
def run_chunk(hexv, vhex, membership, weights, sizes, magic, order, count_all, count_cap, budget,
              sc, values, used, hex_sum, hex_free, trail, cands, n_cands, pos, marks, branch, queue,
              wsum, wcount, prefix):
    """Advance the search by at most ``budget`` node expansions."""
    n = values.shape[0]
    if sc[STARTED] == 0:
        sc[STARTED] = 1
        sc[EXPAND] = 1
        if not _bounds_ok(magic, n, used, hex_sum, hex_free):
            return EXHAUSTED
        if not _covers_ok(magic, n, used, sizes, wsum, wcount, prefix):
            return EXHAUSTED
    stop_at = sc[NODES] + budget
    d = sc[DEPTH]
    while True:
        if sc[EXPAND] == 1:
            if sc[NODES] >= stop_at:
                sc[DEPTH] = d
                return PAUSED
            sc[NODES] += 1
            sc[EXPAND] = 0
            v = _pick(values, hex_free, vhex, membership)
            if v < 0:
                sc[SOLUTIONS] += 1
                if not count_all:
                    sc[DEPTH] = d
                    return FOUND
                if count_cap > 0 and sc[SOLUTIONS] >= count_cap:
                    sc[DEPTH] = d
                    return CAPPED
                # leaf: back up to the parent level
                d -= 1
                if d < 0:
                    return EXHAUSTED
                _undo(marks[d], values, used, hex_sum, hex_free, trail, sc, vhex, weights, wsum, wcount)
                continue
            _fill_candidates(d, v, magic, n, used, hex_sum, hex_free, vhex, cands, n_cands, order)
            pos[d] = 0
            marks[d] = sc[TRAIL_LEN]
            branch[d] = v
        if pos[d] >= n_cands[d]:
            d -= 1
            if d < 0:
                sc[DEPTH] = 0
                return EXHAUSTED
            _undo(marks[d], values, used, hex_sum, hex_free, trail, sc, vhex, weights, wsum, wcount)
            continue
        x = cands[d, pos[d]]
        pos[d] += 1
        v = branch[d]
        ok, qlen = _assign(v, x, magic, values, used, hex_sum, hex_free, trail, sc, vhex, queue, 0,
                           weights, wsum, wcount)
        if ok:
            ok = _propagate(qlen, magic, n, hexv, values, used, hex_sum, hex_free, trail, sc, vhex, queue,
                            weights, wsum, wcount)
        if ok:
            ok = _bounds_ok(magic, n, used, hex_sum, hex_free)
        if ok:
            ok = _covers_ok(magic, n, used, sizes, wsum, wcount, prefix)
        if ok:
            d += 1
            sc[EXPAND] = 1
        else:
            sc[PRUNES] += 1
            _undo(marks[d], values, used, hex_sum, hex_free, trail, sc, vhex, weights, wsum, wcount)
