"""Compiled inner loops for exhaustive enumeration and decision.

A k-assignment up to renaming is a vector ``mult`` indexed by nonempty
vertex masks.  Masks are decided from ``N-1`` down to ``1``; the singleton
``{v}`` is the last mask containing ``v`` so its multiplicity is forced to
the residual degree of ``v``.  A vector is canonical when no automorphism
image is lexicographically larger (comparing from mask ``N-1`` down).

Colorability of a vector is decided by a dynamic program over the set of
already-colored vertices, stored as a bitset of ``N`` states split into
64-bit words.
"""

from __future__ import annotations

import numpy as np
from numba import njit

DOWN = 1
UP = 0


@njit(cache=True)
def _cap(t, n, resid):
    cap = 1 << 30
    for v in range(n):
        if t >> v & 1:
            if resid[v] < cap:
                cap = resid[v]
    return cap


@njit(cache=True)
def _apply(t, n, resid, delta):
    for v in range(n):
        if t >> v & 1:
            resid[v] += delta


@njit(cache=True)
def _full_canonical(mult, maskmap):
    groups, size = maskmap.shape
    for g in range(1, groups):
        for u in range(size - 1, 0, -1):
            a = mult[maskmap[g, u]]
            b = mult[u]
            if a > b:
                return False
            if a < b:
                break
    return True


@njit(cache=True)
def _partial_canonical(mult, maskmap, low):
    groups, size = maskmap.shape
    for g in range(1, groups):
        for u in range(size - 1, low - 1, -1):
            w = maskmap[g, u]
            if w < low:
                break
            a = mult[w]
            b = mult[u]
            if a > b:
                return False
            if a < b:
                break
    return True


@njit(cache=True)
def colorable(mult, cand_ptr, cand, disj, buf_a, buf_b):
    """Whether the assignment ``mult`` admits a coloring.

    ``cand[cand_ptr[s]:cand_ptr[s+1]]`` lists the admissible color classes
    (independent subsets of ``s`` of allowed size) for a color with support
    ``s``; ``disj[T]`` is the bitset of states disjoint from ``T``.
    """
    size = mult.shape[0]
    words = disj.shape[1]
    reach = buf_a
    new = buf_b
    for i in range(words):
        reach[i] = 0
    reach[0] = np.uint64(1)
    one = np.uint64(1)
    for s in range(size - 1, 0, -1):
        for _ in range(mult[s]):
            for i in range(words):
                new[i] = 0
            for idx in range(cand_ptr[s], cand_ptr[s + 1]):
                t = cand[idx]
                if t == 0:
                    for i in range(words):
                        new[i] |= reach[i]
                    continue
                q = t >> 6
                r = np.uint64(t & 63)
                for i in range(words - q):
                    x = reach[i] & disj[t, i]
                    if x == 0:
                        continue
                    new[i + q] |= x << r
                    if r != 0 and i + q + 1 < words:
                        new[i + q + 1] |= x >> (np.uint64(64) - r)
            alive = False
            for i in range(words):
                if new[i] != 0:
                    alive = True
                    break
            if not alive:
                return False
            reach, new = new, reach
    last = size - 1
    return (reach[last >> 6] >> np.uint64(last & 63)) & one == one


@njit(cache=True)
def walk(n, mult, resid, state, t_lo, t_hi, maskmap, check,
         cand_ptr, cand, disj, out, max_out):
    """Advance the depth-first walk over positions ``t_hi`` down to ``t_lo``.

    Leaves (``t < t_lo``) that pass the symmetry test are written to ``out``
    (when ``check`` is set, only leaves that are *not* colorable are
    written).  Returns ``(written, leaves, finished)``; the walk resumes
    from ``state`` on the next call.
    """
    t = state[0]
    direction = state[1]
    written = 0
    leaves = 0
    words = disj.shape[1]
    buf_a = np.zeros(words, dtype=np.uint64)
    buf_b = np.zeros(words, dtype=np.uint64)
    size = mult.shape[0]
    while True:
        if direction == DOWN:
            if t < t_lo:
                ok = True
                if t_lo == 1:
                    ok = _full_canonical(mult, maskmap)
                if ok:
                    leaves += 1
                    emit = True
                    if check:
                        emit = not colorable(mult, cand_ptr, cand, disj, buf_a, buf_b)
                    if emit:
                        for i in range(size):
                            out[written, i] = mult[i]
                        written += 1
                direction = UP
                t = t_lo
                if written == max_out:
                    state[0] = t
                    state[1] = direction
                    return written, leaves, False
                continue
            if t & (t - 1) == 0:
                v = 0
                while (1 << v) != t:
                    v += 1
                mult[t] = resid[v]
                resid[v] = 0
                if not _partial_canonical(mult, maskmap, t):
                    direction = UP
                    continue
            else:
                c = _cap(t, n, resid)
                mult[t] = c
                if c:
                    _apply(t, n, resid, -c)
            t -= 1
        else:
            if t > t_hi:
                state[0] = t
                state[1] = direction
                return written, leaves, True
            if t & (t - 1) == 0:
                v = 0
                while (1 << v) != t:
                    v += 1
                resid[v] += mult[t]
                mult[t] = 0
                t += 1
            elif mult[t] > 0:
                mult[t] -= 1
                _apply(t, n, resid, 1)
                direction = DOWN
                t -= 1
            else:
                t += 1
