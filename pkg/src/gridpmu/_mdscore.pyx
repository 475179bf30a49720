# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernel for the covering problem.

Same search as _mdspure (greedy incumbent, disjoint-row lower bound,
branch on the uncovered row with fewest covering columns) but with
bitsets stored as C uint64 words.  Limited to 512 columns, far above
any bundled network.
"""

import time

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "cython"

cdef extern from *:
    """
    static int popcll(unsigned long long x) { return __builtin_popcountll(x); }
    static int ctzll(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int popcll(unsigned long long x) nogil
    int ctzll(unsigned long long x) nogil

ctypedef unsigned long long u64

DEF MAXW = 8          # 8 * 64 = 512 columns
DEF MAXN = 512

cdef struct Ctx:
    int n, w
    u64* cover        # n * w row masks (symmetric, unit diagonal)
    u64* ball2        # n * w closed 2-neighborhood masks
    u64 full[MAXW]
    int best[MAXN]
    int best_len
    int chosen[MAXN]
    long long nodes
    double deadline
    bint timed_out


cdef int _disjoint_bound(Ctx* c, u64* covered) noexcept:
    cdef u64 rem[MAXW]
    cdef int k, i, bound = 0
    cdef bint any_left
    for k in range(c.w):
        rem[k] = c.full[k] & ~covered[k]
    while True:
        i = -1
        for k in range(c.w):
            if rem[k]:
                i = k * 64 + ctzll(rem[k])
                break
        if i < 0:
            return bound
        bound += 1
        for k in range(c.w):
            rem[k] &= ~c.ball2[i * c.w + k]


cdef int _new_coverage(Ctx* c, int j, u64* covered) noexcept:
    cdef int k, s = 0
    for k in range(c.w):
        s += popcll(c.cover[j * c.w + k] & ~covered[k])
    return s


cdef void _dfs(Ctx* c, u64* covered, int depth):
    cdef int k, i, j, a, b, cnt, bestrow, bestcnt, ncand
    cdef u64 bits
    cdef u64 newcov[MAXW]
    cdef int cand[MAXN]
    cdef int key[MAXN]
    cdef bint done

    c.nodes += 1
    if (c.nodes & 4095) == 0 and time.monotonic() > c.deadline:
        c.timed_out = True
    if c.timed_out:
        return

    done = True
    for k in range(c.w):
        if covered[k] != c.full[k]:
            done = False
            break
    if done:
        if depth < c.best_len:
            c.best_len = depth
            memcpy(c.best, c.chosen, depth * sizeof(int))
        return

    if depth + _disjoint_bound(c, covered) >= c.best_len:
        return

    bestrow = -1
    bestcnt = c.n + 1
    for k in range(c.w):
        bits = c.full[k] & ~covered[k]
        while bits:
            i = k * 64 + ctzll(bits)
            bits &= bits - 1
            cnt = 0
            for a in range(c.w):
                cnt += popcll(c.cover[i * c.w + a])
            if cnt < bestcnt:
                bestcnt = cnt
                bestrow = i

    ncand = 0
    for k in range(c.w):
        bits = c.cover[bestrow * c.w + k]
        while bits:
            j = k * 64 + ctzll(bits)
            bits &= bits - 1
            cand[ncand] = j
            key[ncand] = _new_coverage(c, j, covered)
            ncand += 1

    # insertion sort: coverage descending, index ascending
    for a in range(1, ncand):
        j = cand[a]
        cnt = key[a]
        b = a - 1
        while b >= 0 and (key[b] < cnt or (key[b] == cnt and cand[b] > j)):
            cand[b + 1] = cand[b]
            key[b + 1] = key[b]
            b -= 1
        cand[b + 1] = j
        key[b + 1] = cnt

    for a in range(ncand):
        j = cand[a]
        for k in range(c.w):
            newcov[k] = covered[k] | c.cover[j * c.w + k]
        c.chosen[depth] = j
        _dfs(c, newcov, depth + 1)
        if c.timed_out:
            return


def solve(rows, n, budget=600.0):
    """Exact minimum cover; same contract as gridpmu._mdspure.solve.

    ``rows`` is a sequence of n Python-int bitmasks (bit i of rows[j]
    set when column j covers row i).
    """
    cdef int w = (n + 63) // 64
    if n > MAXN:
        raise ValueError(f"compiled kernel supports up to {MAXN} columns")
    cdef Ctx c
    cdef int i, j, k, a, cnt, bestj, bestc, root_bound
    cdef u64 covered[MAXW]
    cdef u64 bits
    cdef bint done
    cdef object mask

    c.n = n
    c.w = w
    c.nodes = 0
    c.timed_out = False
    c.deadline = time.monotonic() + budget
    c.cover = <u64*> malloc(n * w * sizeof(u64))
    c.ball2 = <u64*> malloc(n * w * sizeof(u64))
    if c.cover == NULL or c.ball2 == NULL:
        free(c.cover)
        free(c.ball2)
        raise MemoryError
    try:
        for j in range(n):
            mask = rows[j]
            for k in range(w):
                c.cover[j * w + k] = <u64> ((mask >> (64 * k))
                                            & 0xFFFFFFFFFFFFFFFF)
        for k in range(w):
            c.full[k] = 0
        for i in range(n):
            c.full[i // 64] |= (<u64> 1) << (i % 64)
        for i in range(n):
            for k in range(w):
                c.ball2[i * w + k] = 0
            for k in range(w):
                bits = c.cover[i * w + k]
                while bits:
                    j = k * 64 + ctzll(bits)
                    bits &= bits - 1
                    for a in range(w):
                        c.ball2[i * w + a] |= c.cover[j * w + a]

        # greedy incumbent: largest new coverage, lowest index on ties
        for k in range(w):
            covered[k] = 0
        c.best_len = 0
        while True:
            done = True
            for k in range(w):
                if covered[k] != c.full[k]:
                    done = False
                    break
            if done:
                break
            bestj = -1
            bestc = 0
            for j in range(n):
                cnt = _new_coverage(&c, j, covered)
                if cnt > bestc:
                    bestc = cnt
                    bestj = j
            c.best[c.best_len] = bestj
            c.best_len += 1
            for k in range(w):
                covered[k] |= c.cover[bestj * w + k]

        for k in range(w):
            covered[k] = 0
        root_bound = _disjoint_bound(&c, covered)

        _dfs(&c, covered, 0)

        proved = not c.timed_out
        lower_bound = c.best_len if proved else root_bound
        best = [c.best[i] for i in range(c.best_len)]
        return best, proved, lower_bound, c.nodes
    finally:
        free(c.cover)
        free(c.ball2)
