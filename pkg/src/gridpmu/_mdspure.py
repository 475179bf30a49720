"""Pure-Python branch-and-bound kernel for the covering problem.

Bitset implementation of the exact search used by the placement module:
rows and column cover sets are Python ints.  Kept interface-compatible
with the compiled kernel in _mdscore so either can back the solver.
"""

from __future__ import annotations

import time

BACKEND = "pure"


def greedy(rows, n):
    """Columns chosen by largest new coverage, lowest index on ties."""
    full = (1 << n) - 1
    covered = 0
    chosen = []
    while covered != full:
        best_j, best_c = -1, 0
        for j in range(n):
            c = bin(rows[j] & ~covered).count("1")
            if c > best_c:
                best_c, best_j = c, j
        chosen.append(best_j)
        covered |= rows[best_j]
    return chosen


def _disjoint_bound(rem, ball2):
    # rows whose closed neighborhoods are pairwise disjoint each need
    # their own column
    bound = 0
    while rem:
        i = (rem & -rem).bit_length() - 1
        bound += 1
        rem &= ~ball2[i]
    return bound


def solve(rows, n, budget=600.0):
    """Exact minimum cover of all n rows by columns with masks ``rows``.

    Returns (chosen, proved, lower_bound, nodes).  ``chosen`` is the best
    column set found, ``proved`` says whether optimality was proven
    within the time budget, and ``lower_bound`` is the best proven bound
    (equal to len(chosen) when proved).
    """
    full = (1 << n) - 1
    ball2 = []
    for i in range(n):
        u = 0
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            r &= r - 1
            u |= rows[j]
        ball2.append(u)

    best = greedy(rows, n)
    best_len = len(best)
    root_bound = _disjoint_bound(full, ball2)
    deadline = time.monotonic() + budget
    state = {"nodes": 0, "timed_out": False}

    def dfs(covered, chosen):
        nonlocal best, best_len
        state["nodes"] += 1
        if state["nodes"] % 4096 == 0 and time.monotonic() > deadline:
            state["timed_out"] = True
        if state["timed_out"]:
            return
        if covered == full:
            if len(chosen) < best_len:
                best = chosen.copy()
                best_len = len(best)
            return
        if len(chosen) + _disjoint_bound(full & ~covered, ball2) >= best_len:
            return
        # branch on the uncovered row with the fewest covering columns
        rem = full & ~covered
        row, cand, count = -1, 0, n + 1
        r = rem
        while r:
            i = (r & -r).bit_length() - 1
            r &= r - 1
            c = bin(rows[i]).count("1")
            if c < count:
                count, row, cand = c, i, rows[i]
        cols = []
        c = cand
        while c:
            j = (c & -c).bit_length() - 1
            c &= c - 1
            cols.append(j)
        cols.sort(key=lambda j: (-bin(rows[j] & ~covered).count("1"), j))
        for j in cols:
            chosen.append(j)
            dfs(covered | rows[j], chosen)
            chosen.pop()
            if state["timed_out"]:
                return

    dfs(0, [])
    proved = not state["timed_out"]
    lower_bound = best_len if proved else root_bound
    return best, proved, lower_bound, state["nodes"]
