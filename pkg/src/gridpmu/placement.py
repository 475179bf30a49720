"""Exact PMU placement: minimize PMU count subject to A x >= 1.

With a symmetric unit-diagonal adjacency this is a minimum dominating
set.  The exact solver is a hand-rolled branch and bound over the
equivalent covering problem; the hot kernel is compiled (Cython) when
available, with a pure-Python twin selected at import as fallback.  Set
GRIDPMU_FORCE_PURE=1 to force the fallback.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass

import numpy as np

from . import _mdspure

if os.environ.get("GRIDPMU_FORCE_PURE"):
    _kernel = _mdspure
else:
    try:
        from . import _mdscore as _kernel
    except ImportError:      # pragma: no cover - build without extension
        _kernel = _mdspure

BACKEND = _kernel.BACKEND

OPTIMAL = "optimal"
FEASIBLE = "feasible-upper-bound"


@dataclass(frozen=True)
class PlacementResult:
    x: tuple[int, ...]          # length-N 0/1 decision vector
    count: int
    status: str                 # OPTIMAL or FEASIBLE
    lower_bound: int
    elapsed: float              # seconds
    node_count: int

    @property
    def sites(self):
        """Internal indices of the chosen buses."""
        return tuple(i for i, v in enumerate(self.x) if v)


def _row_masks(a):
    mat = np.asarray(getattr(a, "matrix", a))
    n = mat.shape[0]
    rows = []
    for i in range(n):
        mask = 0
        for j in np.flatnonzero(mat[i]):
            mask |= 1 << int(j)
        rows.append(mask)
    return rows, n


def _check_unit_diagonal(a):
    mat = np.asarray(getattr(a, "matrix", a))
    if not np.all(np.diag(mat) != 0):
        raise AssertionError(
            "adjacency without unit diagonal: coverage can be infeasible"
        )
    return mat


def _result(chosen, n, status, lower_bound, elapsed, nodes, mat):
    x = [0] * n
    for j in chosen:
        x[j] = 1
    xa = np.array(x)
    if not np.all(mat @ xa >= 1):
        raise AssertionError("solver returned an infeasible placement")
    return PlacementResult(
        x=tuple(x), count=len(chosen), status=status,
        lower_bound=lower_bound, elapsed=elapsed, node_count=nodes,
    )


def solve_placement(a, time_budget: float = 600.0) -> PlacementResult:
    """Exact branch and bound; proven optimum or best incumbent + bound.

    Deterministic: branching and tie-breaking are fixed by internal
    index, so repeated runs give the same decision vector.
    """
    mat = _check_unit_diagonal(a)
    rows, n = _row_masks(a)
    start = time.monotonic()
    chosen, proved, lower_bound, nodes = _kernel.solve(rows, n, time_budget)
    elapsed = time.monotonic() - start
    max_degree = int(max(int(m).bit_count() for m in rows))
    lower_bound = max(lower_bound, -(-n // max_degree))
    status = OPTIMAL if proved else FEASIBLE
    return _result(sorted(chosen), n, status, lower_bound, elapsed, nodes,
                   mat)


def greedy_cover(a) -> PlacementResult:
    """Feasible cover by repeatedly taking the highest-coverage column."""
    mat = _check_unit_diagonal(a)
    rows, n = _row_masks(a)
    start = time.monotonic()
    chosen = _mdspure.greedy(rows, n)
    elapsed = time.monotonic() - start
    return _result(sorted(chosen), n, FEASIBLE, 1, elapsed, 0, mat)


_BRUTE_LIMIT = 25


def brute_force_placement(a) -> PlacementResult:
    """Exhaustive oracle: first feasible subset in cardinality-lex order."""
    mat = _check_unit_diagonal(a)
    rows, n = _row_masks(a)
    if n > _BRUTE_LIMIT:
        raise ValueError(f"brute force limited to {_BRUTE_LIMIT} buses")
    full = (1 << n) - 1
    start = time.monotonic()
    nodes = 0
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            nodes += 1
            covered = 0
            for j in combo:
                covered |= rows[j]
            if covered == full:
                elapsed = time.monotonic() - start
                return _result(list(combo), n, OPTIMAL, k, elapsed,
                               nodes, mat)
    raise AssertionError("unit-diagonal cover cannot be infeasible")
