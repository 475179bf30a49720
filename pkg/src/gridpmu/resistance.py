"""Resistance-distance matrix via grounding and dense LU inversion.

Grounding one node makes the Laplacian-like conductance matrix
invertible; the pairwise effective resistance then follows from the
diagonal and off-diagonal entries of that inverse.  The result is a
metric on connected networks with nonnegative branch reactance, which
check_metric verifies exhaustively.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg


class SingularNetworkError(ValueError):
    """Grounded conductance matrix is singular (network disconnected)."""

    def __init__(self, node):
        self.node = node
        super().__init__(
            f"grounded conductance matrix is singular "
            f"(zero pivot at node index {node}); network disconnected?"
        )


@dataclass(frozen=True)
class GroundedInverse:
    n_reduced: int
    entries: np.ndarray     # (N-1)x(N-1) inverse of the grounded matrix
    gamma: np.ndarray       # its diagonal
    ground_index: int


@dataclass(frozen=True)
class ResistanceMatrix:
    n: int
    entries: np.ndarray     # real NxN, zero diagonal
    ground_index: int


@dataclass(frozen=True)
class MetricReport:
    n: int
    max_symmetry_violation: float
    min_entry: float
    max_triangle_violation: float
    worst_triple: tuple[int, int, int]
    tolerance: float

    @property
    def passed(self):
        return (self.max_symmetry_violation <= self.tolerance
                and self.min_entry >= -self.tolerance
                and self.max_triangle_violation <= self.tolerance)


def _as_matrix(g):
    mat = np.asarray(getattr(g, "matrix", g), dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("conductance matrix must be square")
    return mat


def _symmetrized(mat, warn_above=1e-9):
    asym = np.abs(mat - mat.T).max()
    if asym > warn_above:
        warnings.warn(
            f"conductance matrix asymmetric by {asym:g} "
            f"(phase-shifting branches?); symmetrizing as (H + H^T)/2",
            stacklevel=3,
        )
    return (mat + mat.T) / 2.0


# pivots below this magnitude are treated as structural zeros
_PIVOT_TOL = 1e-10


def ground_and_invert(g, r: int) -> GroundedInverse:
    """Delete row/column r and invert what remains by dense LU.

    ``g`` may be a PAngleJacobian or any square matrix; it is
    symmetrized first.  Raises SingularNetworkError (naming the
    zero-pivot node in the original indexing) when the reduced matrix is
    singular, which for a Laplacian means the network is disconnected.
    """
    mat = _symmetrized(_as_matrix(g))
    n = mat.shape[0]
    if n < 2:
        raise ValueError("need at least 2 nodes")
    if not 0 <= r < n:
        raise ValueError(f"ground index {r} outside [0, {n})")
    keep = [i for i in range(n) if i != r]
    reduced = mat[np.ix_(keep, keep)]
    with warnings.catch_warnings():
        # zero pivots are diagnosed below with the node named
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(reduced, check_finite=False)
    diag = np.abs(np.diag(lu))
    scale = diag.max() if diag.size else 1.0
    bad = np.flatnonzero(diag <= _PIVOT_TOL * max(scale, 1.0))
    if bad.size:
        raise SingularNetworkError(keep[int(bad[0])])
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(n - 1),
                                check_finite=False)
    return GroundedInverse(n_reduced=n - 1, entries=inv,
                           gamma=np.diag(inv).copy(), ground_index=r)


def resistance_matrix(g, r: int) -> ResistanceMatrix:
    """Full NxN matrix of pairwise effective resistances, grounded at r.

    Off-ground block: e(i,j) = inv_ii + inv_jj - inv_ij - inv_ji.
    Ground row/column: e(r,k) = inv_kk.  Diagonal is exactly zero.
    """
    grounded = ground_and_invert(g, r)
    inv = grounded.entries
    gamma = grounded.gamma
    nred = grounded.n_reduced
    n = nred + 1

    block = gamma[:, None] + gamma[None, :] - inv - inv.T
    e = np.zeros((n, n))
    keep = [i for i in range(n) if i != r]
    e[np.ix_(keep, keep)] = block
    e[r, keep] = gamma
    e[keep, r] = gamma
    np.fill_diagonal(e, 0.0)
    return ResistanceMatrix(n=n, entries=e, ground_index=r)


def check_metric(e, tolerance: float = 1e-9) -> MetricReport:
    """Exhaustive symmetry / nonnegativity / triangle-inequality check.

    The triangle scan covers every (i, j, k) triple; vectorized over j so
    it stays fast up to a few hundred nodes.
    """
    mat = np.asarray(getattr(e, "entries", e), dtype=float)
    n = mat.shape[0]
    sym = float(np.abs(mat - mat.T).max())
    min_entry = float(mat.min())

    # violation(i,k) = e(i,k) - min_j (e(i,j) + e(j,k)); j = i or k
    # contributes zero, so the full minimum is safe.
    via = (mat[:, :, None] + mat[None, :, :]).min(axis=1)
    viol = mat - via
    worst_flat = int(np.argmax(viol))
    wi, wk = divmod(worst_flat, n)
    wj = int(np.argmin(mat[wi, :] + mat[:, wk]))
    return MetricReport(
        n=n,
        max_symmetry_violation=sym,
        min_entry=min_entry,
        max_triangle_violation=float(viol[wi, wk]),
        worst_triple=(wi, wj, wk),
        tolerance=tolerance,
    )
