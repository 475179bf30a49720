"""Binary adjacency matrices and the resistance-distance threshold.

The electrical adjacency keeps the target number of unordered pairs with
the smallest resistance distances; ties at the boundary value are broken
by ascending (i, j) order on internal indices so the result is
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BinaryAdjacency:
    n: int
    matrix: np.ndarray          # symmetric uint8 NxN, unit diagonal
    source: str                 # "topological" or "electrical"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.n, self.n):
            raise ValueError("adjacency shape does not match n")
        if not np.array_equal(m, m.T):
            raise ValueError("adjacency must be symmetric")
        if not np.all(np.diag(m) == 1):
            raise ValueError("adjacency must have a unit diagonal")
        if self.source not in ("topological", "electrical"):
            raise ValueError(f"unknown adjacency source {self.source!r}")

    @property
    def edge_count(self):
        """Number of unordered off-diagonal pairs set to 1."""
        return int((self.matrix.sum() - self.n) // 2)

    def edges(self):
        """Sorted list of off-diagonal (i, j) pairs with i < j."""
        iu, ju = np.triu_indices(self.n, k=1)
        keep = self.matrix[iu, ju] == 1
        return list(zip(iu[keep].tolist(), ju[keep].tolist()))


@dataclass(frozen=True)
class ThresholdResult:
    adjacency: BinaryAdjacency
    tau: float
    ties_broken: int


def threshold_adjacency(e, m: int) -> ThresholdResult:
    """Select the m unordered pairs with the smallest resistance distance.

    ``e`` is a ResistanceMatrix or a plain symmetric matrix.  The
    threshold tau is the next distinct distance above the selected ones
    (so every kept pair satisfies e < tau); when the boundary distance is
    shared by more pairs than fit, the (i, j)-lexicographically smallest
    pairs win and ties_broken counts the excluded ones.
    """
    mat = np.asarray(getattr(e, "entries", e), dtype=float)
    n = mat.shape[0]
    max_pairs = n * (n - 1) // 2
    if not 1 <= m <= max_pairs:
        raise ValueError(f"edge target {m} outside [1, {max_pairs}]")

    iu, ju = np.triu_indices(n, k=1)
    dist = mat[iu, ju]
    order = np.lexsort((ju, iu, dist))   # by distance, then (i, j)
    selected = order[:m]
    boundary = dist[order[m - 1]]

    larger = dist[dist > boundary]
    tau = float(larger.min()) if larger.size else math.inf
    at_boundary = int((dist == boundary).sum())
    selected_at_boundary = int((dist[selected] == boundary).sum())
    ties_broken = at_boundary - selected_at_boundary

    a = np.eye(n, dtype=np.uint8)
    a[iu[selected], ju[selected]] = 1
    a[ju[selected], iu[selected]] = 1
    adjacency = BinaryAdjacency(n=n, matrix=a, source="electrical")
    return ThresholdResult(adjacency=adjacency, tau=tau,
                           ties_broken=ties_broken)


def to_dot(adj: BinaryAdjacency, labels=None, components=None) -> str:
    """Deterministic DOT rendering; isolated vertices are flagged.

    ``labels`` maps internal indices to display labels (default 1-based
    numbers); ``components`` is an optional ComponentDecomposition used
    to annotate each vertex with its component.
    """
    if labels is None:
        labels = [str(i + 1) for i in range(adj.n)]
    degree = adj.matrix.sum(axis=1) - 1
    comp_of = {}
    if components is not None:
        for ci, comp in enumerate(components.components):
            for v in comp:
                comp_of[v] = ci
    lines = [f"graph {adj.source} {{"]
    for i in range(adj.n):
        attrs = [f'label="{labels[i]}"']
        if degree[i] == 0:
            attrs.append('shape=box')
            attrs.append('color=red')
        if i in comp_of:
            attrs.append(f'comment="component {comp_of[i]}"')
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j in adj.edges():
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
