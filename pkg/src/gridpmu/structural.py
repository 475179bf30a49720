"""Graph-structural analysis of the binary adjacency matrices.

Average (resistance or topological) distance per bus, connected
components of the electrical graph, and the component-counting shortcut
that places PMUs without the integer program: one per isolated vertex
plus one per fully-connected component.  Non-clique components fall back
to the exact solver so the shortcut total always equals the optimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .eadj import BinaryAdjacency
from .placement import PlacementResult, solve_placement


@dataclass(frozen=True)
class LambdaVector:
    values: np.ndarray
    lambda_min: float
    argmin_set: tuple[int, ...]
    source: str


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[tuple[int, ...], ...]
    isolated: tuple[tuple[int, ...], ...]
    clique_components: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HeuristicPlacement:
    count: int
    sites: tuple[int, ...]
    per_component: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class ConsistencyReport:
    matches: bool
    heuristic_count: int
    ilp_count: int
    detail: str

    def __bool__(self):
        return self.matches


def lambda_vector(adj: BinaryAdjacency) -> LambdaVector:
    """Row sums (diagonal included) divided by N - 1."""
    n = adj.n
    values = adj.matrix.sum(axis=1).astype(float) / (n - 1)
    lambda_min = float(values.min())
    argmin = tuple(int(i) for i in np.flatnonzero(values == lambda_min))
    return LambdaVector(values=values, lambda_min=lambda_min,
                        argmin_set=argmin, source=adj.source)


def connected_components(adj: BinaryAdjacency) -> ComponentDecomposition:
    """Components over off-diagonal edges; size->=2 ones tested for
    completeness."""
    n = adj.n
    off = adj.matrix.copy()
    np.fill_diagonal(off, 0)
    seen = [False] * n
    components = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        queue = deque([s])
        seen[s] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in np.flatnonzero(off[v]):
                if not seen[u]:
                    seen[u] = True
                    queue.append(int(u))
        components.append(tuple(sorted(comp)))
    components.sort()
    isolated = tuple(c for c in components if len(c) == 1)
    cliques = []
    for comp in components:
        if len(comp) < 2:
            continue
        idx = np.array(comp)
        sub = off[np.ix_(idx, idx)]
        if np.all(sub + np.eye(len(comp), dtype=sub.dtype) == 1):
            cliques.append(comp)
    return ComponentDecomposition(
        components=tuple(components),
        isolated=isolated,
        clique_components=tuple(cliques),
    )


def heuristic_placement(adj: BinaryAdjacency,
                        lam: LambdaVector | None = None,
                        decomposition: ComponentDecomposition | None = None,
                        ) -> HeuristicPlacement:
    """Component-counting placement on an electrical adjacency.

    Isolated vertices each get a PMU.  A clique component gets one PMU:
    at vertex 0 if it contains it (the dense subgraph usually holds the
    first bus), otherwise at its lowest-index vertex.  Any other
    component is solved exactly on its own submatrix, so the total stays
    optimal even off the clique fast path.
    """
    if adj.source != "electrical":
        raise ValueError("heuristic placement expects an electrical adjacency")
    if decomposition is None:
        decomposition = connected_components(adj)
    sites = []
    per_component = []
    clique_set = set(decomposition.clique_components)
    for comp in decomposition.components:
        if len(comp) == 1:
            chosen = comp
        elif comp in clique_set:
            chosen = (0,) if 0 in comp else (comp[0],)
        else:
            idx = np.array(comp)
            sub = adj.matrix[np.ix_(idx, idx)]
            local = solve_placement(
                BinaryAdjacency(n=len(comp), matrix=sub, source="electrical")
            )
            chosen = tuple(int(idx[i]) for i in local.sites)
        sites.extend(chosen)
        per_component.append((comp, tuple(chosen)))
    sites.sort()
    return HeuristicPlacement(
        count=len(sites), sites=tuple(sites),
        per_component=tuple(per_component),
    )


def consistency_check(heuristic: HeuristicPlacement,
                      ilp: PlacementResult) -> ConsistencyReport:
    """Compare the shortcut count with the integer-program optimum."""
    matches = heuristic.count == ilp.count
    if matches:
        detail = f"both place {ilp.count} PMUs"
    else:
        detail = (f"heuristic places {heuristic.count} PMUs, "
                  f"integer program places {ilp.count} "
                  f"(status {ilp.status})")
    return ConsistencyReport(matches=matches,
                             heuristic_count=heuristic.count,
                             ilp_count=ilp.count, detail=detail)
