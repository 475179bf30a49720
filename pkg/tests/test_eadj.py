import math

import numpy as np
import pytest

from gridpmu import eadj
from gridpmu.eadj import BinaryAdjacency, threshold_adjacency


def dist_matrix(n, entries):
    mat = np.zeros((n, n))
    for (i, j), v in entries.items():
        mat[i, j] = mat[j, i] = v
    return mat


def test_threshold_basic():
    mat = dist_matrix(4, {(0, 1): 0.1, (0, 2): 0.5, (0, 3): 0.9,
                          (1, 2): 0.2, (1, 3): 0.8, (2, 3): 0.3})
    result = threshold_adjacency(mat, 3)
    assert result.adjacency.edges() == [(0, 1), (1, 2), (2, 3)]
    assert result.tau == pytest.approx(0.5)   # next distinct distance
    assert result.ties_broken == 0
    assert result.adjacency.source == "electrical"


def test_threshold_all_pairs_gives_inf_tau():
    mat = dist_matrix(3, {(0, 1): 0.1, (0, 2): 0.2, (1, 2): 0.3})
    result = threshold_adjacency(mat, 3)
    assert result.tau == math.inf
    assert result.adjacency.edge_count == 3


def test_threshold_tie_break_lexicographic():
    # four pairs share the boundary distance but only two fit
    mat = dist_matrix(4, {(0, 1): 0.1, (0, 2): 0.5, (0, 3): 0.5,
                          (1, 2): 0.5, (1, 3): 0.5, (2, 3): 0.9})
    result = threshold_adjacency(mat, 3)
    assert result.adjacency.edges() == [(0, 1), (0, 2), (0, 3)]
    assert result.ties_broken == 2
    assert result.tau == pytest.approx(0.9)


def test_threshold_range_checks():
    mat = dist_matrix(3, {(0, 1): 0.1, (0, 2): 0.2, (1, 2): 0.3})
    with pytest.raises(ValueError, match="edge target"):
        threshold_adjacency(mat, 0)
    with pytest.raises(ValueError, match="edge target"):
        threshold_adjacency(mat, 4)


def test_threshold_accepts_resistance_matrix_object():
    class Wrapper:
        entries = dist_matrix(3, {(0, 1): 0.1, (0, 2): 0.2, (1, 2): 0.3})

    result = threshold_adjacency(Wrapper(), 1)
    assert result.adjacency.edges() == [(0, 1)]


def test_adjacency_validation():
    good = np.eye(3, dtype=np.uint8)
    BinaryAdjacency(n=3, matrix=good, source="topological")
    with pytest.raises(ValueError, match="symmetric"):
        bad = good.copy()
        bad[0, 1] = 1
        BinaryAdjacency(n=3, matrix=bad, source="topological")
    with pytest.raises(ValueError, match="unit diagonal"):
        bad = good.copy()
        bad[2, 2] = 0
        BinaryAdjacency(n=3, matrix=bad, source="topological")
    with pytest.raises(ValueError, match="source"):
        BinaryAdjacency(n=3, matrix=good, source="mystery")
    with pytest.raises(ValueError, match="shape"):
        BinaryAdjacency(n=4, matrix=good, source="topological")


def test_edge_count_and_edges():
    mat = np.eye(4, dtype=np.uint8)
    mat[0, 3] = mat[3, 0] = 1
    mat[1, 2] = mat[2, 1] = 1
    adj = BinaryAdjacency(n=4, matrix=mat, source="electrical")
    assert adj.edge_count == 2
    assert adj.edges() == [(0, 3), (1, 2)]


def test_to_dot_flags_isolated():
    mat = np.eye(3, dtype=np.uint8)
    mat[0, 1] = mat[1, 0] = 1
    adj = BinaryAdjacency(n=3, matrix=mat, source="electrical")
    dot = eadj.to_dot(adj, labels=[101, 102, 103])
    assert dot.startswith("graph electrical {")
    assert 'n2 [label="103", shape=box, color=red];' in dot
    assert "n0 -- n1;" in dot
    assert dot == eadj.to_dot(adj, labels=[101, 102, 103])
