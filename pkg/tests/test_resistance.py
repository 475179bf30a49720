import random

import numpy as np
import pytest

from gridpmu import cli, netmat, resistance


def laplacian(n, edges):
    """Weighted graph Laplacian from (i, j, conductance) triples."""
    mat = np.zeros((n, n))
    for i, j, w in edges:
        mat[i, i] += w
        mat[j, j] += w
        mat[i, j] -= w
        mat[j, i] -= w
    return mat


def random_connected(rng, n):
    """Random tree plus a few extra edges, conductances in [0.5, 2]."""
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, rng.uniform(0.5, 2.0)))
    extra = rng.randrange(n)
    seen = {(i, j) for i, j, _ in edges}
    for _ in range(extra):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            continue
        seen.add(key)
        edges.append((key[0], key[1], rng.uniform(0.5, 2.0)))
    return laplacian(n, edges)


def pinv_distances(lap):
    """Independent oracle via the Moore-Penrose pseudoinverse."""
    plus = np.linalg.pinv(lap)
    d = np.diag(plus)
    return d[:, None] + d[None, :] - plus - plus.T


def test_single_branch_closed_form():
    for x in (0.05, 0.3, 1.7):
        e = resistance.resistance_matrix(laplacian(2, [(0, 1, 1.0 / x)]), 0)
        assert abs(e.entries[0, 1] - x) < 1e-10


def test_unit_triangle_closed_form():
    lap = laplacian(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    e = resistance.resistance_matrix(lap, 0).entries
    off = ~np.eye(3, dtype=bool)
    assert np.abs(e[off] - 2.0 / 3.0).max() < 1e-10


def test_unit_path_closed_form():
    n = 7
    lap = laplacian(n, [(i, i + 1, 1.0) for i in range(n - 1)])
    e = resistance.resistance_matrix(lap, 3).entries
    idx = np.arange(n)
    assert np.abs(e - np.abs(idx[:, None] - idx[None, :])).max() < 1e-10


def test_tree_path_sum():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randrange(4, 15)
        parent = [rng.randrange(v) for v in range(1, n)]
        weight = [rng.uniform(0.2, 3.0) for _ in range(n - 1)]
        lap = laplacian(n, [(parent[v - 1], v, 1.0 / weight[v - 1])
                            for v in range(1, n)])
        e = resistance.resistance_matrix(lap, 0).entries
        # on a tree e(0, v) is the sum of resistances down to the root
        depth = [0.0] * n
        for v in range(1, n):
            depth[v] = depth[parent[v - 1]] + weight[v - 1]
        for v in range(1, n):
            assert abs(e[0, v] - depth[v]) < 1e-10


def test_pinv_oracle_random_graphs():
    rng = random.Random(42)
    for _ in range(25):
        n = rng.randrange(3, 31)
        lap = random_connected(rng, n)
        e = resistance.resistance_matrix(lap, rng.randrange(n)).entries
        assert np.abs(e - pinv_distances(lap)).max() < 1e-8


def test_ground_invariance():
    rng = random.Random(5)
    lap = random_connected(rng, 12)
    base = resistance.resistance_matrix(lap, 0).entries
    for r in (3, 7, 11):
        other = resistance.resistance_matrix(lap, r).entries
        assert np.abs(base - other).max() < 1e-8


def test_pinv_oracle_bundled(bundled_cases):
    for case in bundled_cases.values():
        h = netmat.power_angle_jacobian(case, netmat.flat_profile(case))
        lap = (h.matrix + h.matrix.T) / 2.0
        e = resistance.resistance_matrix(h, case.slack_index).entries
        assert np.abs(e - pinv_distances(lap)).max() < 1e-8


def test_grounded_inverse_shape():
    lap = laplacian(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)])
    g = resistance.ground_and_invert(lap, 2)
    assert g.n_reduced == 3
    assert g.ground_index == 2
    assert np.allclose(g.gamma, np.diag(g.entries))


def test_disconnected_network_raises():
    lap = laplacian(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(resistance.SingularNetworkError):
        resistance.resistance_matrix(lap, 0)


def test_bad_ground_index():
    lap = laplacian(2, [(0, 1, 1.0)])
    with pytest.raises(ValueError, match="ground index"):
        resistance.resistance_matrix(lap, 5)


def test_asymmetric_input_warns():
    lap = laplacian(3, [(0, 1, 1.0), (1, 2, 1.0)])
    lap[0, 1] += 1e-3
    with pytest.warns(UserWarning, match="symmetrizing"):
        resistance.ground_and_invert(lap, 0)


def test_diagonal_exactly_zero(case9):
    h = netmat.power_angle_jacobian(case9, netmat.flat_profile(case9))
    e = resistance.resistance_matrix(h, 0).entries
    assert np.all(np.diag(e) == 0.0)


def test_check_metric_passes_on_bundled(bundled_cases):
    for case in bundled_cases.values():
        h = netmat.power_angle_jacobian(case, netmat.flat_profile(case))
        e = resistance.resistance_matrix(h, case.slack_index)
        report = resistance.check_metric(e, tolerance=1e-9)
        assert report.passed, (case.name, report)


def test_check_metric_catches_violation():
    bad = np.array([
        [0.0, 1.0, 5.0],
        [1.0, 0.0, 1.0],
        [5.0, 1.0, 0.0],
    ])
    report = resistance.check_metric(bad)
    assert not report.passed
    assert report.max_triangle_violation == pytest.approx(3.0)
    assert report.worst_triple in ((0, 1, 2), (2, 1, 0))
