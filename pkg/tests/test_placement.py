import random

import numpy as np
import pytest

from gridpmu import _mdspure, cli, netmat, placement
from gridpmu.placement import (FEASIBLE, OPTIMAL, brute_force_placement,
                               greedy_cover, solve_placement)

try:
    from gridpmu import _mdscore
except ImportError:
    _mdscore = None


def random_adjacency(rng, n, p=0.25):
    mat = np.eye(n, dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                mat[i, j] = mat[j, i] = 1
    return mat


def test_star_graph():
    n = 6
    mat = np.eye(n, dtype=np.uint8)
    mat[0, 1:] = 1
    mat[1:, 0] = 1
    result = solve_placement(mat)
    assert result.count == 1
    assert result.sites == (0,)
    assert result.status == OPTIMAL
    assert result.lower_bound == 1


def test_path_graph():
    n = 7
    mat = np.eye(n, dtype=np.uint8)
    for i in range(n - 1):
        mat[i, i + 1] = mat[i + 1, i] = 1
    result = solve_placement(mat)
    assert result.count == 3           # ceil(7 / 3)
    assert result.status == OPTIMAL
    assert np.all(mat @ np.array(result.x) >= 1)


def test_identity_needs_everything():
    mat = np.eye(5, dtype=np.uint8)
    result = solve_placement(mat)
    assert result.count == 5
    assert result.x == (1, 1, 1, 1, 1)


def test_matches_brute_force_random():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randrange(4, 19)
        mat = random_adjacency(rng, n, p=rng.uniform(0.1, 0.5))
        exact = solve_placement(mat)
        oracle = brute_force_placement(mat)
        assert exact.count == oracle.count, mat
        assert exact.status == OPTIMAL
        assert np.all(mat @ np.array(exact.x) >= 1)


def test_greedy_is_feasible_not_worse_than_n():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(4, 25)
        mat = random_adjacency(rng, n)
        greedy = greedy_cover(mat)
        assert greedy.status == FEASIBLE
        assert np.all(mat @ np.array(greedy.x) >= 1)
        assert solve_placement(mat).count <= greedy.count


def test_deterministic_repeats():
    rng = random.Random(99)
    mat = random_adjacency(rng, 16)
    first = solve_placement(mat)
    for _ in range(3):
        again = solve_placement(mat)
        assert again.x == first.x
        assert again.node_count == first.node_count


def test_unit_diagonal_required():
    mat = np.zeros((3, 3), dtype=np.uint8)
    with pytest.raises(AssertionError, match="unit diagonal"):
        solve_placement(mat)


def test_brute_force_limit():
    mat = np.eye(26, dtype=np.uint8)
    with pytest.raises(ValueError, match="25"):
        brute_force_placement(mat)


def test_accepts_binary_adjacency(case9):
    adj = netmat.topological_adjacency(case9)
    assert solve_placement(adj).count == 3


def test_budget_expiry_reports_feasible():
    # hard instance, no time to prove anything past the greedy incumbent
    pc = cli.load_case("case118")
    adj = netmat.topological_adjacency(pc)
    rows, n = placement._row_masks(adj)
    chosen, proved, lower, nodes = _mdspure.solve(rows, n, budget=1e-6)
    assert not proved
    covered = 0
    for j in chosen:
        covered |= rows[j]
    assert covered == (1 << n) - 1
    assert 1 <= lower <= len(chosen)


def test_backends_agree(bundled_cases):
    if _mdscore is None:
        pytest.skip("compiled kernel not built")
    for name in ("case9", "case14", "case30", "case57"):
        for adj in (netmat.topological_adjacency(bundled_cases[name]),
                    cli.electrical_adjacency(bundled_cases[name]).adjacency):
            rows, n = placement._row_masks(adj)
            got_c = _mdscore.solve(rows, n, 600.0)
            got_p = _mdspure.solve(rows, n, 600.0)
            assert got_c == got_p


def test_backend_name_exposed():
    assert placement.BACKEND in ("cython", "pure")
