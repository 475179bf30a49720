"""Benchmark the compiled placement kernel against the pure-Python twin.

Runs the exact solver on the topological and electrical adjacency of
each bundled case with both backends and reports wall time and explored
node counts.  The pure backend needs tens of seconds on case118, so
that case is skipped unless --full is given.

Usage: python3 benchmarks/bench_solver.py [--full] [--budget SECONDS]
"""

import argparse
import time

from gridpmu import _mdspure, cli, netmat, placement


def masks_for(adj):
    rows, n = placement._row_masks(adj)
    return rows, n


def run_backend(kernel, rows, n, budget):
    start = time.monotonic()
    chosen, proved, lower, nodes = kernel.solve(rows, n, budget)
    return time.monotonic() - start, len(chosen), proved, nodes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true",
                    help="include case118 on the pure backend")
    ap.add_argument("--budget", type=float, default=600.0)
    args = ap.parse_args()

    try:
        from gridpmu import _mdscore
    except ImportError:
        raise SystemExit("compiled kernel not built; run pip install -e .")

    print(f"{'instance':<22} {'backend':<8} {'count':>5} {'proved':>6} "
          f"{'nodes':>10} {'seconds':>9}")
    for name in cli.BUNDLED:
        case = cli.load_case(name)
        instances = [
            (f"{name}-topo", netmat.topological_adjacency(case)),
            (f"{name}-elec", cli.electrical_adjacency(case).adjacency),
        ]
        for label, adj in instances:
            rows, n = masks_for(adj)
            results = {}
            for kernel in (_mdscore, _mdspure):
                if (kernel is _mdspure and name == "case118"
                        and not args.full):
                    continue
                t, count, proved, nodes = run_backend(
                    kernel, rows, n, args.budget)
                results[kernel.BACKEND] = count
                print(f"{label:<22} {kernel.BACKEND:<8} {count:>5} "
                      f"{str(proved):>6} {nodes:>10} {t:>9.3f}")
            if len(set(results.values())) > 1:
                raise SystemExit(f"backend disagreement on {label}: "
                                 f"{results}")


if __name__ == "__main__":
    main()
