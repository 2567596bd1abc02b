"""Compare the compiled and pure-Python oracle kernels on the same workload.

    python3 benchmarks/bench_oracle.py [--stride 7] [--repeat 3]

Both kernels must return identical results; the script exits nonzero if they
do not or if the compiled kernel is unavailable.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time

from gallai import _oracle_py
from gallai.generators import all_connected_graphs, all_labeled_trees, complete_graph


def workload(stride: int) -> list[tuple[int, list[tuple[int, int]]]]:
    graphs = [g for n in range(2, 6) for g in all_connected_graphs(n)]
    graphs += itertools.islice(all_connected_graphs(6), 0, None, stride)
    graphs += itertools.islice(all_labeled_trees(8), 0, None, stride * 10)
    graphs += [complete_graph(k) for k in range(4, 10)]
    return [(g.n, [(a - 1, b - 1) for a, b in g.sorted_edges()]) for g in graphs]


def timed(solve, jobs, repeat: int) -> tuple[float, list]:
    best = float("inf")
    out: list = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [solve(nv, es, len(es) + 1) for nv, es in jobs]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--stride", type=int, default=7, help="take every k-th n=6 graph")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        from gallai import _oracle_kernel
    except ImportError:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return 1
    jobs = workload(args.stride)
    t_py, r_py = timed(_oracle_py.solve, jobs, args.repeat)
    t_c, r_c = timed(_oracle_kernel.solve, jobs, args.repeat)
    nodes = sum(r[2] for r in r_py)
    print(f"graphs            {len(jobs)}")
    print(f"search nodes      {nodes}")
    print(f"python kernel     {t_py:8.3f} s")
    print(f"compiled kernel   {t_c:8.3f} s")
    print(f"speedup           {t_py / t_c:8.1f}x")
    if r_py != r_c:
        print("MISMATCH between kernels")
        return 1
    print("results identical")
    return 0


if __name__ == "__main__":
    sys.exit(main())
