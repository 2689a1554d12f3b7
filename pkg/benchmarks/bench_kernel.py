#!/usr/bin/env python3
"""Compare the compiled fiber kernel against the pure-Python fallback.

Runs the same workloads through both implementations and prints a small
table.  Usage: python benchmarks/bench_kernel.py
"""

import time

from markov_atlas import Graph, cycle_graph, complete_graph
from markov_atlas.fiber import _kernel_py

try:
    from markov_atlas.fiber import _kernel_c
except ImportError:
    _kernel_c = None


def workloads():
    c6 = cycle_graph("abcdef")
    k4 = complete_graph("abcd")
    tree6 = Graph(tuple("abcdef"), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    yield ("C6 group_tables N=4",
           lambda k: k.group_tables(6, sorted(c6.edges), 4))
    yield ("tree6 group_tables N=4",
           lambda k: k.group_tables(6, sorted(tree6.edges), 4))
    yield ("K4 group_tables N=6",
           lambda k: k.group_tables(4, sorted(k4.edges), 6))

    groups = _kernel_py.group_tables(6, sorted(c6.edges), 4)
    big = max(groups.values(), key=len)
    yield (f"C6 bottleneck, fiber size {len(big)}",
           lambda k: k.bottleneck_norm(big))
    yield (f"C6 components, fiber size {len(big)}",
           lambda k: k.component_labels(big, 8))


def timed(fn, kernel, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(kernel)
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    return best, result


def main():
    print(f"{'workload':<36} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in workloads():
        t_py, r_py = timed(fn, _kernel_py)
        if _kernel_c is None:
            print(f"{name:<36} {t_py:>9.3f}s {'n/a':>10}")
            continue
        t_c, r_c = timed(fn, _kernel_c)
        assert r_py == r_c, f"kernel results differ on {name}"
        print(f"{name:<36} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x")
    if _kernel_c is None:
        print("\ncompiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
