#!/usr/bin/env python3
"""Compare the compiled scoring kernels against the pure Python fallback.

Times the three kernel-bound workloads (catalog scoring, greedy-growth
style single-extension probes, whole-graph components) under each
available backend and prints a speedup table.

    python benchmarks/bench_kernels.py [--nodes 2500] [--degree 12]
"""

from __future__ import annotations

import argparse
import random
import time

from sparcnet import (
    Complex,
    ComplexSet,
    ce_score,
    connected_components,
    derivability_report,
    random_network,
)
from sparcnet import _kernels


def build_workload(n_nodes, avg_degree, n_complexes, seed=7):
    rng = random.Random(seed)
    g = random_network([f"p{i:05d}" for i in range(n_nodes)], avg_degree, seed=seed)
    nodes = sorted(g.nodes)
    complexes = ComplexSet(
        Complex(f"b{i:04d}", frozenset(rng.sample(nodes, rng.randint(4, 30))))
        for i in range(n_complexes)
    )
    probes = []
    for _ in range(400):
        cluster = frozenset(rng.sample(nodes, rng.randint(6, 20)))
        candidates = rng.sample(nodes, 5)
        probes.append((cluster, candidates))
    return g, complexes, probes


def time_backend(backend, g, complexes, probes):
    _kernels.set_backend(backend)
    g._csr_cache = None  # measure from a cold cache either way
    timings = {}

    t0 = time.perf_counter()
    report = derivability_report(g, complexes, k=4, t_ce=0.4)
    timings["derivability_report"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    acc = 0.0
    for cluster, candidates in probes:
        for p in candidates:
            acc += ce_score(g, cluster | {p})
    timings["growth_probes"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    comps = connected_components(g, g.nodes)
    timings["connected_components"] = time.perf_counter() - t0

    _kernels.set_backend(None)
    return timings, (report.index_counts, round(acc, 6), len(comps))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=2500)
    ap.add_argument("--degree", type=float, default=12.0)
    ap.add_argument("--complexes", type=int, default=250)
    args = ap.parse_args()

    g, complexes, probes = build_workload(args.nodes, args.degree, args.complexes)
    print(f"workload: {g.node_count} nodes, {g.edge_count} edges, "
          f"{len(complexes)} complexes, {len(probes) * 5} growth probes")

    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the pure backend only")

    results = {}
    checks = {}
    for backend in backends:
        results[backend], checks[backend] = time_backend(backend, g, complexes, probes)

    if len(checks) == 2:
        assert checks["cython"] == checks["python"], "backends disagree!"
        print("backend outputs identical: yes")

    ops = ["derivability_report", "growth_probes", "connected_components"]
    width = max(len(op) for op in ops)
    header = f"{'operation':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for op in ops:
        row = f"{op:<{width}}  " + "".join(f"{results[b][op]:>11.3f}s" for b in backends)
        if len(backends) == 2:
            row += f"{results['python'][op] / results['cython'][op]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
