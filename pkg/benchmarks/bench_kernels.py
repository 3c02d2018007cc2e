"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 100]

Times the Jacobi eigensolver, the trapezoid time average at the reference
setting (T = 100*pi, 1001 samples) and a full karate-club edge-removal sweep.
"""

import argparse
import time

import numpy as np

import qwalknet
from qwalknet.datasets import GeneratorParams, karate_club, planted_partition
from qwalknet.experiments import edge_removal_sweep
from qwalknet.graph import adjacency_matrix
from qwalknet.spectral import eigh
from qwalknet.walk import WalkConfig, average_populations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--size", type=int, default=50, help="nodes per community of the planted graph (2 communities)")
    args = parser.parse_args()

    karate = karate_club().graph
    planted = planted_partition(GeneratorParams(2, args.size, 0.2, 0.02, 7)).graph
    cfg = WalkConfig()
    a_karate = adjacency_matrix(karate)
    a_planted = adjacency_matrix(planted)
    d_planted = eigh(a_planted)

    cases = [
        ("eigh karate (N=34)", lambda: eigh(a_karate)),
        (f"eigh planted (N={planted.n})", lambda: eigh(a_planted)),
        ("time average karate", lambda: average_populations(karate, cfg)),
        (f"time average planted (N={planted.n}, fixed eigh)",
         lambda: average_populations(planted, cfg, d_planted)),
        ("karate sweep (78 edges)", lambda: edge_removal_sweep(karate, cfg)),
    ]
    backends = qwalknet.available_backends()
    results = {}
    for name in backends:
        qwalknet.set_backend(name)
        for label, fn in cases:
            results[(label, name)] = best_of(fn, args.repeat)

    width = max(len(label) for label, _ in cases)
    header = f"{'case':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += "   speedup"
    print(header)
    for label, _ in cases:
        row = f"{label:<{width}}  " + "  ".join(f"{results[(label, b)]:>9.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"  {results[(label, 'python')] / results[(label, 'compiled')]:>8.1f}x"
        print(row)

    if len(backends) == 2:
        qwalknet.set_backend("compiled")
        pc = average_populations(karate, cfg)
        qwalknet.set_backend("python")
        pp = average_populations(karate, cfg)
        print(f"max |compiled - python| karate populations: {np.max(np.abs(pc - pp)):.2e}")


if __name__ == "__main__":
    main()
