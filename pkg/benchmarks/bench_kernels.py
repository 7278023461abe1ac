"""Compare the compiled and pure-Python permutation search kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each workload runs both routes (lattice witnesses and class admissibility)
on fresh analyses so nothing is cached between backends. Results from the
two backends are checked for equality before timings are reported.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from toricaut import kernels
from toricaut.automorphisms import AutomorphismAnalysis
from toricaut.cone import build_cone
from toricaut.errors import NonPointedConeError


def affine(n):
    return build_cone(n, [[int(i == j) for j in range(n)] for i in range(n)])


def hexagon_cone():
    pts = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    return build_cone(3, [[x, y, 1] for x, y in pts])


def random_batch(seed, count, n=4, r=7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        rays = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
        if any(not any(v) for v in rays):
            continue
        try:
            c = build_cone(n, rays, reduce=True)
        except NonPointedConeError:
            continue
        if c.rank == n:
            out.append(c)
    return out


def workloads(quick):
    w = [
        ("A^6", [affine(6)]),
        ("A^7", [affine(7)]),
        ("hexagon cone", [hexagon_cone()]),
        ("20 random cones in Z^4", random_batch(7, 20)),
    ]
    if not quick:
        w.insert(2, ("A^8", [affine(8)]))
    return w


def run(cones):
    out = []
    for c in cones:
        a = AutomorphismAnalysis(c, cap=12)
        out.append((a.admissible, a.class_admissible))
    return out


def timed(backend, cones, repeat):
    kernels.set_backend(backend)
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run(cones)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest workload")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the Python backend is available")
    original = kernels.get_backend()
    print(f"{'workload':<26}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    try:
        for name, cones in workloads(args.quick):
            row = {}
            results = {}
            for b in backends:
                row[b], results[b] = timed(b, cones, args.repeat)
            if len(set(map(repr, results.values()))) != 1:
                raise SystemExit(f"backends disagree on {name}")
            line = f"{name:<26}" + "".join(f"{row[b]:>11.4f}s" for b in backends)
            if len(backends) > 1:
                line += f"{row['python'] / row['compiled']:>11.1f}x"
            print(line)
    finally:
        kernels.set_backend(original)


if __name__ == "__main__":
    main()
