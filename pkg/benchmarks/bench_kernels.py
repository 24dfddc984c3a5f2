"""Compare the compiled and numpy row-reduction backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Times the raw kernel on random matrices mod p and one end-to-end exchange
quiver enumeration per backend, and checks both backends agree.
"""

import argparse
import json
import time

import numpy as np

from tiltcount import linalg
from tiltcount.dynkin import auslander_presentation
from tiltcount.tau import exchange_quiver

P = 32003


def time_rref(shape, repeat, rng):
    mats = [rng.integers(0, P, size=shape, dtype=np.int64) for _ in range(repeat)]
    best = float("inf")
    results = []
    for m in mats:
        t = time.perf_counter()
        results.append(linalg.rref(m, P))
        best = min(best, time.perf_counter() - t)
    return best, results


def time_enumeration(spec):
    A = auslander_presentation(spec)
    t = time.perf_counter()
    Q = exchange_quiver(A)
    return time.perf_counter() - t, len(Q.nodes), len(Q.edges)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--spec", default="A4", help="Auslander algebra to enumerate end to end")
    ap.add_argument("--json", default=None)
    args = ap.parse_args()

    backends = linalg.available_backends()
    report = {"backends": backends, "kernel": {}, "end_to_end": {}}
    shapes = [(8, 12), (32, 48), (96, 128), (200, 260)]
    reference = {}
    for name in backends:
        linalg.set_backend(name)
        rng = np.random.default_rng(1)
        for shape in shapes:
            best, results = time_rref(shape, args.repeat, rng)
            report["kernel"].setdefault(str(shape), {})[name] = best
            pivots = [r[1] for r in results]
            if str(shape) in reference and reference[str(shape)] != pivots:
                raise SystemExit(f"backends disagree on {shape}")
            reference[str(shape)] = pivots
        secs, nodes, edges = time_enumeration(args.spec)
        report["end_to_end"][name] = {"seconds": secs, "nodes": nodes, "edges": edges}

    print(f"{'shape':>12} " + " ".join(f"{b:>12}" for b in backends) + ("      speedup" if len(backends) > 1 else ""))
    for shape, row in report["kernel"].items():
        line = f"{shape:>12} " + " ".join(f"{row[b] * 1e3:10.3f}ms" for b in backends)
        if "cython" in row and "python" in row:
            line += f"  {row['python'] / row['cython']:10.1f}x"
        print(line)
    for b, row in report["end_to_end"].items():
        print(f"{args.spec} exchange quiver [{b}]: {row['nodes']} nodes, {row['edges']} edges, {row['seconds']:.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)


if __name__ == "__main__":
    main()
