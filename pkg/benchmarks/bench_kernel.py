"""Compare the compiled kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat 3] [--quick]

Each workload runs once per backend in the same process; the backend is
switched by clearing ``virtres.kernel.compiled``.  Both runs must produce
identical results, otherwise the script exits non-zero.
"""

import argparse
import sys
import time

from virtres import kernel
from virtres.points import hilbert_eval, ideal_of_points, random_points
from virtres.resolve import betti, min_free_resolution
from virtres.scalar import GF, QQ


def _workloads(quick):
    sizes = [(6, QQ, 1000), (8, QQ, 1000), (12, GF(32003), 32003)]
    if quick:
        sizes = sizes[:1]
    out = []
    for n, field, bound in sizes:
        X = random_points(n, 11, bound, field)
        tag = f"{n} pts / {field}"
        out.append((f"ideal  {tag}", lambda X=X: ideal_of_points(X).gens))
        out.append((f"hilb   {tag}", lambda X=X: hilbert_eval(X, n + 2, n + 2)))
        out.append((f"mfr    {tag}",
                    lambda X=X: betti(min_free_resolution(ideal_of_points(X))).lines()))
    return out


def _time(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smallest workload only")
    args = ap.parse_args(argv)

    fast = kernel.compiled
    if fast is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 2

    print(f"{'workload':32} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    status = 0
    for name, fn in _workloads(args.quick):
        kernel.compiled = fast
        tc, rc = _time(fn, args.repeat)
        kernel.compiled = None
        tp, rp = _time(fn, args.repeat)
        kernel.compiled = fast
        flag = ""
        if rc != rp:
            flag = "  MISMATCH"
            status = 1
        print(f"{name:32} {tc:10.3f} {tp:10.3f} {tp / tc:8.1f}{flag}")
    return status


if __name__ == "__main__":
    sys.exit(main())
