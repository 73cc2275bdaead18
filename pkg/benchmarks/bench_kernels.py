"""Compare the compiled and pure-Python GF(2) kernels.

Kernel timings run both backends in-process on the same inputs; the
end-to-end timings build rings and run the zcl search in subprocesses, with
GRASSTC_PURE_PYTHON toggling the backend.

    python3 benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from grasstc import kernels

E2E = """
import time
from grasstc import build_ring, zcl_basic, BACKEND
t = time.perf_counter()
r = build_ring({k}, {n}); r.build_all(); zcl_basic(r)
print(BACKEND, time.perf_counter() - t)
"""


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def random_rows(nrows: int, ncols: int, density: float, seed: int) -> list[int]:
    rng = random.Random(seed)
    out = []
    for _ in range(nrows):
        row = 0
        for c in range(ncols):
            if rng.random() < density:
                row |= 1 << c
        out.append(row)
    return out


def bench_rref(backends, sizes, repeat):
    print("rref (rows x cols, density 0.1), best of", repeat)
    for nrows, ncols in sizes:
        rows = random_rows(nrows, ncols, 0.1, nrows * 7919 + ncols)
        results = {}
        line = f"  {nrows:5d} x {ncols:5d}"
        for name, mod in backends:
            results[name] = mod.rref(rows, ncols)
            line += f"  {name} {best_of(lambda: mod.rref(rows, ncols), repeat) * 1e3:9.2f} ms"
        assert len({repr(v) for v in results.values()}) == 1, "backends disagree"
        print(line)


def bench_outer(backends, sizes, repeat):
    print("outer_xor_nonzero (basis sizes, 2000 term pairs), best of", repeat)
    for lb, rb in sizes:
        rng = random.Random(lb * 31 + rb)
        ltab = [rng.getrandbits(lb) for _ in range(200)]
        rtab = [rng.getrandbits(rb) for _ in range(200)]
        lidx = [rng.randrange(200) for _ in range(2000)]
        ridx = [rng.randrange(200) for _ in range(2000)]
        line = f"  {lb:5d} x {rb:5d}"
        answers = set()
        for name, mod in backends:
            lp, rp = mod.pack(ltab, lb), mod.pack(rtab, rb)
            answers.add(mod.outer_xor_nonzero(lp, lidx, rp, ridx, lb))
            line += f"  {name} {best_of(lambda: mod.outer_xor_nonzero(lp, lidx, rp, ridx, lb), repeat) * 1e3:9.2f} ms"
        assert len(answers) == 1, "backends disagree"
        print(line)


def bench_end_to_end(pairs):
    print("ring build + zcl search, wall time per backend")
    for k, n in pairs:
        line = f"  G_{k}(R^{n})"
        for pure in (False, True):
            env = dict(os.environ)
            env.pop("GRASSTC_PURE_PYTHON", None)
            if pure:
                env["GRASSTC_PURE_PYTHON"] = "1"
            out = subprocess.run([sys.executable, "-c", E2E.format(k=k, n=n)], env=env,
                                 capture_output=True, text=True, check=True).stdout.split()
            line += f"  {out[0]} {float(out[1]):8.3f} s"
        print(line)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.insert(0, ("compiled", kernels.compiled_backend))
    else:
        print("compiled backend not built; timing the fallback only")
    repeat = 2 if args.quick else 5
    sizes = [(200, 300), (800, 1000)] if args.quick else [(200, 300), (800, 1000), (2000, 2500)]
    bench_rref(backends, sizes, repeat)
    bench_outer(backends, [(64, 64), (400, 400)], repeat)
    bench_end_to_end([(3, 10)] if args.quick else [(3, 16), (4, 16), (5, 13)])


if __name__ == "__main__":
    main()
