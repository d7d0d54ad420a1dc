#!/usr/bin/env python3
"""Benchmark the exact evaluation kernels (compiled vs pure Python).

The evaluation of compiled expression programs at rational sample points is
the hot inner loop of the probabilistic zero test and of the symmetry
solver's matrix assembly; this script times both kernel implementations on
representative workloads and reports the speedup.

Run:  python benchmarks/bench_eval.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

from wavesym import parse
from wavesym._evalkernel_py import run_exact as _py_run  # noqa: F401
from wavesym.evaluate import KERNEL_NAME, compile_program
import wavesym._evalkernel_py as pykernel

try:
    import wavesym._evalkernel as ckernel
except ImportError:
    ckernel = None

WORKLOADS = {
    "invariance residual": (
        "2*t*x^2*u^(-4) - 4*t^2*u^(-3) + x^3*u^(-4)*(t^2 - x^2)^(-2)"
        " + 7*(t*u + x)^3 - t*x*u",
        ("t", "x", "u"),
    ),
    "power tower": ("(1 + t^2)^6*(1 - t + t^2)^(-3) + t^17 - 5*t^(1/2)", ("t",)),
    "wide polynomial": (
        "+".join(f"{k}*t^{k % 7}*x^{(k + 3) % 5}*u^{k % 4}" for k in range(1, 40)),
        ("t", "x", "u"),
    ),
}


def draw_points(names, n, seed=7):
    rng = random.Random(seed)
    return [
        [Fraction(rng.randint(1, 70), 7) ** 2 for _ in names] for _ in range(n)
    ]


def run(kernel, prog, points):
    code, cn, cd = prog.code, prog.consts_n, prog.consts_d
    total = 0
    for vals in points:
        vn = [v.numerator for v in vals]
        vd = [v.denominator for v in vals]
        try:
            n, d = kernel.run_exact(code, cn, cd, vn, vd)
        except pykernel.KernelSingular:
            continue
        total += n != 0
    return total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=2000)
    args = ap.parse_args()

    print(f"active kernel at import: {KERNEL_NAME}")
    if ckernel is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    kernels = [("python", pykernel)] + ([("cython", ckernel)] if ckernel else [])

    for name, (text, names) in WORKLOADS.items():
        e = parse(text)
        prog = compile_program(e, tuple(names))
        points = draw_points(names, args.points)
        print(f"\n{name}: {len(prog.code) // 2} instructions, {args.points} points")
        times = {}
        for kname, kernel in kernels:
            best = None
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                run(kernel, prog, points)
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
            times[kname] = best
            rate = args.points / best
            print(f"  {kname:>7}: {best * 1e3:8.1f} ms   ({rate:,.0f} evals/s)")
        if len(times) == 2:
            print(f"  speedup: {times['python'] / times['cython']:.2f}x")


if __name__ == "__main__":
    main()
