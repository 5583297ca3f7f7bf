"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--suites]

Kernel timings run in-process against both modules; ``--suites`` also times
whole verification suites in subprocesses with ``SLICE_CLIFFORD_PURE`` on
and off.
"""

import argparse
import os
import subprocess
import sys
import timeit

from slice_clifford import kernels
from slice_clifford.hermite import hermite_function, hermite_poly


def kernel_cases():
    h = hermite_poly(6, 4).poly._terms
    g = hermite_poly(5, 3).poly._terms
    f1 = hermite_function(5, 4).value.poly._terms
    f2 = hermite_function(3, 4).value.poly._terms
    mv = {(mask, 0, 0, 1): 1 + mask for mask in range(16)}
    return {
        "poly_mul": lambda k: k.poly_mul(h, g),
        "poly_dirac": lambda k: k.poly_dirac(h),
        "poly_pair_project": lambda k: k.poly_pair_project(f1, f2),
        "mv_mul": lambda k: k.mv_mul(mv, mv),
    }


SUITES = {
    "verify osp": ["verify", "osp", "--degree", "8"],
    "verify orthogonality": ["verify", "orthogonality"],
    "verify adjoint": ["verify", "adjoint"],
}


def time_suite(argv, pure):
    env = dict(os.environ, SLICE_CLIFFORD_PURE="1" if pure else "0")
    code = ("import sys, time; from slice_clifford.cli import run; t = time.perf_counter(); "
            f"rc = run({argv!r}); print(time.perf_counter() - t, file=sys.stderr)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    return float(out.stderr.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--suites", action="store_true")
    args = parser.parse_args()

    backends = {"python": kernels.load("python")}
    try:
        backends["cython"] = kernels.load("cython")
    except ImportError:
        print("compiled kernels unavailable; timing the pure backend only")

    print(f"{'kernel':<20}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for name, fn in kernel_cases().items():
        times = {b: min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
                 for b, mod in backends.items()}
        ratio = times["python"] / times["cython"] if "cython" in times else float("nan")
        cells = "".join(f"{t * 1e3:>12.3f}ms" for t in times.values())
        print(f"{name:<20}{cells}{ratio:>9.2f}x")

    if args.suites:
        print()
        print(f"{'suite':<24}{'python':>10}{'cython':>10}{'speedup':>10}")
        for name, argv in SUITES.items():
            tp = time_suite(argv, pure=True)
            tc = time_suite(argv, pure=False)
            print(f"{name:<24}{tp:>9.2f}s{tc:>9.2f}s{tp / tc:>9.2f}x")


if __name__ == "__main__":
    main()
