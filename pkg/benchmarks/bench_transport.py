"""Time the compiled and pure-Python transport kernels on the P6 monodromy loops.

Run from the repository root: ``python3 benchmarks/bench_transport.py [repeats]``.
"""

import sys
import time

import numpy as np

sys.path.insert(0, "src")

from painleve_lab import _transport_py  # noqa: E402
from painleve_lab.catalog import build_solution  # noqa: E402
from painleve_lab.lax import build_pair  # noqa: E402
from painleve_lab.monodromy import _as_rational, p6_loops  # noqa: E402
from painleve_lab.systems import ParamSet  # noqa: E402

try:
    from painleve_lab import _transport as _compiled
except ImportError:
    _compiled = None


def workload(t=0.1):
    p = ParamSet.from_alpha("P6", [0.2, 0.3, None, 0.25, 0.1], complete=True)
    sol = build_solution("P6_0_I", p, order=30)
    A = _as_rational(build_pair("P6_normalized", p, sol, t).A)
    args = (A.coeffs, A.centers, A.powers)
    return [(args, loop.as_array()) for loop in p6_loops(t).values()]


def run(kernel, jobs):
    steps = 0
    for (coeffs, centers, powers), pieces in jobs:
        _, n = kernel.transport(coeffs, centers, powers, pieces, np.eye(2), tol=1e-12)
        steps += n
    return steps


def bench(kernel, jobs, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        steps = run(kernel, jobs)
        best = min(best, time.perf_counter() - t0)
    return best, steps


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    repeats = int(argv[0]) if argv else 3
    jobs = workload()
    py_time, steps = bench(_transport_py, jobs, repeats)
    print(f"python : {py_time * 1e3:9.2f} ms  ({steps} steps, best of {repeats})")
    if _compiled is None:
        print("cython : extension not built")
        return 0
    c_time, c_steps = bench(_compiled, jobs, repeats)
    print(f"cython : {c_time * 1e3:9.2f} ms  ({c_steps} steps, best of {repeats})")
    print(f"speedup: {py_time / c_time:9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
