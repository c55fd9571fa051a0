"""Compare the compiled and pure-Python expression kernels.

    python benchmarks/bench_kernel.py [--points N] [--repeat R]

Reports the best-of-R wall time for batch evaluation (the path used for
dense-point limits) and for a loop of single-point calls, plus the
speedup of the compiled kernel.  Both backends must agree bit for bit;
the script checks that before timing.
"""
import argparse
import time

import numpy as np

from tscalc import _kernel
from tscalc.expr import compile_expr, parse

EXPRESSIONS = {
    "poly": "t^3 - 2*t^2 + 0.5*t - 1",
    "trig": "sin(t)*exp(-t^2/4) + cos(3*t)",
    "piecewise": "if mod(t, 2) == 1 then t else 10*t",
    "guarded": "if t > 0 then ln(t) + sqrt(t) else abs(t)",
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--single", type=int, default=20_000, help="single-point calls per run")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = _kernel.available_backends()
    print(f"default backend: {_kernel.BACKEND}; available: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernel not built; only the fallback can be timed")

    ts = np.linspace(-5, 5, args.points)
    singles = ts[:: max(1, args.points // args.single)][: args.single].tolist()
    header = f"{'expression':<10} {'mode':<7} " + " ".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>9}"
    print(header)
    for name, text in EXPRESSIONS.items():
        prog = compile_expr(parse(text))
        if len(backends) > 1:
            a = _kernel.run_batch(prog, ts, 1e-9, "python")
            b = _kernel.run_batch(prog, ts, 1e-9, "cython")
            ok = a[1] == 0
            assert np.array_equal(a[1], b[1]) and np.array_equal(a[0][ok].view(np.uint64), b[0][ok].view(np.uint64))
        rows = {
            "batch": lambda be: best_of(lambda: _kernel.run_batch(prog, ts, 1e-9, be), args.repeat),
            "single": lambda be: best_of(lambda: [_kernel.run_point(prog, t, 1e-9, be) for t in singles],
                                         args.repeat),
        }
        for mode, timer in rows.items():
            times = {be: timer(be) for be in backends}
            line = f"{name:<10} {mode:<7} " + " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
            if len(backends) > 1:
                line += f" {times['python'] / times['cython']:>8.1f}x"
            print(line)


if __name__ == "__main__":
    main()
