"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each line reports the best-of-N wall time per backend and the speed-up.
Results are checked for agreement before timing.
"""

import argparse
import time

from apnext import backend
from apnext.catalog import FunctionSpec, instantiate
from apnext.extend import prop4_rows
from apnext.field import field_new
from apnext.ortho import ortho_derivative


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases():
    for n in (7, 9, 11):
        ctx = field_new(n)
        F = instantiate(ctx, FunctionSpec("gold", t=1))
        rows = prop4_rows(ctx, ortho_derivative(ctx, F))
        yield f"solve_affine        n={n:2d} ({rows.shape[0]} rows, {n * n} cols)", "solve_affine", (rows, n * n)
        yield f"differential_unif.  n={n:2d}", "differential_uniformity", (F.table, n, n)
        yield f"linearity           n={n:2d}", "linearity", (F.table, n, n)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    impls = backend.available_backends()
    if "cython" not in impls:
        print("compiled extension not built; only the python backend is available")
    names = sorted(impls)
    print(f"{'kernel':<48s}" + "".join(f"{name:>12s}" for name in names) + ("     speed-up" if len(names) > 1 else ""))
    for label, fn_name, fn_args in cases():
        results = {name: getattr(impls[name], fn_name)(*fn_args) for name in names}
        values = list(results.values())
        assert all(str(v) == str(values[0]) for v in values), f"backends disagree on {label}"
        times = {name: best_of(lambda: getattr(impls[name], fn_name)(*fn_args), args.repeat) for name in names}
        line = f"{label:<48s}" + "".join(f"{times[name] * 1e3:10.2f}ms" for name in names)
        if len(names) > 1:
            line += f"   {times['python'] / times['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
