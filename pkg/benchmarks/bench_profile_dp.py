"""Time the profile sweep under each backend.

    python benchmarks/bench_profile_dp.py [--sizes 9 13 17] [--repeat 3]

The numba kernel is compiled once before timing.
"""
import argparse
import time

from holey import _kernels
from holey.grid import Cell
from holey.profile_dp import count_reference


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[9, 13, 17])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--reference-max", type=int, default=13, help="skip the pure-Python DP above this size")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        _kernels.sweep(3, 3, 0, 0, backend="numba")

    print(f"{'board':>8} {'hole':>6} " + " ".join(f"{b:>10}" for b in [*backends, "python"]))
    for n in args.sizes:
        mid = n // 2
        row = []
        values = set()
        for b in backends:
            row.append(best_of(lambda: values.add(_kernels.sweep(n, n, mid, mid, backend=b)), args.repeat))
        if n <= args.reference_max:
            row.append(best_of(lambda: values.add(count_reference(n, n, Cell(mid + 1, mid + 1))), 1))
        cells = " ".join(f"{t:10.4f}" for t in row)
        if n > args.reference_max:
            cells += f" {'-':>10}"
        assert len(values) == 1, values
        print(f"{n:>3}x{n:<4} {'center':>6} {cells}")


if __name__ == "__main__":
    main()
