"""Time the monocyclic-state kernels: numba against the numpy fallback.

    python3 benchmarks/bench_states.py [--max-crossings 20] [--repeat 3]
"""

import argparse
import time

from knotsquares import _kernels
from knotsquares import diagrams as dg


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return value, min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-crossings", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        _kernels.count_monocyclic(dg.compile_rational([2, 2]).arcs_array(), "numba")  # compile once

    print(f"{'crossings':>9} {'det':>8} " + " ".join(f"{b + ' s':>10}" for b in backends) + f" {'speedup':>8}")
    for c in range(8, args.max_crossings + 1, 2):
        half = [2] * (c // 4) + [1] * (c // 2 - 2 * (c // 4))
        arcs = dg.compile_rational(half + half[::-1]).arcs_array()
        row = {}
        for b in backends:
            row[b] = best_of(lambda: _kernels.count_monocyclic(arcs, b), args.repeat)
        dets = {v for v, _ in row.values()}
        assert len(dets) == 1, row
        speed = row["numpy"][1] / row["numba"][1] if "numba" in row else float("nan")
        cells = " ".join(f"{row[b][1]:10.4f}" for b in backends)
        print(f"{len(arcs):>9} {dets.pop():>8} {cells} {speed:8.1f}x")


if __name__ == "__main__":
    main()
