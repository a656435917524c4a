"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_accel.py [--repeat N]

Workloads are the ones the test suite leans on: one closure level over the
homogeneous universe used by the exhaustive agreement check, and cycle
detection on random tables of catalogue size.
"""

import argparse
import random
import time

import numpy as np

from aic import _accel
from aic.discrete import Universe, _saturate, premise_sets


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_closure(repeat):
    U = Universe.homogeneous(("x", "y"), 12)
    rng = np.random.default_rng(0)
    rel = rng.random((len(U), len(U))) < 0.02
    _accel.closure_step(rel, U.hd, U.sh)  # compile
    fast = _best(lambda: _accel.closure_step(rel, U.hd, U.sh), repeat)
    slow = _best(lambda: _accel.closure_step_reference(rel, U.hd, U.sh), repeat)
    return len(U), fast, slow


def bench_power_cycle(repeat):
    rng = random.Random(0)
    tables = [[rng.randrange(12) for _ in range(12)] for _ in range(2000)]
    arrays = [np.asarray(t, dtype=np.int64) for t in tables]
    _accel.power_cycle(tables[0])
    fast = _best(lambda: [_accel.power_cycle(t) for t in tables], repeat)
    slow = _best(lambda: [_accel._power_cycle_py(a) for a in arrays], repeat)
    return len(tables), fast, slow


def bench_saturation(repeat):
    U = Universe.homogeneous(("x", "y"), 12)
    sets = list(premise_sets())[:200]
    return len(sets), _best(lambda: [_saturate(P, U, 8) for P in sets], repeat)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"backend: {_accel.backend()}")
    n, fast, slow = bench_closure(args.repeat)
    print(f"closure_step   universe {n:4}     {_accel.backend()} {fast * 1e3:8.3f} ms   numpy {slow * 1e3:8.3f} ms")
    n, fast, slow = bench_power_cycle(args.repeat)
    print(f"power_cycle    {n} tables   {_accel.backend()} {fast * 1e3:8.3f} ms   numpy {slow * 1e3:8.3f} ms")
    n, t = bench_saturation(args.repeat)
    print(f"saturation     {n} premise sets, depth 8: {t:.3f} s")


if __name__ == "__main__":
    main()
