"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``AIC_NO_NUMBA=1`` to force the fallback. Both paths return identical results;
``benchmarks/bench_accel.py`` compares them.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("AIC_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by AIC_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# power cycle of a table: the preperiod/period of n -> f^n

def _power_cycle_py(table: np.ndarray) -> tuple[int, int]:
    # Brent's algorithm over the sequence id, f, f∘f, ...
    f = table
    start = np.arange(f.shape[0], dtype=f.dtype)
    power = lam = 1
    tortoise = start
    hare = f[start]
    while not np.array_equal(tortoise, hare):
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f[hare]
        lam += 1
    tortoise = start
    hare = start
    for _ in range(lam):
        hare = f[hare]
    mu = 0
    while not np.array_equal(tortoise, hare):
        tortoise = f[tortoise]
        hare = f[hare]
        mu += 1
    return mu, lam


if HAVE_NUMBA:
    @njit(cache=True)
    def _same(x, y):
        for i in range(x.shape[0]):
            if x[i] != y[i]:
                return False
        return True

    @njit(cache=True)
    def _compose(f, t):
        out = np.empty_like(t)
        for i in range(t.shape[0]):
            out[i] = f[t[i]]
        return out

    @njit(cache=True)
    def _power_cycle_nb(f):
        n = f.shape[0]
        start = np.arange(n).astype(f.dtype)
        power = 1
        lam = 1
        tortoise = start.copy()
        hare = _compose(f, start)
        while not _same(tortoise, hare):
            if power == lam:
                tortoise = hare.copy()
                power *= 2
                lam = 0
            hare = _compose(f, hare)
            lam += 1
        tortoise = start.copy()
        hare = start.copy()
        for _ in range(lam):
            hare = _compose(f, hare)
        mu = 0
        while not _same(tortoise, hare):
            tortoise = _compose(f, tortoise)
            hare = _compose(f, hare)
            mu += 1
        return mu, lam


def power_cycle(table) -> tuple[int, int]:
    """Preperiod and period of the table powers ``f^0, f^1, ...``."""
    arr = np.asarray(table, dtype=np.int64)
    if HAVE_NUMBA:
        mu, lam = _power_cycle_nb(arr)
        return int(mu), int(lam)
    return _power_cycle_py(arr)


# one level of equational closure over a finite term universe

def _closure_step_np(rel: np.ndarray, hd: np.ndarray, sh: np.ndarray) -> np.ndarray:
    r = rel.astype(np.float32)
    out = rel | rel.T | ((r @ r) > 0)
    for op in (hd, sh):
        ok = np.nonzero(op >= 0)[0]
        img = op[ok]
        sub = rel[np.ix_(ok, ok)]
        rows, cols = np.nonzero(sub)
        out[img[rows], img[cols]] = True
    return out


if HAVE_NUMBA:
    @njit(cache=True)
    def _closure_step_nb(rel, hd, sh):
        n = rel.shape[0]
        words = (n + 63) // 64
        packed = np.zeros((n, words), dtype=np.uint64)
        for i in range(n):
            for k in range(n):
                if rel[i, k]:
                    packed[i, k >> 6] |= np.uint64(1) << np.uint64(k & 63)
        acc = packed.copy()
        out = rel.copy()
        for i in range(n):
            for k in range(n):
                if rel[i, k]:
                    out[k, i] = True
                    for w in range(words):
                        acc[i, w] |= packed[k, w]
                    if hd[i] >= 0 and hd[k] >= 0:
                        out[hd[i], hd[k]] = True
                    if sh[i] >= 0 and sh[k] >= 0:
                        out[sh[i], sh[k]] = True
        for i in range(n):
            for k in range(n):
                if (acc[i, k >> 6] >> np.uint64(k & 63)) & np.uint64(1):
                    out[i, k] = True
        return out


def closure_step(rel: np.ndarray, hd: np.ndarray, sh: np.ndarray) -> np.ndarray:
    """Add symmetric, transitive and congruence consequences of ``rel`` (one proof level).

    ``hd[i]``/``sh[i]`` give the universe index of the head/shift of term ``i``, or -1.
    """
    if HAVE_NUMBA:
        return _closure_step_nb(rel, hd, sh)
    return _closure_step_np(rel, hd, sh)


def closure_step_reference(rel, hd, sh):
    """Always the numpy path; used by tests and the benchmark."""
    return _closure_step_np(rel, hd, sh)
