import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

from aic import _accel


@st.composite
def relations(draw):
    n = draw(st.integers(1, 40))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    hd = draw(st.lists(st.integers(-1, n - 1), min_size=n, max_size=n))
    sh = draw(st.lists(st.integers(-1, n - 1), min_size=n, max_size=n))
    return np.array(bits, dtype=bool).reshape(n, n), np.array(hd, dtype=np.int64), np.array(sh, dtype=np.int64)


def _closure_by_hand(rel, hd, sh):
    n = rel.shape[0]
    out = rel.copy()
    for i in range(n):
        for k in range(n):
            if rel[i, k]:
                out[k, i] = True
                for j in range(n):
                    if rel[k, j]:
                        out[i, j] = True
                for op in (hd, sh):
                    if op[i] >= 0 and op[k] >= 0:
                        out[op[i], op[k]] = True
    return out


@settings(max_examples=60)
@given(relations())
def test_closure_step_backends_agree_with_a_loop(case):
    rel, hd, sh = case
    expect = _closure_by_hand(rel, hd, sh)
    assert np.array_equal(_accel.closure_step(rel, hd, sh), expect)
    assert np.array_equal(_accel.closure_step_reference(rel, hd, sh), expect)


def _cycle_by_dict(table):
    seen, power = {}, tuple(range(len(table)))
    while power not in seen:
        seen[power] = len(seen)
        power = tuple(table[x] for x in power)
    mu = seen[power]
    return mu, len(seen) - mu


@given(st.integers(1, 9).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
def test_power_cycle_matches_a_dictionary_walk(table):
    expect = _cycle_by_dict(table)
    assert _accel.power_cycle(table) == expect
    assert _accel._power_cycle_py(np.asarray(table, dtype=np.int64)) == expect


def test_environment_flag_selects_the_fallback():
    env = dict(os.environ, AIC_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from aic import _accel; print(_accel.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
