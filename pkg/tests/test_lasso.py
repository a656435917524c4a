import pytest
from hypothesis import given, strategies as st

import unroll
from aic import lasso as lz
from aic.errors import LatticeMismatch, ParseError
from aic.lattice import build_lattice, identity_map, validate_monotone
from conftest import lattice_with

C3 = build_lattice("C3")
INC = validate_monotone(C3, [1, 2, 2])


def L3(prefix, period):
    return lz.make(C3, prefix, period)


def test_normalize_examples():
    assert lz.normalize(lz.Lasso(C3, (), (0, 0))) == L3([], [0])
    # <1|1,2> unrolls to 1,1,2,1,2,... and <|1,2> to 1,2,1,2,...: distinct, already canonical
    n = lz.normalize(lz.Lasso(C3, (1,), (1, 2)))
    assert (n.prefix, n.period) == ((1,), (1, 2))
    assert n.unroll(8) != L3([], [1, 2]).unroll(8)
    n = lz.normalize(lz.Lasso(C3, (2,), (1, 2)))
    assert (n.prefix, n.period) == ((), (2, 1))
    n = lz.normalize(lz.Lasso(C3, (2,), (0, 1)))
    assert (n.prefix, n.period) == ((2,), (0, 1))


def test_eq_and_leq_examples():
    assert not lz.eq(L3([], [0, 2]), L3([2], [0, 2, 0]))
    s = L3([1], [0, 2])
    assert lz.eq(s, s)
    assert lz.leq(L3([], [0]), L3([], [0, 2]))
    with pytest.raises(LatticeMismatch):
        lz.eq(s, lz.flat(build_lattice("C4"), 0))


def test_operation_examples():
    assert lz.op_bot(C3) == L3([], [0]) and lz.op_top(C3) == L3([], [2])
    assert lz.op_join(L3([], [0, 2]), L3([], [1])) == L3([], [1, 2])
    assert lz.op_head(L3([2], [0, 1])) == L3([], [2])
    assert lz.op_shift(L3([], [2, 0])) == L3([], [0, 2])
    assert lz.op_shift(L3([2], [0, 1])) == L3([], [0, 1])
    assert lz.op_majorum(L3([], [0, 2])) == L3([], [2])
    assert lz.op_minorum(L3([], [0, 2])) == L3([], [0])
    assert lz.op_orbit(INC, L3([], [0])) == L3([0, 1], [2])
    assert lz.op_apply(INC, L3([], [0, 2])) == L3([], [1, 2])


def test_head_set_examples():
    assert lz.head_set(L3([2], [0, 1])) == {0, 1, 2}
    assert lz.head_set(L3([], [1])) == {1}
    assert lz.head_set(L3([], [0, 0, 2])) == {0, 2}


def test_literals_round_trip():
    B2 = build_lattice("B2")
    s = lz.parse_lasso("<| a,b >", B2)
    assert s.show() == "<|a,b>"
    assert lz.parse_lasso("<2 | 0,1>", C3) == L3([2], [0, 1])
    with pytest.raises(ParseError):
        lz.parse_lasso("<2 0>", C3)


def test_orbit_period_cap():
    from aic.errors import PeriodCapExceeded
    L = build_lattice("C2")
    f = identity_map(L)
    long = lz.make(L, [], [0] * 10_000 + [1])
    old = lz.PERIOD_CAP
    try:
        lz.PERIOD_CAP = 100
        with pytest.raises(PeriodCapExceeded):
            lz.op_orbit(f, long)
    finally:
        lz.PERIOD_CAP = old


def _is_canonical(s):
    per, pre = s.period, s.prefix
    primitive = all(per != per[d:] + per[:d] for d in range(1, len(per)) if len(per) % d == 0)
    shortest = not pre or pre[-1] != per[-1]
    return primitive and shortest


@given(lattice_with("lasso"))
def test_normalize_is_canonical_idempotent_and_pointwise(sample):
    L, s = sample
    raw = lz.Lasso(L, s.prefix, s.period + s.period)
    n = lz.normalize(raw)
    assert _is_canonical(n) and lz.normalize(n) == n
    assert raw.unroll(20) == n.unroll(20)


@given(lattice_with("lasso"))
def test_majorum_inflates_and_descends(sample):
    L, s = sample
    m = lz.op_majorum(s)
    assert lz.leq(s, m) and lz.leq(lz.op_shift(m), m) and lz.op_majorum(m) == m
    b = lz.op_minorum(s)
    assert lz.leq(b, s) and lz.leq(b, lz.op_shift(b)) and lz.op_minorum(b) == b


@given(lattice_with("lasso"), st.integers(0, 12))
def test_head_of_shift_reads_an_index(sample, n):
    L, s = sample
    t = s
    for _ in range(n):
        t = lz.op_shift(t)
    h = lz.op_head(t)
    assert h.is_flat() and h.period[0] == s[n]


@given(lattice_with("lasso", "lasso"))
def test_comparison_window_decides_equality(sample):
    L, s, t = sample
    far = max(len(s.prefix), len(t.prefix)) + 3 * len(s.period) * len(t.period)
    assert lz.eq(s, t) == (s.unroll(far) == t.unroll(far))
    assert lz.leq(s, t) == all(L.leq[x][y] for x, y in zip(s.unroll(far), t.unroll(far)))


def _oracle(op, L, f, s, t):
    a, b = unroll.seq(s.prefix, s.period), unroll.seq(t.prefix, t.period)
    match op:
        case "join":
            return unroll.join(L, a, b)
        case "meet":
            return unroll.meet(L, a, b)
        case "head":
            return unroll.head(L, a)
        case "shift":
            return unroll.shift(L, a)
        case "dia":
            return unroll.majorum(L, a)
        case "box":
            return unroll.minorum(L, a)
        case "apply":
            return unroll.apply(L, f.table, a)
        case "orbit":
            return unroll.orbit(L, f.table, a)


def _lasso_op(op, f, s, t):
    match op:
        case "join":
            return lz.op_join(s, t)
        case "meet":
            return lz.op_meet(s, t)
        case "head":
            return lz.op_head(s)
        case "shift":
            return lz.op_shift(s)
        case "dia":
            return lz.op_majorum(s)
        case "box":
            return lz.op_minorum(s)
        case "apply":
            return lz.op_apply(f, s)
        case "orbit":
            return lz.op_orbit(f, s)


OPS = ("join", "meet", "head", "shift", "dia", "box", "apply", "orbit")


def oracle_window(s, t, r):
    return max(len(s.prefix), len(t.prefix), len(r.prefix)) + 2 * lz.lcm(lz.lcm(len(s.period), len(t.period)),
                                                                         len(r.period)) + 2


def agrees_with_unroll(op, L, f, s, t) -> bool:
    r = _lasso_op(op, f, s, t)
    ref = _oracle(op, L, f, s, t)
    return all(r[n] == ref(n) for n in range(oracle_window(s, t, r)))


@given(lattice_with("map", "lasso", "lasso"), st.sampled_from(OPS))
def test_every_operation_matches_the_unrolled_definition(sample, op):
    L, f, s, t = sample
    assert agrees_with_unroll(op, L, f, s, t)
