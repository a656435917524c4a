"""Brute-force pointwise semantics over plain Python lists.

Nothing here touches the lasso machinery: a sequence is a function from index
to element id, built from the raw prefix/period lists, and every operation is
the textbook pointwise definition. Each sequence carries ``reach``, an upper
bound on its preperiod plus period, so a tail supremum only needs to scan
``reach`` indices past the start.
"""

from aic.lattice import FiniteLattice


def seq(prefix, period):
    prefix, period = list(prefix), list(period)

    def at(n):
        if n < len(prefix):
            return prefix[n]
        return period[(n - len(prefix)) % len(period)]

    at.reach = len(prefix) + len(period)
    return at


def join(L: FiniteLattice, s, t):
    f = lambda n: L.join[s(n)][t(n)]
    f.reach = s.reach * t.reach
    return f


def meet(L: FiniteLattice, s, t):
    f = lambda n: L.meet[s(n)][t(n)]
    f.reach = s.reach * t.reach
    return f


def head(L, s):
    f = lambda n: s(0)
    f.reach = 1
    return f


def shift(L, s):
    f = lambda n: s(n + 1)
    f.reach = s.reach
    return f


def _tail(L, s, op, unit):
    def f(n):
        acc = unit
        for k in range(n, n + s.reach + 1):
            acc = op[acc][s(k)]
        return acc

    f.reach = s.reach
    return f


def majorum(L, s):
    return _tail(L, s, L.join, L.bot)


def minorum(L, s):
    return _tail(L, s, L.meet, L.top)


def apply(L, table, s):
    f = lambda n: table[s(n)]
    f.reach = s.reach
    return f


def orbit(L, table, s):
    def f(n):
        x = s(n)
        for _ in range(n):
            x = table[x]
        return x

    f.reach = s.reach * _cycle_span(table)
    return f


def _cycle_span(table):
    """Steps until the sequence of table powers revisits a table: preperiod + period."""
    seen, power = {}, tuple(range(len(table)))
    while power not in seen:
        seen[power] = len(seen)
        power = tuple(table[x] for x in power)
    return len(seen)
