"""Eventually periodic sequences over a finite lattice and the sequence-algebra operations.

A lasso ``<p0,...,pk | q0,...,qm>`` denotes the sequence whose index ``n`` is
``prefix[n]`` for ``n < len(prefix)`` and ``period[(n - len(prefix)) % len(period)]``
afterwards.

Pointwise predicates on two lassos only need the window
``max(len(prefix)) + lcm(len(period))``: beyond the longer prefix both sequences
are periodic with periods dividing the lcm, so every later index repeats one
inside the window.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from . import _accel
from .errors import InvalidSpec, LatticeMismatch, ParseError, PeriodCapExceeded
from .lattice import FiniteLattice, MonotoneMap

PERIOD_CAP = 10_000


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Lasso:
    lattice: FiniteLattice
    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise InvalidSpec("period must be nonempty")

    def __getitem__(self, n: int) -> int:
        p = len(self.prefix)
        if n < p:
            return self.prefix[n]
        return self.period[(n - p) % len(self.period)]

    def unroll(self, length: int) -> list[int]:
        return [self[n] for n in range(length)]

    def is_flat(self) -> bool:
        return not self.prefix and len(self.period) == 1

    def show(self) -> str:
        names = self.lattice.names
        return "<" + ",".join(names[x] for x in self.prefix) + "|" + ",".join(names[x] for x in self.period) + ">"

    def __str__(self):
        return self.show()


def make(lattice: FiniteLattice, prefix, period) -> Lasso:
    """Build a lasso in canonical form."""
    return normalize(Lasso(lattice, tuple(prefix), tuple(period)))


def flat(lattice: FiniteLattice, value: int) -> Lasso:
    return Lasso(lattice, (), (value,))


def normalize(s: Lasso) -> Lasso:
    """Primitive period and shortest prefix; pointwise equal to the input."""
    period = s.period
    q = len(period)
    for d in range(1, q):
        if q % d == 0 and period == period[:d] * (q // d):
            period = period[:d]
            break
    prefix = s.prefix
    while prefix and prefix[-1] == period[-1]:
        period = period[-1:] + period[:-1]
        prefix = prefix[:-1]
    if prefix is s.prefix and period is s.period:
        return s
    return Lasso(s.lattice, prefix, period)


def _same_lattice(s: Lasso, t: Lasso) -> FiniteLattice:
    if s.lattice is not t.lattice:
        raise LatticeMismatch(f"{s.lattice.name} vs {t.lattice.name}")
    return s.lattice


def window(*seqs: Lasso) -> tuple[int, int]:
    """Shared prefix length and period length covering all arguments."""
    p = max(len(s.prefix) for s in seqs)
    q = 1
    for s in seqs:
        q = lcm(q, len(s.period))
    if q > PERIOD_CAP:
        raise PeriodCapExceeded(f"period {q} exceeds cap {PERIOD_CAP}")
    return p, q


def eq(s: Lasso, t: Lasso) -> bool:
    _same_lattice(s, t)
    if s.prefix == t.prefix and s.period == t.period:
        return True
    p, q = window(s, t)
    return all(s[n] == t[n] for n in range(p + q))


def leq(s: Lasso, t: Lasso) -> bool:
    L = _same_lattice(s, t)
    p, q = window(s, t)
    return all(L.leq[s[n]][t[n]] for n in range(p + q))


def op_bot(lattice: FiniteLattice) -> Lasso:
    return flat(lattice, lattice.bot)


def op_top(lattice: FiniteLattice) -> Lasso:
    return flat(lattice, lattice.top)


def _pointwise(s: Lasso, t: Lasso, table) -> Lasso:
    _same_lattice(s, t)
    if len(s.period) == len(t.period) and len(s.prefix) == len(t.prefix):
        return normalize(Lasso(
            s.lattice,
            tuple(table[x][y] for x, y in zip(s.prefix, t.prefix)),
            tuple(table[x][y] for x, y in zip(s.period, t.period)),
        ))
    p, q = window(s, t)
    vals = [table[s[n]][t[n]] for n in range(p + q)]
    return normalize(Lasso(s.lattice, tuple(vals[:p]), tuple(vals[p:])))


def op_join(s: Lasso, t: Lasso) -> Lasso:
    return _pointwise(s, t, s.lattice.join)


def op_meet(s: Lasso, t: Lasso) -> Lasso:
    return _pointwise(s, t, s.lattice.meet)


def op_head(s: Lasso) -> Lasso:
    return flat(s.lattice, s[0])


def op_shift(s: Lasso) -> Lasso:
    if s.prefix:
        return normalize(Lasso(s.lattice, s.prefix[1:], s.period))
    return normalize(Lasso(s.lattice, (), s.period[1:] + s.period[:1]))


def _tail_accumulate(s: Lasso, table, unit: int) -> Lasso:
    tail = unit
    for x in s.period:
        tail = table[tail][x]
    acc = tail
    out = []
    for x in reversed(s.prefix):
        acc = table[acc][x]
        out.append(acc)
    out.reverse()
    return normalize(Lasso(s.lattice, tuple(out), (tail,)))


def op_majorum(s: Lasso) -> Lasso:
    """Tail supremum: index n carries the join of all entries at k >= n."""
    return _tail_accumulate(s, s.lattice.join, s.lattice.bot)


def op_minorum(s: Lasso) -> Lasso:
    return _tail_accumulate(s, s.lattice.meet, s.lattice.top)


def op_apply(f: MonotoneMap, s: Lasso) -> Lasso:
    if f.lattice is not s.lattice:
        raise LatticeMismatch(f"{f.lattice.name} vs {s.lattice.name}")
    t = f.table
    return normalize(Lasso(s.lattice, tuple(t[x] for x in s.prefix), tuple(t[x] for x in s.period)))


_CYCLES: dict[tuple[int, ...], tuple[int, int, tuple]] = {}


def _powers(f: MonotoneMap) -> tuple[int, int, tuple]:
    key = f.table
    hit = _CYCLES.get(key)
    if hit is None:
        mu, lam = _accel.power_cycle(key)
        powers = [tuple(range(len(key)))]
        for _ in range(mu + lam - 1):
            powers.append(tuple(key[x] for x in powers[-1]))
        hit = (mu, lam, tuple(powers))
        if len(_CYCLES) > 50_000:
            _CYCLES.clear()
        _CYCLES[key] = hit
    return hit


def power_cycle(f: MonotoneMap) -> tuple[int, int]:
    """Preperiod and period of ``n -> f^n`` as tables (cached per table)."""
    mu, lam, _ = _powers(f)
    return mu, lam


def op_orbit(f: MonotoneMap, s: Lasso) -> Lasso:
    """Index n carries f^n(s[n])."""
    if f.lattice is not s.lattice:
        raise LatticeMismatch(f"{f.lattice.name} vs {s.lattice.name}")
    mu, lam, powers = _powers(f)
    p = max(mu, len(s.prefix))
    q = lcm(lam, len(s.period))
    if q > PERIOD_CAP:
        raise PeriodCapExceeded(f"orbit period {q} exceeds cap {PERIOD_CAP}")
    vals = []
    for n in range(p + q):
        # f^n agrees with f^(mu + (n - mu) % lam) once n >= mu
        r = n if n < mu + lam else mu + (n - mu) % lam
        vals.append(powers[r][s[n]])
    return normalize(Lasso(s.lattice, tuple(vals[:p]), tuple(vals[p:])))


def head_set(s: Lasso) -> set[int]:
    return set(s.prefix) | set(s.period)


_LITERAL = re.compile(r"^\s*<([^|>]*)\|([^|>]*)>\s*$")


def parse_lasso(text: str, lattice: FiniteLattice) -> Lasso:
    """Parse ``<p0,...|q0,...>`` with element names or ids."""
    m = _LITERAL.match(text)
    if not m:
        raise ParseError(f"malformed lasso literal {text!r}", 0)
    pre = [tok for tok in m.group(1).split(",") if tok.strip()]
    per = [tok for tok in m.group(2).split(",") if tok.strip()]
    if not per:
        raise ParseError("lasso period must be nonempty", text.index("|"))
    return make(lattice, [lattice.element(t) for t in pre], [lattice.element(t) for t in per])
