"""Finite bounded lattices, monotone endomaps and brute-force fixed-point oracles."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidSpec, NotALattice, NotMonotone, NotPostfixed, NotPrefixed

CATALOGUE = (
    "C2", "C3", "C4", "C5", "C6",
    "B1", "B2", "B3",
    "M3", "N5",
    "product(C2,C2)", "product(C3,B2)", "product(C2,N5)",
)


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """An explicit bounded lattice over the dense ids ``0..n-1``.

    ``names`` is a side table of display names. ``leq``, ``meet`` and ``join``
    are full tables indexed by id.
    """

    name: str
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({n: i for i, n in enumerate(self.names)})

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def element(self, token: str | int) -> int:
        """Resolve an element name, falling back to a numeric id."""
        if isinstance(token, int):
            if 0 <= token < self.size:
                return token
            raise InvalidSpec(f"no element {token} in {self.name}")
        token = token.strip()
        if token in self._index:
            return self._index[token]
        if token.isdigit() and int(token) < self.size:
            return int(token)
        raise InvalidSpec(f"no element {token!r} in {self.name}")

    def show(self, x: int) -> str:
        return self.names[x]

    def join_all(self, xs) -> int:
        acc = self.bot
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet_all(self, xs) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet[acc][x]
        return acc

    def __repr__(self):
        return f"FiniteLattice({self.name})"


def from_order(name: str, names, leq) -> FiniteLattice:
    """Build a lattice from a partial order, computing meets and joins by brute force."""
    n = len(names)
    leq = tuple(tuple(bool(leq[i][j]) for j in range(n)) for i in range(n))
    for i in range(n):
        if not leq[i][i]:
            raise NotALattice(f"{name}: order is not reflexive at {names[i]}")
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise NotALattice(f"{name}: order is not antisymmetric at {names[i]}, {names[j]}")
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    raise NotALattice(f"{name}: order is not transitive")

    def extreme(candidates, below):
        # the candidate that every other candidate is below (or above)
        for c in candidates:
            if all((leq[d][c] if below else leq[c][d]) for d in candidates):
                return c
        return None

    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            ubs = [k for k in range(n) if leq[i][k] and leq[j][k]]
            lbs = [k for k in range(n) if leq[k][i] and leq[k][j]]
            lub = extreme(ubs, below=False)
            glb = extreme(lbs, below=True)
            if lub is None or glb is None:
                raise NotALattice(f"{name}: {names[i]} and {names[j]} lack a least upper or greatest lower bound")
            join[i][j] = lub
            meet[i][j] = glb
    bots = [i for i in range(n) if all(leq[i][j] for j in range(n))]
    tops = [i for i in range(n) if all(leq[j][i] for j in range(n))]
    if not bots or not tops:
        raise NotALattice(f"{name}: missing bottom or top")
    lat = FiniteLattice(
        name, tuple(names), leq,
        tuple(map(tuple, meet)), tuple(map(tuple, join)),
        bots[0], tops[0],
    )
    check_lattice(lat)
    return lat


def check_lattice(lat: FiniteLattice) -> None:
    """Exhaustively verify the lattice laws on the stored tables."""
    E = lat.elements
    J, M, L = lat.join, lat.meet, lat.leq
    for x in E:
        if not (L[lat.bot][x] and L[x][lat.top]):
            raise NotALattice(f"{lat.name}: bounds fail at {lat.names[x]}")
        for y in E:
            if J[x][y] != J[y][x] or M[x][y] != M[y][x]:
                raise NotALattice(f"{lat.name}: not commutative")
            if M[x][J[x][y]] != x or J[x][M[x][y]] != x:
                raise NotALattice(f"{lat.name}: not absorptive")
            if L[x][y] != (J[x][y] == y):
                raise NotALattice(f"{lat.name}: order disagrees with join")
            for z in E:
                if J[x][J[y][z]] != J[J[x][y]][z] or M[x][M[y][z]] != M[M[x][y]][z]:
                    raise NotALattice(f"{lat.name}: not associative")


def chain(n: int) -> FiniteLattice:
    return from_order(f"C{n}", [str(i) for i in range(n)], [[i <= j for j in range(n)] for i in range(n)])


_BOOLEAN_NAMES = {
    1: ["bot", "top"],
    2: ["bot", "a", "b", "top"],
    3: ["bot", "a", "b", "c", "ab", "ac", "bc", "top"],
}


def boolean(k: int) -> FiniteLattice:
    subsets = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    order = [[(a & b) == a for b in subsets] for a in subsets]
    names = _BOOLEAN_NAMES.get(k) or [_subset_name(m) for m in subsets]
    return from_order(f"B{k}", names, order)


def _subset_name(mask: int) -> str:
    return "s" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def diamond() -> FiniteLattice:
    names = ["bot", "a", "b", "c", "top"]
    up = {(0, i) for i in range(5)} | {(i, 4) for i in range(5)} | {(i, i) for i in range(5)}
    return from_order("M3", names, [[(i, j) in up for j in range(5)] for i in range(5)])


def pentagon() -> FiniteLattice:
    # bot < a < b < top, bot < c < top
    names = ["bot", "a", "b", "c", "top"]
    up = {(0, i) for i in range(5)} | {(i, 4) for i in range(5)} | {(i, i) for i in range(5)} | {(1, 2)}
    return from_order("N5", names, [[(i, j) in up for j in range(5)] for i in range(5)])


def product(left: FiniteLattice, right: FiniteLattice) -> FiniteLattice:
    pairs = list(itertools.product(left.elements, right.elements))
    names = [f"{left.names[x]}.{right.names[y]}" for x, y in pairs]
    order = [[left.leq[a][c] and right.leq[b][d] for (c, d) in pairs] for (a, b) in pairs]
    return from_order(f"product({left.name},{right.name})", names, order)


def closure(k: int, seeds) -> FiniteLattice:
    """Close subsets of {1..k} under intersection (top included); joins are derived."""
    full = (1 << k) - 1
    family = {full} | {_mask(s, k) for s in seeds}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(family), 2):
            if (a & b) not in family:
                family.add(a & b)
                changed = True
    members = sorted(family, key=lambda m: (bin(m).count("1"), m))
    order = [[(a & b) == a for b in members] for a in members]
    body = ",".join("{" + ",".join(str(i) for i in sorted(s)) + "}" for s in seeds)
    return from_order(f"closure(B{k}; {body})", [_subset_name(m) for m in members], order)


def _mask(subset, k: int) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= k:
            raise InvalidSpec(f"seed element {i} outside 1..{k}")
        mask |= 1 << (i - 1)
    return mask


_CLOSURE = re.compile(r"^closure\(\s*B(\d)\s*;(.*)\)$")
_PRODUCT = re.compile(r"^product\((.*)\)$")


@lru_cache(maxsize=None)
def build_lattice(spec: str) -> FiniteLattice:
    """Build a catalogue lattice, a product, or a subset closure from its text spec.

    Accepts an optional leading ``lattice`` keyword, e.g. ``lattice product(C3,B2)``.
    """
    text = spec.strip()
    if text.startswith("lattice "):
        text = text[len("lattice "):].strip()
    text = text.rstrip(";").strip()
    if m := re.fullmatch(r"C(\d+)", text):
        n = int(m.group(1))
        if 2 <= n <= 6:
            return chain(n)
    elif m := re.fullmatch(r"B(\d+)", text):
        k = int(m.group(1))
        if 1 <= k <= 3:
            return boolean(k)
    elif text == "M3":
        return diamond()
    elif text == "N5":
        return pentagon()
    elif m := _PRODUCT.fullmatch(text):
        parts = _split_top(m.group(1))
        if len(parts) == 2:
            return product(build_lattice(parts[0]), build_lattice(parts[1]))
    elif m := _CLOSURE.fullmatch(text):
        k = int(m.group(1))
        if not 1 <= k <= 3:
            raise InvalidSpec(f"closure base B{k} not in catalogue")
        seeds = [
            [int(x) for x in g.split(",") if x.strip()]
            for g in re.findall(r"\{([^}]*)\}", m.group(2))
        ]
        return closure(k, seeds)
    raise InvalidSpec(f"unknown lattice {spec!r}")


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur.strip())
    return parts


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    lattice: FiniteLattice
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, MonotoneMap) and self.lattice is other.lattice and self.table == other.table

    def __hash__(self):
        return hash((self.lattice.name, self.table))

    def show(self) -> str:
        L = self.lattice
        return "table{" + ",".join(f"{L.names[x]}->{L.names[y]}" for x, y in enumerate(self.table)) + "}"


def validate_monotone(lattice: FiniteLattice, table) -> MonotoneMap:
    """Return a MonotoneMap or raise NotMonotone with the first witness pair."""
    if isinstance(table, dict):
        table = [table[x] for x in lattice.elements]
    table = tuple(int(v) for v in table)
    if len(table) != lattice.size or any(not 0 <= v < lattice.size for v in table):
        raise InvalidSpec("table must map every element to an element")
    leq = lattice.leq
    for x in lattice.elements:
        for y in lattice.elements:
            if leq[x][y] and not leq[table[x]][table[y]]:
                raise NotMonotone(x, y)
    return MonotoneMap(lattice, table)


def repair_monotone(lattice: FiniteLattice, raw) -> MonotoneMap:
    """Turn any table into a monotone one: x maps to the join of raw(y) over y <= x."""
    leq = lattice.leq
    table = tuple(
        lattice.join_all(raw[y] for y in lattice.elements if leq[y][x])
        for x in lattice.elements
    )
    return MonotoneMap(lattice, table)


def identity_map(lattice: FiniteLattice) -> MonotoneMap:
    return MonotoneMap(lattice, tuple(lattice.elements))


def constant_map(lattice: FiniteLattice, value: int) -> MonotoneMap:
    return MonotoneMap(lattice, (value,) * lattice.size)


def lfp_above(f: MonotoneMap, a: int) -> int:
    """Iterate ``f`` from a postfixed point until it stabilizes."""
    L = f.lattice
    if not L.leq[a][f(a)]:
        raise NotPostfixed(f"{L.names[a]} is not below its image")
    x = a
    while f(x) != x:
        x = f(x)
    return x


def gfp_below(f: MonotoneMap, a: int) -> int:
    L = f.lattice
    if not L.leq[f(a)][a]:
        raise NotPrefixed(f"{L.names[a]} is not above its image")
    x = a
    while f(x) != x:
        x = f(x)
    return x


def fixed_points(f: MonotoneMap) -> list[int]:
    return [x for x in f.lattice.elements if f(x) == x]


def preserves_binary_joins(f: MonotoneMap) -> tuple[int, int] | None:
    """Countable continuity on a finite lattice; returns a failing pair or None."""
    J = f.lattice.join
    for x in f.lattice.elements:
        for y in f.lattice.elements:
            if f(J[x][y]) != J[f(x)][f(y)]:
                return (x, y)
    return None


def preserves_binary_meets(f: MonotoneMap) -> tuple[int, int] | None:
    M = f.lattice.meet
    for x in f.lattice.elements:
        for y in f.lattice.elements:
            if f(M[x][y]) != M[f(x)][f(y)]:
                return (x, y)
    return None


def preserves_chain_joins(f: MonotoneMap) -> bool:
    """Chain continuity: sup of a two-step chain x <= y is preserved (always true when monotone)."""
    L = f.lattice
    return all(
        f(L.join[x][y]) == L.join[f(x)][f(y)]
        for x in L.elements for y in L.elements if L.leq[x][y]
    )


def preserves_chain_meets(f: MonotoneMap) -> bool:
    L = f.lattice
    return all(
        f(L.meet[x][y]) == L.meet[f(x)][f(y)]
        for x in L.elements for y in L.elements if L.leq[x][y]
    )
