"""The head/shift fragment: graph decision of provability for homogeneous premises,
and a bounded proof-search oracle for equational logic over ``hd`` and ``sh``.

A term of the fragment is a variable under a word of ``hd``/``sh`` applications.
A homogeneous identity relates two ``sh^k x`` terms (shift identity) or two
``hd sh^k x`` terms (head identity); a node ``(x, n)`` of the proof graph stands
for ``sh^n x``.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .errors import BoundTooSmall, InvalidSpec
from .term import Head, Identity, Quasiequation, Shape, Shift, Term, Var, parse_identity, print_identity


class Verdict(enum.Enum):
    PROVABLE = "provable"
    UNKNOWN = "unknown"


# fragment terms as (variable, word) with the word written outermost first, 'h' or 's'

Word = tuple[str, str]


def word_of(t: Term) -> Word:
    letters = []
    while True:
        match t:
            case Head(x):
                letters.append("h")
                t = x
            case Shift(x):
                letters.append("s")
                t = x
            case Var(name):
                return name, "".join(letters)
            case _:
                raise InvalidSpec(f"{t} is outside the hd/sh fragment")


def term_of(w: Word) -> Term:
    var, letters = w
    t: Term = Var(var)
    for c in reversed(letters):
        t = Head(t) if c == "h" else Shift(t)
    return t


def _shift_degree(letters: str) -> int | None:
    return len(letters) if set(letters) <= {"s"} else None


def _head_degree(letters: str) -> int | None:
    return len(letters) - 1 if letters[:1] == "h" and set(letters[1:]) <= {"s"} else None


Edge = tuple[str, int, str, int]


@dataclass(frozen=True)
class HomogeneousPremises:
    shift_ids: tuple[Edge, ...] = ()
    head_ids: tuple[Edge, ...] = ()

    def __post_init__(self):
        for x, n, y, k in self.shift_ids + self.head_ids:
            if n < 0 or k < 0:
                raise InvalidSpec("degrees must be non-negative")

    @classmethod
    def from_identities(cls, ids) -> "HomogeneousPremises":
        shifts, heads = [], []
        for i in ids:
            if i.shape is not Shape.EQ:
                raise InvalidSpec(f"{print_identity(i)} is not an equation")
            (x, u), (y, v) = word_of(i.lhs), word_of(i.rhs)
            if _shift_degree(u) is not None and _shift_degree(v) is not None:
                shifts.append((x, len(u), y, len(v)))
            elif _head_degree(u) is not None and _head_degree(v) is not None:
                heads.append((x, _head_degree(u), y, _head_degree(v)))
            else:
                raise InvalidSpec(f"{print_identity(i)} is not a homogeneous identity")
        return cls(tuple(shifts), tuple(heads))

    def identities(self) -> list[Identity]:
        sh = lambda v, n: term_of((v, "s" * n))
        hd = lambda v, n: term_of((v, "h" + "s" * n))
        return ([Identity(sh(x, n), sh(y, k)) for x, n, y, k in self.shift_ids]
                + [Identity(hd(x, n), hd(y, k)) for x, n, y, k in self.head_ids])

    def vars(self) -> set[str]:
        return {v for x, _, y, _ in self.shift_ids + self.head_ids for v in (x, y)}

    def maxdeg(self) -> int:
        return max((max(n, k) for _, n, _, k in self.shift_ids + self.head_ids), default=0)

    def __len__(self):
        return len(self.shift_ids) + len(self.head_ids)


def default_bound(P: HomogeneousPremises, query_degree: int) -> int:
    d = P.maxdeg()
    return d + query_degree + len(P) * (d + 1)


@dataclass
class ProofGraph:
    bound: int
    strong: dict = field(default_factory=dict)
    weak: dict = field(default_factory=dict)

    @classmethod
    def build(cls, P: HomogeneousPremises, bound: int) -> "ProofGraph":
        g = cls(bound)
        for x, n, y, k in P.shift_ids:
            for j in range(bound + 1 - max(n, k)):
                g._add(g.strong, (x, n + j), (y, k + j))
        for x, n, y, k in P.head_ids:
            if max(n, k) <= bound:
                g._add(g.weak, (x, n), (y, k))
        return g

    @staticmethod
    def _add(adj, a, b):
        if a != b:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)

    def reachable(self, src, dst, weak: bool) -> bool:
        seen, todo = {src}, deque([src])
        while todo:
            node = todo.popleft()
            if node == dst:
                return True
            nxt = set(self.strong.get(node, ()))
            if weak:
                nxt |= self.weak.get(node, set())
            for m in nxt - seen:
                seen.add(m)
                todo.append(m)
        return False


def _decide(P, x, n, y, k, bound, weak: bool) -> Verdict:
    if bound is None:
        bound = default_bound(P, max(n, k))
    if max(n, k) > bound:
        raise BoundTooSmall(f"query degree {max(n, k)} exceeds bound {bound}", bound=bound)
    g = ProofGraph.build(P, bound)
    return Verdict.PROVABLE if g.reachable((x, n), (y, k), weak) else Verdict.UNKNOWN


def decide_shift(P: HomogeneousPremises, x: str, n: int, y: str, k: int, bound: int | None = None) -> Verdict:
    """``P |- sh^n x = sh^k y`` iff a strong path joins the two nodes (within the bound)."""
    return _decide(P, x, n, y, k, bound, weak=False)


def decide_head(P: HomogeneousPremises, x: str, n: int, y: str, k: int, bound: int | None = None) -> Verdict:
    """``P |- hd sh^n x = hd sh^k y`` iff any path joins the two nodes (within the bound)."""
    return _decide(P, x, n, y, k, bound, weak=True)


def decide(P: HomogeneousPremises, goal: Identity, bound: int | None = None) -> Verdict:
    (x, u), (y, v) = word_of(goal.lhs), word_of(goal.rhs)
    if _shift_degree(u) is not None and _shift_degree(v) is not None:
        return decide_shift(P, x, len(u), y, len(v), bound)
    if _head_degree(u) is not None and _head_degree(v) is not None:
        return decide_head(P, x, _head_degree(u), y, _head_degree(v), bound)
    raise InvalidSpec("the goal must be a homogeneous identity")


# bounded proof search

THETA_AXIOMS = ("theta1", "theta2", "theta3", "theta4")


class Universe:
    """A finite set of fragment terms with the indices of their heads and shifts."""

    def __init__(self, terms):
        self.terms: list[Word] = list(dict.fromkeys(terms))
        self.index = {t: i for i, t in enumerate(self.terms)}
        n = len(self.terms)
        self.hd = np.full(n, -1, dtype=np.int64)
        self.sh = np.full(n, -1, dtype=np.int64)
        self.is_head = np.zeros(n, dtype=bool)
        for i, (v, w) in enumerate(self.terms):
            self.hd[i] = self.index.get((v, "h" + w), -1)
            self.sh[i] = self.index.get((v, "s" + w), -1)
            self.is_head[i] = w.startswith("h")

    def __len__(self):
        return len(self.terms)

    @classmethod
    def homogeneous(cls, vars, cap: int) -> "Universe":
        """``sh^k x`` and ``hd sh^k x`` for ``k <= cap``: enough for homogeneous premises and goals."""
        return cls([(v, p + "s" * k) for v in sorted(vars) for k in range(cap + 1) for p in ("", "h")])

    @classmethod
    def words(cls, vars, length: int) -> "Universe":
        """Every word over ``hd``/``sh`` up to ``length`` letters."""
        return cls([(v, "".join(w)) for v in sorted(vars) for n in range(length + 1)
                    for w in itertools.product("hs", repeat=n)])


@dataclass
class SearchResult:
    verdict: Verdict
    depth: int | None
    universe: int


def _theta_base(U: Universe, axioms) -> np.ndarray:
    # the unconditional axioms: hd x = hd hd x and sh hd x = hd x
    rel = np.zeros((len(U), len(U)), dtype=bool)
    h = U.hd[U.hd >= 0]
    if "theta1" in axioms:
        hh = U.hd[h]
        rel[h[hh >= 0], hh[hh >= 0]] = True
    if "theta2" in axioms:
        sh = U.sh[h]
        rel[sh[sh >= 0], h[sh >= 0]] = True
    return rel


def _theta_step(rel: np.ndarray, U: Universe, axioms) -> np.ndarray:
    # the conditional axioms: x = hd y gives hd x = hd y and sh x = x
    out = np.zeros_like(rel)
    rows, cols = np.nonzero(rel[:, U.is_head])
    heads = np.nonzero(U.is_head)[0][cols]
    if "theta3" in axioms:
        hx = U.hd[rows]
        out[hx[hx >= 0], heads[hx >= 0]] = True
    if "theta4" in axioms:
        sx = U.sh[rows]
        out[sx[sx >= 0], rows[sx >= 0]] = True
    return out


def proof_search_oracle(P, goal: Identity, depth: int, axioms=(), universe: Universe | None = None) -> SearchResult:
    """Level-synchronous saturation of equational logic from ``P`` (plus optional
    theta axioms) over a finite universe; level ``d`` holds every identity with a
    derivation of height at most ``d`` whose terms stay inside the universe."""
    if depth < 1:
        raise InvalidSpec("depth must be at least 1")
    ids = P.identities() if isinstance(P, HomogeneousPremises) else list(P)
    words = [(word_of(i.lhs), word_of(i.rhs)) for i in ids]
    g = (word_of(goal.lhs), word_of(goal.rhs))
    vars = {w[0] for pair in words + [g] for w in pair}
    if universe is None:
        homogeneous = not axioms and all(
            _shift_degree(w[1]) is not None or _head_degree(w[1]) is not None for pair in words + [g] for w in pair)
        longest = max(len(w[1]) for pair in words + [g] for w in pair)
        universe = Universe.homogeneous(vars, longest + 1 + (depth if homogeneous else 0)) if homogeneous \
            else Universe.words(vars, longest + 1)
    U = universe
    for pair in words + [g]:
        for w in pair:
            if w not in U.index:
                raise InvalidSpec(f"{print_identity(Identity(term_of(w), term_of(w)))} is outside the universe")
    unknown = set(axioms) - set(THETA_AXIOMS)
    if unknown:
        raise InvalidSpec(f"unknown axioms {sorted(unknown)}")
    rel = np.zeros((len(U), len(U)), dtype=bool)
    for a, b in words:
        rel[U.index[a], U.index[b]] = True
    base = np.eye(len(U), dtype=bool) | _theta_base(U, axioms)
    conditional = "theta3" in axioms or "theta4" in axioms
    gi, gj = U.index[g[0]], U.index[g[1]]
    if rel[gi, gj]:
        return SearchResult(Verdict.PROVABLE, 0, len(U))
    for d in range(1, depth + 1):
        nxt = _accel.closure_step(rel, U.hd, U.sh) | base
        if conditional:
            nxt |= _theta_step(rel, U, axioms)
        rel = nxt
        if rel[gi, gj]:
            return SearchResult(Verdict.PROVABLE, d, len(U))
    return SearchResult(Verdict.UNKNOWN, None, len(U))


# exhaustive agreement and the flatness family

def homogeneous_identities(vars=("x", "y"), maxdeg: int = 3) -> list[tuple[str, Edge]]:
    nodes = [(v, n) for v in vars for n in range(maxdeg + 1)]
    pairs = list(itertools.combinations(nodes, 2))
    return [("shift", (a[0], a[1], b[0], b[1])) for a, b in pairs] + \
           [("head", (a[0], a[1], b[0], b[1])) for a, b in pairs]


def premise_sets(vars=("x", "y"), maxdeg: int = 3, size: int = 2):
    ids = homogeneous_identities(vars, maxdeg)
    for r in range(size + 1):
        for combo in itertools.combinations(ids, r):
            yield HomogeneousPremises(tuple(e for k, e in combo if k == "shift"),
                                      tuple(e for k, e in combo if k == "head"))


@dataclass
class AgreementReport:
    premise_sets: int = 0
    queries: int = 0
    provable: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def exhaustive_agreement(vars=("x", "y"), maxdeg: int = 3, size: int = 2, bound: int = 12,
                         depth: int = 8, limit: int | None = None) -> AgreementReport:
    """Compare both graph decisions with the proof-search oracle on every small instance.

    One saturation per premise set answers all queries: the oracle runs over the
    homogeneous universe with indices up to ``bound``.
    """
    rep = AgreementReport()
    nodes = [(v, n) for v in vars for n in range(maxdeg + 1)]
    U = Universe.homogeneous(vars, bound)
    for P in itertools.islice(premise_sets(vars, maxdeg, size), limit):
        rep.premise_sets += 1
        rel = _saturate(P, U, depth)
        g = ProofGraph.build(P, bound)
        for a, b in itertools.combinations_with_replacement(nodes, 2):
            for weak, prefix in ((False, ""), (True, "h")):
                graph = g.reachable(a, b, weak)
                oracle = bool(rel[U.index[(a[0], prefix + "s" * a[1])], U.index[(b[0], prefix + "s" * b[1])]])
                rep.queries += 1
                rep.provable += graph
                if graph != oracle:
                    rep.disagreements.append((P, a, b, "head" if weak else "shift", graph, oracle))
    return rep


def _saturate(P: HomogeneousPremises, U: Universe, depth: int) -> np.ndarray:
    rel = np.zeros((len(U), len(U)), dtype=bool)
    for i in P.identities():
        rel[U.index[word_of(i.lhs)], U.index[word_of(i.rhs)]] = True
    eye = np.eye(len(U), dtype=bool)
    for _ in range(depth):
        rel = _accel.closure_step(rel, U.hd, U.sh) | eye
    return rel


def flatness_identities(n: int) -> tuple[list[Identity], Identity]:
    sh = lambda k: " ".join(["sh"] * k + ["a"])
    premises = [parse_identity(f"{sh(n)} = a")] + [parse_identity(f"hd {sh(i)} = hd {sh(i + 1)}") for i in range(n)]
    return premises, parse_identity("sh a = a")


def flatness_evidence(n: int, depth: int = 10, length: int | None = None) -> SearchResult:
    """Bounded search for the N-flatness quasiequation from the theta axioms.

    Words up to ``length`` letters (default N + 2) form the universe. An
    ``unknown`` verdict is evidence of non-derivability, not a proof.
    """
    premises, goal = flatness_identities(n)
    U = Universe.words({"a"}, length if length is not None else n + 2)
    return proof_search_oracle(premises, goal, depth, THETA_AXIOMS, U)


def parse_premises(text: str) -> HomogeneousPremises:
    from .term import split_statements
    return HomogeneousPremises.from_identities(parse_identity(s, frozenset()) for _, s in split_statements(text))


def as_quasieq(P: HomogeneousPremises, goal: Identity) -> Quasiequation:
    return Quasiequation(tuple(P.identities()), goal)
