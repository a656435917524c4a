"""Models, interpretations and exact evaluation of terms as lassos."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lasso as lz
from .errors import InvalidSpec, ParseError, UnboundVariable, UnknownFunctionSymbol
from .lasso import Lasso
from .lattice import FiniteLattice, MonotoneMap, build_lattice, validate_monotone
from .term import (
    Apply, Bot, Head, Identity, Join, Majorum, Meet, Minorum, Orbit, Quasiequation,
    Shift, Term, Top, Var, split_statements,
)


@dataclass(frozen=True)
class Model:
    lattice: FiniteLattice
    funcs: dict[str, MonotoneMap] = field(default_factory=dict)

    def __post_init__(self):
        for name, f in self.funcs.items():
            if f.lattice is not self.lattice:
                raise InvalidSpec(f"map {name} lives on {f.lattice.name}, not {self.lattice.name}")

    def __hash__(self):
        return hash((self.lattice.name, tuple(sorted(self.funcs.items()))))


@dataclass(frozen=True)
class Interpretation:
    model: Model
    vars: dict[str, Lasso] = field(default_factory=dict)

    def __post_init__(self):
        for name, s in self.vars.items():
            if s.lattice is not self.model.lattice:
                raise InvalidSpec(f"variable {name} lives on {s.lattice.name}")

    @property
    def lattice(self) -> FiniteLattice:
        return self.model.lattice

    def show(self) -> str:
        parts = [f"lattice {self.lattice.name}"]
        parts += [f"let {k} = {v.show()}" for k, v in sorted(self.vars.items())]
        parts += [f"let {k} = {f.show()}" for k, f in sorted(self.model.funcs.items())]
        return "; ".join(parts)


def evaluate(t: Term, interp: Interpretation, memo: dict | None = None) -> Lasso:
    """Structural evaluation; ``memo`` may be shared across calls on the same interpretation."""
    if memo is None:
        memo = {}
    hit = memo.get(t)
    if hit is not None:
        return hit
    match t:
        case Var(name):
            try:
                out = interp.vars[name]
            except KeyError:
                raise UnboundVariable(f"variable {name!r} is unbound", variable=name) from None
        case Bot():
            out = lz.op_bot(interp.lattice)
        case Top():
            out = lz.op_top(interp.lattice)
        case Join(l, r):
            out = lz.op_join(evaluate(l, interp, memo), evaluate(r, interp, memo))
        case Meet(l, r):
            out = lz.op_meet(evaluate(l, interp, memo), evaluate(r, interp, memo))
        case Head(x):
            out = lz.op_head(evaluate(x, interp, memo))
        case Shift(x):
            out = lz.op_shift(evaluate(x, interp, memo))
        case Majorum(x):
            out = lz.op_majorum(evaluate(x, interp, memo))
        case Minorum(x):
            out = lz.op_minorum(evaluate(x, interp, memo))
        case Apply(f, x):
            out = lz.op_apply(_func(interp, f), evaluate(x, interp, memo))
        case Orbit(f, x):
            out = lz.op_orbit(_func(interp, f), evaluate(x, interp, memo))
        case _:
            raise TypeError(f"not a term: {t!r}")
    memo[t] = out
    return out


# the name used throughout the docs
eval_term = evaluate


def _func(interp: Interpretation, name: str) -> MonotoneMap:
    try:
        return interp.model.funcs[name]
    except KeyError:
        raise UnknownFunctionSymbol(f"function symbol {name!r} is not interpreted", symbol=name) from None


def satisfies_identity(identity: Identity, interp: Interpretation, memo=None) -> bool:
    d = identity.desugar()
    return lz.eq(evaluate(d.lhs, interp, memo), evaluate(d.rhs, interp, memo))


def satisfies_quasieq(q: Quasiequation, interp: Interpretation, memo=None) -> bool:
    if memo is None:
        memo = {}
    for p in q.premises:
        if not satisfies_identity(p, interp, memo):
            return True
    return satisfies_identity(q.conclusion, interp, memo)


def premises_hold(q: Quasiequation, interp: Interpretation, memo=None) -> bool:
    if memo is None:
        memo = {}
    return all(satisfies_identity(p, interp, memo) for p in q.premises)


# interpretation files

_TABLE = re.compile(r"^table\s*\{(.*)\}$", re.S)


def parse_table(text: str, lattice: FiniteLattice) -> MonotoneMap:
    """``table{0->1,1->2,2->2}``; every element must be mapped."""
    m = _TABLE.match(text.strip())
    if not m:
        raise ParseError(f"malformed table {text!r}", 0)
    mapping = {}
    for pair in m.group(1).split(","):
        if not pair.strip():
            continue
        if "->" not in pair:
            raise ParseError(f"malformed table entry {pair!r}", 0)
        src, dst = pair.split("->", 1)
        mapping[lattice.element(src)] = lattice.element(dst)
    missing = [lattice.names[x] for x in lattice.elements if x not in mapping]
    if missing:
        raise InvalidSpec(f"table misses elements {missing}")
    return validate_monotone(lattice, mapping)


def parse_interpretation(text: str, lattice: FiniteLattice | None = None) -> Interpretation:
    """``lattice C3; let a = <2 | 0,1>; let F = table{0->1,1->2,2->2};``"""
    funcs: dict[str, MonotoneMap] = {}
    vars_: dict[str, Lasso] = {}
    pending = []
    for lineno, stmt in split_statements(text):
        if stmt.startswith("lattice "):
            lattice = build_lattice(stmt)
            continue
        m = re.match(r"^let\s+([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(.+)$", stmt, re.S)
        if not m:
            raise ParseError(f"unexpected statement {stmt!r}", 0, lineno)
        pending.append((lineno, m.group(1), m.group(2)))
    if lattice is None:
        raise InvalidSpec("no lattice given")
    for lineno, name, rhs in pending:
        if name[0].isupper():
            funcs[name] = parse_table(rhs, lattice)
        else:
            vars_[name] = lz.parse_lasso(rhs, lattice)
    return Interpretation(Model(lattice, funcs), vars_)
