"""Forward proof construction: each helper computes the conclusion of a new step
from its children and checks that one step immediately."""

from __future__ import annotations

from .errors import UnboundPatternVar
from .kernel import Context, Derivation, Leaf, Step, check_step, congruence_proof, match
from .rules import RuleSet
from .term import (
    DEFAULT_FUNCS, Identity, Quasiequation, Shape, Term, Var, parse_identity, parse_term, replace,
)


class Builder:
    def __init__(self, rules: RuleSet, premises=(), funcs=DEFAULT_FUNCS):
        self.rules = rules
        self.funcs = frozenset(funcs) | rules.funcs
        self.premises = tuple(self.identity(p) for p in premises)
        self._holes = 0

    def term(self, x) -> Term:
        return parse_term(x, self.funcs) if isinstance(x, str) else x

    def identity(self, x) -> Identity:
        return parse_identity(x, self.funcs) if isinstance(x, str) else x

    def quasieq(self, conclusion) -> Quasiequation:
        return Quasiequation(self.premises, self.identity(conclusion))

    def leaf(self, i: int) -> Leaf:
        return Leaf(i, self.premises[i])

    def by(self, name: str, *kids: Derivation, **bind) -> Step:
        rule = self.rules[name]
        pats, _ = rule.pattern
        sigma = {k: self.term(v) for k, v in bind.items()}
        for pat, kid in zip(pats, kids):
            sigma = match(pat, kid.conclusion, sigma)
        needed = rule.conclusion.free_vars()
        missing = needed - sigma.keys()
        if missing:
            raise UnboundPatternVar(f"{name} needs bindings for {sorted(missing)}")
        from_premises = set().union(*(p.free_vars() for p in rule.premises)) if rule.premises else set()
        shown = tuple((k, sigma[k]) for k in sorted(needed - from_premises))
        node = Step(name, rule.conclusion.substitute(sigma), tuple(kids), shown)
        check_step(node, self.rules)
        return node

    def fresh_hole(self) -> str:
        self._holes += 1
        return f"_h{self._holes}"

    def rw(self, pf: Derivation, name: str, u, w, side: str | None = None, **bind) -> Step:
        """Rewrite every occurrence of ``u`` to ``w`` using the identity axiom ``name``."""
        u, w = self.term(u), self.term(w)
        c = pf.conclusion
        hole = self.fresh_hole()
        s = c.lhs if side == "rhs" else replace(c.lhs, u, Var(hole))
        t = c.rhs if side == "lhs" else replace(c.rhs, u, Var(hole))
        if s == c.lhs and t == c.rhs:
            raise ValueError(f"{u} does not occur in {c}")
        ctx = Context(s, t, hole, u, w, c.shape)
        node = Step(name, ctx.at(w), (pf,), tuple((k, self.term(v)) for k, v in sorted(bind.items())), ctx)
        check_step(node, self.rules)
        return node

    def indiscern(self, pf: Derivation, eq_pf: Derivation, u, w, side: str | None = None) -> Step:
        u, w = self.term(u), self.term(w)
        c = pf.conclusion
        hole = self.fresh_hole()
        s = c.lhs if side == "rhs" else replace(c.lhs, u, Var(hole))
        t = c.rhs if side == "lhs" else replace(c.rhs, u, Var(hole))
        ctx = Context(s, t, hole, u, w, c.shape)
        node = Step("indiscern", ctx.at(w), (pf, eq_pf), (), ctx)
        check_step(node, self.rules)
        return node

    def trans(self, *pfs: Derivation) -> Derivation:
        acc = pfs[0]
        for p in pfs[1:]:
            acc = self.by("trans", acc, p)
        return acc

    def eqtrans(self, *pfs: Derivation) -> Derivation:
        acc = pfs[0]
        for p in pfs[1:]:
            acc = self.by("eq-trans", acc, p)
        return acc

    def symm(self, pf: Derivation) -> Step:
        return self.by("symm", pf)

    def refl(self, t) -> Step:
        return self.by("eq-reflex", a=t)

    def cong(self, template, hole: str, eq_pf: Derivation) -> Derivation:
        """``template[hole:=u] = template[hole:=w]`` from ``eq_pf : u = w``."""
        d = eq_pf.conclusion.desugar()
        pf = congruence_proof(self.term(template), hole, d.lhs, d.rhs, eq_pf)
        return pf

    def restate(self, pf: Derivation, identity) -> Derivation:
        """Same step with a conclusion that is equal after desugaring (sugar folding)."""
        new = self.identity(identity)
        if not new.same(pf.conclusion):
            raise ValueError(f"{new} is not a restatement of {pf.conclusion}")
        if isinstance(pf, Leaf):
            return Leaf(pf.index, new)
        return Step(pf.rule, new, pf.children, pf.bindings, pf.ctx)


def as_le(i: Identity) -> Identity:
    return i.resugar() if i.shape is Shape.EQ else i
