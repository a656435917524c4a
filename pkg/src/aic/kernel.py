"""The trusted derivation checker.

A derivation is a finite tree of ``Leaf`` and ``Step`` nodes, each stating its
conclusion. A step is accepted when one substitution, extending the explicit
bindings, maps the rule's conclusion onto the node and every rule premise onto
the corresponding child, in order. Object variables in proofs are constants to
the matcher. ``<=`` is sugar, so every comparison happens on desugared identities.

Steps may carry a context ``(s, t, hole, u, w)`` for indiscernibility: with
``C[x]`` the identity ``s <= t`` (or ``s = t`` when ``rel`` is ``=``) under
``hole := x``, the node must be ``C[w]``, the first child ``C[u]``, and either a
second child proves ``u = w`` (rule ``indiscern``) or the step names an identity
axiom of which ``u = w`` or ``w = u`` is an instance (implicit indiscernibility).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    ArityMismatch, BadLeaf, ConclusionMismatch, DuplicateName, MatchFail, RuleNotFound,
    UnboundPatternVar,
)
from .rules import Kind, Rule, RuleSet, derived_rule
from .term import (
    Apply, Identity, Orbit, Quasiequation, Shape, Term, Var, children, free_vars,
    print_identity, print_term, substitute,
)


@dataclass(frozen=True)
class Context:
    s: Term
    t: Term
    hole: str
    u: Term
    w: Term
    rel: Shape = Shape.LE

    def at(self, x: Term) -> Identity:
        sigma = {self.hole: x}
        return Identity(substitute(self.s, sigma), substitute(self.t, sigma), self.rel)

    def substitute(self, sigma) -> "Context":
        return Context(substitute(self.s, sigma), substitute(self.t, sigma), self.hole,
                       substitute(self.u, sigma), substitute(self.w, sigma), self.rel)


@dataclass(frozen=True)
class Leaf:
    index: int
    conclusion: Identity


@dataclass(frozen=True)
class Step:
    rule: str
    conclusion: Identity
    children: tuple = ()
    bindings: tuple[tuple[str, Term], ...] = ()
    ctx: Context | None = None

    @property
    def binding_map(self) -> dict[str, Term]:
        return dict(self.bindings)


Derivation = Leaf | Step


def size(d: Derivation) -> int:
    if isinstance(d, Leaf):
        return 1
    return 1 + sum(size(c) for c in d.children)


# matching

def match_term(pattern: Term, concrete: Term, sigma: dict[str, Term], where: str) -> None:
    stack = [(pattern, concrete)]
    while stack:
        p, c = stack.pop()
        if isinstance(p, Var):
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = c
            elif bound != c:
                raise MatchFail(where, f"{p.name} bound to both {print_term(bound)} and {print_term(c)} at {where}")
            continue
        if type(p) is not type(c) or (isinstance(p, (Apply, Orbit)) and p.fsym != c.fsym):
            raise MatchFail(where, f"expected {print_term(p)} but found {print_term(c)} at {where}")
        stack.extend(zip(children(p), children(c)))


def match(pattern: Identity, concrete: Identity, seed=None, where: str = "conclusion") -> dict[str, Term]:
    """First-order matching of desugared identities, extending ``seed``."""
    sigma = dict(seed or {})
    p, c = pattern.desugar(), concrete.desugar()
    match_term(p.lhs, c.lhs, sigma, where)
    match_term(p.rhs, c.rhs, sigma, where)
    return sigma


def _rule_vars(rule: Rule) -> set[str]:
    out = rule.conclusion.free_vars()
    for p in rule.premises:
        out |= p.free_vars()
    return out


def match_step(rule: Rule, node: Identity, premises, seed=None) -> dict[str, Term]:
    pats, concl = rule.pattern
    sigma = match(concl, node, seed, "conclusion")
    for i, (pat, got) in enumerate(zip(pats, premises)):
        sigma = match(pat, got, sigma, f"premise {i}")
    missing = _rule_vars(rule) - sigma.keys()
    if missing:
        name = sorted(missing)[0]
        raise UnboundPatternVar(f"pattern variable {name} of {rule.name} needs an explicit binding", variable=name)
    return sigma


# checking

def _same(a: Identity, b: Identity) -> bool:
    return a.same(b)


def check_step(node: Step, rules: RuleSet, premises=None, path=()) -> Rule:
    """Check one step against its children's stated conclusions (not recursively)."""
    rule = rules.get(node.rule)
    if rule is None:
        raise RuleNotFound(f"no rule named {node.rule!r} in {rules.name}", rule=node.rule, path=list(path))
    kids = [c.conclusion for c in node.children]
    seed = node.binding_map
    extra = seed.keys() - _rule_vars(rule) if rule.kind is not Kind.CONTEXT_SCHEMA else set()
    if extra:
        raise MatchFail("bindings", f"{sorted(extra)[0]} is not a variable of {rule.name}", path)
    if node.ctx is not None:
        _check_context(node, rule, kids, seed, path)
        return rule
    if rule.kind is Kind.CONTEXT_SCHEMA:
        raise MatchFail("context", f"{rule.name} needs a ctx clause", path)
    if rule.kind is Kind.AICW_INFINITARY:
        raise RuleNotFound(f"{rule.name} is an infinitary schema and cannot appear in a finite derivation",
                           rule=rule.name, path=list(path))
    if len(kids) != rule.arity:
        raise ArityMismatch(f"{rule.name} has {rule.arity} premises but the step has {len(kids)} children",
                            rule=rule.name, path=list(path))
    try:
        match_step(rule, node.conclusion, kids, seed)
    except MatchFail as e:
        raise MatchFail(e.position, f"{rule.name}: {e.message}", path) from None
    except UnboundPatternVar as e:
        e.details["path"] = list(path)
        raise
    return rule


def _check_context(node: Step, rule: Rule, kids, seed, path) -> None:
    ctx = node.ctx
    explicit = rule.kind is Kind.CONTEXT_SCHEMA
    want = 2 if explicit else 1
    if not explicit and rule.premises:
        raise ArityMismatch(f"{rule.name} has premises and cannot justify a rewrite", rule=rule.name, path=list(path))
    if rule.kind is Kind.AICW_INFINITARY:
        raise RuleNotFound(f"{rule.name} is an infinitary schema", rule=rule.name, path=list(path))
    if len(kids) != want:
        raise ArityMismatch(f"{rule.name} with ctx takes {want} children, got {len(kids)}",
                            rule=rule.name, path=list(path))
    if not _same(node.conclusion, ctx.at(ctx.w)):
        raise MatchFail("conclusion", f"conclusion is not the context at {print_term(ctx.w)}", path)
    if not _same(kids[0], ctx.at(ctx.u)):
        raise MatchFail("premise 0", f"first child is not the context at {print_term(ctx.u)}", path)
    if explicit:
        if not _same(kids[1], Identity(ctx.u, ctx.w)):
            raise MatchFail("premise 1", "second child must prove u = w", path)
        return
    failure = None
    for lhs, rhs in ((ctx.u, ctx.w), (ctx.w, ctx.u)):
        try:
            match_step(rule, Identity(lhs, rhs), (), seed)
            return
        except (MatchFail, UnboundPatternVar) as e:
            failure = failure or e
    raise MatchFail("rewrite", f"u = w is not an instance of {rule.name}: {failure.message}", path)


def check(d: Derivation, q: Quasiequation, rules: RuleSet) -> None:
    """Raise on the first defect; return None when ``d`` derives ``q`` from ``rules``."""
    if not _same(d.conclusion, q.conclusion):
        raise ConclusionMismatch(
            f"derivation concludes {print_identity(d.conclusion)}, expected {print_identity(q.conclusion)}",
            path=[])
    stack: list[tuple[Derivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Leaf):
            if not 0 <= node.index < len(q.premises):
                raise BadLeaf(node.index, f"no premise {node.index}", path)
            if not _same(node.conclusion, q.premises[node.index]):
                raise BadLeaf(node.index, f"leaf {node.index} states {print_identity(node.conclusion)}, "
                                          f"premise is {print_identity(q.premises[node.index])}", path)
            continue
        check_step(node, rules, q.premises, path)
        stack.extend((c, path + (i,)) for i, c in enumerate(node.children))


def is_valid(d: Derivation, q: Quasiequation, rules: RuleSet) -> bool:
    try:
        check(d, q, rules)
        return True
    except Exception:
        return False


def register_derived(name: str, q: Quasiequation, d: Derivation, rules: RuleSet) -> RuleSet:
    """Check ``d`` and return ``rules`` extended by ``q`` as the derived rule ``name``."""
    if name in rules:
        raise DuplicateName(f"rule {name!r} already exists in {rules.name}", rule=name)
    check(d, q, rules)
    return rules.extend([derived_rule(name, q, provenance=(d, rules))])


def base_rules(rules: RuleSet) -> RuleSet:
    return RuleSet(rules.name, {k: r for k, r in rules.rules.items() if r.kind is not Kind.DERIVED},
                   rules.includes, rules.funcs)


# inlining and indiscernibility expansion

_fresh = itertools.count()


def fresh_var(avoid: set[str], stem: str = "_v") -> str:
    while True:
        name = f"{stem}{next(_fresh)}"
        if name not in avoid:
            return name


def derivation_vars(d: Derivation) -> set[str]:
    out = d.conclusion.free_vars()
    if isinstance(d, Step):
        for _, t in d.bindings:
            out |= free_vars(t)
        if d.ctx is not None:
            c = d.ctx
            out |= free_vars(c.s) | free_vars(c.t) | free_vars(c.u) | free_vars(c.w) | {c.hole}
        for k in d.children:
            out |= derivation_vars(k)
    return out


def instantiate(d: Derivation, sigma: dict[str, Term], leaves) -> Derivation:
    """Apply ``sigma`` to every identity in ``d`` and graft ``leaves[i]`` over ``Leaf(i)``."""
    if isinstance(d, Leaf):
        return leaves[d.index]
    kids = tuple(instantiate(c, sigma, leaves) for c in d.children)
    ctx = d.ctx
    if ctx is not None:
        hole = sigma.get(ctx.hole)
        inner = {k: v for k, v in sigma.items() if k != ctx.hole}
        ctx = ctx.substitute(inner)
        if isinstance(hole, Var):
            ctx = Context(substitute(ctx.s, {d.ctx.hole: hole}), substitute(ctx.t, {d.ctx.hole: hole}),
                          hole.name, ctx.u, ctx.w, ctx.rel)
    return Step(d.rule, d.conclusion.substitute(sigma), kids,
                tuple((k, substitute(v, sigma)) for k, v in d.bindings), ctx)


def _rename_apart(d: Derivation, q: Quasiequation, avoid: set[str]) -> dict[str, Term]:
    # variables private to a derived proof (cut terms, holes) get fresh names
    private = derivation_vars(d) - q.free_vars()
    taken = set(avoid) | derivation_vars(d)
    ren = {}
    for v in sorted(private):
        name = fresh_var(taken)
        taken.add(name)
        ren[v] = Var(name)
    return ren


def inline(d: Derivation, rules: RuleSet) -> Derivation:
    """Replace every derived-rule step by its (recursively inlined) stored derivation.

    Implicit rewrites justified by a derived identity are expanded to congruence
    steps, so the result only mentions rules of :func:`base_rules`.
    """
    if isinstance(d, Leaf):
        return d
    kids = tuple(inline(c, rules) for c in d.children)
    rule = rules[d.rule]
    if rule.kind is not Kind.DERIVED:
        return Step(d.rule, d.conclusion, kids, d.bindings, d.ctx)
    proof, home = rule.provenance
    body = inline(proof, home)
    q = rule.quasieq()
    avoid = derivation_vars(d)
    if d.ctx is None:
        sigma = match_step(rule, d.conclusion, [k.conclusion for k in kids], d.binding_map)
        sigma.update(_rename_apart(body, q, avoid | set(sigma)))
        return instantiate(body, sigma, kids)
    # implicit rewrite with a derived identity: prove u = w, then expand
    ctx = d.ctx
    for lhs, rhs in ((ctx.u, ctx.w), (ctx.w, ctx.u)):
        try:
            sigma = match_step(rule, Identity(lhs, rhs), (), d.binding_map)
        except (MatchFail, UnboundPatternVar):
            continue
        sigma.update(_rename_apart(body, q, avoid | set(sigma)))
        inst = instantiate(body, sigma, ())
        eq_pf = inst
        if lhs is not ctx.u:
            eq_pf = Step("symm", Identity(ctx.u, ctx.w), (eq_pf,))
        return congruence_rewrite(d.conclusion, ctx, kids[0], eq_pf)
    raise MatchFail("rewrite", f"u = w is not an instance of {rule.name}")


def congruence_proof(t: Term, hole: str, u: Term, w: Term, eq_pf: Derivation) -> Derivation:
    """Proof of ``t[hole:=u] = t[hole:=w]`` from a proof of ``u = w`` by congruence."""
    lhs, rhs = substitute(t, {hole: u}), substitute(t, {hole: w})
    if isinstance(t, Var) and t.name == hole:
        return eq_pf
    if hole not in free_vars(t):
        return Step("eq-reflex", Identity(lhs, rhs))
    kids = tuple(congruence_proof(c, hole, u, w, eq_pf) for c in children(t))
    return Step(cong_rule_name(t), Identity(lhs, rhs), kids)


def cong_rule_name(t: Term) -> str:
    from .term import Head, Join, Majorum, Meet, Minorum, Shift
    match t:
        case Join():
            return "cong-join"
        case Meet():
            return "cong-meet"
        case Head():
            return "cong-hd"
        case Shift():
            return "cong-sh"
        case Majorum():
            return "cong-dia"
        case Minorum():
            return "cong-box"
        case Apply(f, _):
            return f"cong-{f}"
        case Orbit(f, _):
            return f"cong-{f}*"
    raise ValueError(f"no congruence rule for {t!r}")


def congruence_rewrite(conclusion: Identity, ctx: Context, pf_u: Derivation, eq_pf: Derivation) -> Derivation:
    """Equational-logic replacement of one indiscernibility step."""
    cu = ctx.at(ctx.u).desugar()
    cw = ctx.at(ctx.w).desugar()
    if ctx.rel is Shape.LE:
        from .term import Join
        lhs_t, rhs_t = Join(ctx.s, ctx.t), ctx.t
    else:
        lhs_t, rhs_t = ctx.s, ctx.t
    left = congruence_proof(lhs_t, ctx.hole, ctx.u, ctx.w, eq_pf)
    right = congruence_proof(rhs_t, ctx.hole, ctx.u, ctx.w, eq_pf)
    back = Step("symm", Identity(cw.lhs, cu.lhs), (left,))
    mid = Step("eq-trans", Identity(cw.lhs, cu.rhs), (back, pf_u))
    return Step("eq-trans", conclusion, (mid, right))


def expand_indiscern(d: Derivation, rules: RuleSet) -> Derivation:
    """Eliminate every context step in favour of symm, eq-trans and congruence."""
    if isinstance(d, Leaf):
        return d
    kids = tuple(expand_indiscern(c, rules) for c in d.children)
    if d.ctx is None:
        return Step(d.rule, d.conclusion, kids, d.bindings, None)
    ctx = d.ctx
    rule = rules[d.rule]
    if rule.kind is Kind.CONTEXT_SCHEMA:
        return congruence_rewrite(d.conclusion, ctx, kids[0], kids[1])
    for lhs, rhs in ((ctx.u, ctx.w), (ctx.w, ctx.u)):
        try:
            match_step(rule, Identity(lhs, rhs), (), d.binding_map)
        except (MatchFail, UnboundPatternVar):
            continue
        eq_pf = Step(d.rule, Identity(lhs, rhs), (), d.bindings)
        if lhs is not ctx.u:
            eq_pf = Step("symm", Identity(ctx.u, ctx.w), (eq_pf,))
        return congruence_rewrite(d.conclusion, ctx, kids[0], eq_pf)
    raise MatchFail("rewrite", f"u = w is not an instance of {rule.name}")
