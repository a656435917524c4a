"""Randomized finite-model search: refutation, soundness fuzzing and fixed-point oracles.

Every trial draws its own ``random.Random(f"{seed}:{index}")`` stream, so a report
depends only on the configuration, and any trial can be replayed on its own.
Reports say ``counterexample`` or ``none-found``; finding nothing is not a proof.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field

from . import lasso as lz
from .errors import InvalidSpec, SoundnessViolation
from .lasso import Lasso
from .lattice import (
    CATALOGUE, FiniteLattice, MonotoneMap, build_lattice, gfp_below, identity_map, lfp_above,
    preserves_binary_joins, preserves_binary_meets, preserves_chain_joins, preserves_chain_meets,
    repair_monotone,
)
from .rules import Kind, Rule, RuleSet, check_aicw_infinitary
from .semantics import Interpretation, Model, evaluate, premises_hold, satisfies_identity
from .term import (
    Head, Identity, Majorum, Minorum, Orbit, Quasiequation, Shift, Var, parse_quasieq,
)


@dataclass(frozen=True)
class SearchConfig:
    lattices: tuple[str, ...] = CATALOGUE
    trials: int = 1000
    max_prefix: int = 3
    max_period: int = 3
    seed: int = 0
    continuity: tuple[tuple[str, str], ...] = ()  # (flag, fsym) pairs a sampled map must satisfy

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidSpec("trials must be at least 1")
        if self.max_prefix < 0 or self.max_period < 1:
            raise InvalidSpec("need max_prefix >= 0 and max_period >= 1")
        if not self.lattices:
            raise InvalidSpec("empty lattice pool")

    def pool(self) -> list[FiniteLattice]:
        return [build_lattice(name) for name in self.lattices]


def continuity_holds(f: MonotoneMap, flag: str) -> bool:
    """Semantic continuity test on a finite lattice.

    Countable sets of a finite lattice have finite joins, so countable
    (co)continuity is preservation of nonempty binary joins (meets); the
    chain versions reduce to monotonicity.
    """
    match flag:
        case "wcont":
            return preserves_chain_joins(f)
        case "wcocont":
            return preserves_chain_meets(f)
        case "ccont":
            return preserves_binary_joins(f) is None
        case "ccocont":
            return preserves_binary_meets(f) is None
    raise InvalidSpec(f"unknown continuity flag {flag!r}")


# sampling

def sample_map(rng: random.Random, L: FiniteLattice, flags=()) -> MonotoneMap:
    for _ in range(30):
        roll = rng.random()
        if roll < 0.35:
            f = repair_monotone(L, [rng.randrange(L.size) for _ in L.elements])
        elif roll < 0.6:
            f = _threshold_map(rng, L)
        elif roll < 0.7:
            f = identity_map(L)
        elif roll < 0.8:
            c = rng.randrange(L.size)
            f = MonotoneMap(L, (c,) * L.size)
        elif roll < 0.9:
            c = rng.randrange(L.size)
            f = MonotoneMap(L, tuple(L.join[x][c] for x in L.elements))
        else:
            c = rng.randrange(L.size)
            f = MonotoneMap(L, tuple(L.meet[x][c] for x in L.elements))
        if all(continuity_holds(f, flag) for flag in flags):
            return f
    return identity_map(L)


def _threshold_map(rng, L: FiniteLattice) -> MonotoneMap:
    # a jump at a join-reducible point is where binary joins stop being preserved
    reducible = _join_reducible(L)
    t = rng.choice(reducible) if reducible and rng.random() < 0.75 else rng.randrange(L.size)
    lo = rng.randrange(L.size)
    above = [y for y in L.elements if L.leq[lo][y] and y != lo]
    hi = rng.choice(above) if above else lo
    return MonotoneMap(L, tuple(hi if L.leq[t][x] else lo for x in L.elements))


@functools.cache
def _join_reducible(L: FiniteLattice) -> list[int]:
    return [z for z in L.elements
            if any(L.join[x][y] == z and x != z and y != z for x in L.elements for y in L.elements)]


@functools.cache
def _incomparable_pairs(L: FiniteLattice) -> list[tuple[int, int]]:
    return [(x, y) for x in L.elements for y in L.elements
            if x < y and not L.leq[x][y] and not L.leq[y][x]]


def _chain(rng, L, start, length, table):
    out = [start]
    for _ in range(length):
        out.append(table[out[-1]][rng.randrange(L.size)])
    return out


def sample_lasso(rng: random.Random, L: FiniteLattice, max_prefix: int, max_period: int) -> Lasso:
    """Random lasso with a mix of shapes: arbitrary, alternating between incomparable or
    distinct elements, flat, ascending, descending, eventually flat."""
    p = rng.randint(0, max_prefix)
    q = rng.randint(1, max_period)
    roll = rng.random()
    x = rng.randrange(L.size)
    if roll < 0.3:
        prefix = [rng.randrange(L.size) for _ in range(p)]
        period = [rng.randrange(L.size) for _ in range(q)]
    elif roll < 0.5:
        # tails that keep revisiting incomparable values separate tail suprema from pointwise ones
        prefix = [rng.randrange(L.size) for _ in range(p)]
        pairs = _incomparable_pairs(L)
        if pairs and max_period >= 2 and rng.random() < 0.75:
            period = list(rng.choice(pairs))
            rng.shuffle(period)
        else:
            period = rng.sample(range(L.size), min(max(q, min(2, max_period)), L.size))
    elif roll < 0.6:
        prefix, period = [], [x]
    elif roll < 0.75:
        seq = _chain(rng, L, x, p, L.join)
        prefix, period = seq[:-1], seq[-1:]
    elif roll < 0.9:
        seq = _chain(rng, L, x, p, L.meet)
        prefix, period = seq[:-1], seq[-1:]
    else:
        prefix, period = [rng.randrange(L.size) for _ in range(p)], [x]
    return lz.make(L, prefix, period)


def _related(rng, L, base: Lasso, cfg: SearchConfig) -> Lasso:
    # a lasso tied to an earlier one, so order and shift premises hold more often
    other = sample_lasso(rng, L, cfg.max_prefix, cfg.max_period)
    match rng.randrange(5):
        case 0:
            return base
        case 1:
            return lz.op_join(base, other)
        case 2:
            return lz.op_meet(base, other)
        case 3:
            return lz.op_shift(base)
        case _:
            return lz.op_head(base)


def trial_rng(seed: int, index: int, stream: str = "") -> random.Random:
    return random.Random(f"{seed}:{index}{':' + stream if stream else ''}")


def sample_interpretation(cfg: SearchConfig, vars, funcs, index: int = 0,
                          lattice: FiniteLattice | None = None) -> Interpretation:
    """The interpretation used by trial ``index``; deterministic in ``(cfg, index)``."""
    rng = trial_rng(cfg.seed, index)
    L = lattice or rng.choice(cfg.pool())
    flags: dict[str, list[str]] = {}
    for flag, fsym in cfg.continuity:
        flags.setdefault(fsym, []).append(flag)
    fmap = {f: sample_map(rng, L, flags.get(f, ())) for f in sorted(funcs)}
    values: dict[str, Lasso] = {}
    for v in sorted(vars):
        if values and rng.random() < 0.35:
            values[v] = _related(rng, L, values[rng.choice(sorted(values))], cfg)
        else:
            values[v] = sample_lasso(rng, L, cfg.max_prefix, cfg.max_period)
    return Interpretation(Model(L, fmap), values)


# refutation

@dataclass
class Counterexample:
    quasieq: Quasiequation
    interpretation: Interpretation
    failed: str  # "conclusion"
    window: tuple[int, int]
    trial: int

    @property
    def model(self) -> Model:
        return self.interpretation.model

    def replays(self) -> bool:
        from .semantics import satisfies_quasieq
        return not satisfies_quasieq(self.quasieq, self.interpretation)

    def to_json(self) -> dict:
        i = self.interpretation
        return {
            "lattice": i.lattice.name,
            "vars": {k: v.show() for k, v in sorted(i.vars.items())},
            "funcs": {k: f.show() for k, f in sorted(i.model.funcs.items())},
            "failed": self.failed,
            "window": list(self.window),
            "trial": self.trial,
        }

    def show(self) -> str:
        return f"{self.interpretation.show()}; {self.failed} fails (window {self.window[0]}+{self.window[1]}, trial {self.trial})"


@dataclass
class RefuteReport:
    quasieq: Quasiequation
    trials: int
    nonvacuous: int
    counterexample: Counterexample | None

    @property
    def verdict(self) -> str:
        return "counterexample" if self.counterexample else "none-found"


def _violation(q: Quasiequation, interp: Interpretation, memo, trial: int) -> Counterexample | None:
    c = q.conclusion
    lhs, rhs = evaluate(c.lhs, interp, memo), evaluate(c.rhs, interp, memo)
    if satisfies_identity(c, interp, memo):
        return None
    return Counterexample(q, interp, "conclusion", lz.window(lhs, rhs), trial)


def refute(q: Quasiequation, cfg: SearchConfig) -> RefuteReport:
    vars, funcs = q.free_vars(), q.fsyms()
    nonvacuous = 0
    for i in range(cfg.trials):
        interp = sample_interpretation(cfg, vars, funcs, i)
        memo: dict = {}
        if not premises_hold(q, interp, memo):
            continue
        nonvacuous += 1
        cex = _violation(q, interp, memo, i)
        if cex is not None:
            return RefuteReport(q, i + 1, nonvacuous, cex)
    return RefuteReport(q, cfg.trials, nonvacuous, None)


# soundness fuzzing

@dataclass
class RuleResult:
    name: str
    kind: str
    trials: int = 0
    nonvacuous: int = 0
    violations: int = 0
    counterexample: Counterexample | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "trials": self.trials,
               "nonvacuous": self.nonvacuous, "violations": self.violations}
        if self.note:
            out["note"] = self.note
        if self.counterexample:
            out["counterexample"] = self.counterexample.to_json()
        return out


@dataclass
class FuzzReport:
    ruleset: str
    trials: int
    seed: int
    results: list[RuleResult] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.results)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {"ruleset": self.ruleset, "trials": self.trials, "seed": self.seed,
                "violations": self.violations, "rules": [r.to_json() for r in self.results]}


def fuzz_soundness(rules: RuleSet | list[Rule], cfg: SearchConfig, strict: bool = False,
                   name: str | None = None) -> FuzzReport:
    """Check every rule of the set on ``cfg.trials`` shared interpretations.

    Continuity rules see a map that passes their semantic filter; the infinitary
    schemas go through :func:`check_aicw_infinitary`. With ``strict`` the first
    violation raises :class:`SoundnessViolation`.
    """
    rule_list = list(rules)
    label = name or getattr(rules, "name", "rules")
    vars: set[str] = {"a", "b"}
    funcs: set[str] = set(getattr(rules, "funcs", ()) or {"F"})
    for r in rule_list:
        vars |= r.quasieq().free_vars() if r.kind not in (Kind.CONTEXT_SCHEMA, Kind.AICW_INFINITARY) else set()
        funcs |= r.quasieq().fsyms()
    report = FuzzReport(label, cfg.trials, cfg.seed)
    rows = {r.name: RuleResult(r.name, r.kind.value) for r in rule_list}
    for r in rule_list:
        if r.kind is Kind.CONTEXT_SCHEMA:
            rows[r.name].note = "schema: evaluation is compositional, so equal subterms give equal results"
    plain = [r for r in rule_list if r.kind not in (Kind.CONTEXT_SCHEMA, Kind.AICW_INFINITARY, Kind.CONTINUITY)]
    infinitary = [r for r in rule_list if r.kind is Kind.AICW_INFINITARY]
    continuity = [r for r in rule_list if r.kind is Kind.CONTINUITY]
    for i in range(cfg.trials):
        interp = sample_interpretation(cfg, vars, funcs, i)
        memo: dict = {}
        for r in plain:
            _one(rows[r.name], r.quasieq(), interp, memo, i, strict, r)
        for r in infinitary:
            row = rows[r.name]
            row.trials += 1
            row.nonvacuous += 1
            if not check_aicw_infinitary(r.name, interp):
                row.violations += 1
                if strict:
                    raise SoundnessViolation(r.name, interp.show())
        for r in continuity:
            flag = _flag_of(r)
            rng = trial_rng(cfg.seed, i, r.name)
            f = sample_map(rng, interp.lattice, (flag,))
            filtered = Interpretation(Model(interp.lattice, {**interp.model.funcs, r.fsym: f}), interp.vars)
            _one(rows[r.name], r.quasieq(), filtered, {}, i, strict, r)
    report.results = list(rows.values())
    return report


def _flag_of(rule: Rule) -> str:
    for flag in ("wcocont", "ccocont", "wcont", "ccont"):
        if rule.name.startswith(flag):
            return flag
    raise InvalidSpec(f"{rule.name} is not a continuity rule")


def _one(row: RuleResult, q: Quasiequation, interp, memo, i: int, strict: bool, rule: Rule) -> None:
    row.trials += 1
    if not premises_hold(q, interp, memo):
        return
    row.nonvacuous += 1
    cex = _violation(q, interp, memo, i)
    if cex is None:
        return
    row.violations += 1
    row.counterexample = row.counterexample or cex
    if strict:
        raise SoundnessViolation(rule.name, cex.show())


# the flatness family

def flatness_quasieq(n: int) -> Quasiequation:
    """sh^N a = a and hd sh^i a = hd sh^(i+1) a for i < N imply sh a = a."""
    if n < 1:
        raise InvalidSpec("N must be at least 1")
    sh = lambda k: " ".join(["sh"] * k + ["a"])
    premises = [f"{sh(n)} = a"] + [f"hd {sh(i)} = hd {sh(i + 1)}" for i in range(n)]
    return parse_quasieq("; ".join(premises) + f" |- {sh(1)} = a")


@dataclass
class FlatnessReport:
    n: int
    trials: int
    nonvacuous: int
    exhaustive: int
    exhaustive_nonvacuous: int
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def validity_family_flatness(n: int, cfg: SearchConfig, exhaustive_lattices=("C2", "C3"),
                             exhaustive_prefix: int = 1) -> FlatnessReport:
    """Sampled and exhaustive evidence that the N-flatness quasiequation holds.

    Sampled trials bias periods toward divisors of N so the premises are met;
    the exhaustive part enumerates every lasso over the small lattices with a
    short prefix and a period dividing N.
    """
    q = flatness_quasieq(n)
    nonvacuous = violations = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i, "flat")
        L = rng.choice(cfg.pool())
        if rng.random() < 0.5:
            a = sample_lasso(rng, L, cfg.max_prefix, cfg.max_period)
        else:
            d = rng.choice(_divisors(n))
            x = rng.randrange(L.size)
            period = [x] * d if rng.random() < 0.5 else [rng.randrange(L.size) for _ in range(d)]
            a = lz.make(L, [rng.randrange(L.size) for _ in range(rng.randint(0, cfg.max_prefix))], period)
        interp = Interpretation(Model(L, {}), {"a": a})
        memo: dict = {}
        if premises_hold(q, interp, memo):
            nonvacuous += 1
            violations += _violation(q, interp, memo, i) is not None
    exhaustive = ex_nonvacuous = 0
    for name in exhaustive_lattices:
        L = build_lattice(name)
        for p in range(exhaustive_prefix + 1):
            for d in _divisors(n):
                for prefix in itertools.product(L.elements, repeat=p):
                    for period in itertools.product(L.elements, repeat=d):
                        exhaustive += 1
                        interp = Interpretation(Model(L, {}), {"a": lz.make(L, prefix, period)})
                        memo = {}
                        if premises_hold(q, interp, memo):
                            ex_nonvacuous += 1
                            violations += _violation(q, interp, memo, -1) is not None
    return FlatnessReport(n, cfg.trials, nonvacuous, exhaustive, ex_nonvacuous, violations)


# fixed-point oracles

@dataclass
class OracleReport:
    name: str
    trials: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


_DIA_ORBIT = Head(Majorum(Orbit("F", Var("a"))))
_BOX_ORBIT = Head(Minorum(Orbit("F", Var("a"))))
_OL = Minorum(Majorum(Orbit("F", Var("a"))))


def tkp_oracle(cfg: SearchConfig) -> tuple[OracleReport, OracleReport]:
    """Compare the head of the orbit majorum (minorum) with Kleene iteration up (down)."""
    up, down = OracleReport("lfp-above", cfg.trials), OracleReport("gfp-below", cfg.trials)
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i, "tkp")
        L = rng.choice(cfg.pool())
        f = sample_map(rng, L)
        post = [x for x in L.elements if L.leq[x][f(x)]]
        pre = [x for x in L.elements if L.leq[f(x)][x]]
        a, b = rng.choice(post), rng.choice(pre)
        model = Model(L, {"F": f})
        got = evaluate(_DIA_ORBIT, Interpretation(model, {"a": lz.flat(L, a)}))
        want = lfp_above(f, a)
        up.checked += 1
        if not got.is_flat() or got[0] != want:
            up.mismatches.append((L.name, f.show(), L.names[a], got.show(), L.names[want]))
        got = evaluate(_BOX_ORBIT, Interpretation(model, {"a": lz.flat(L, b)}))
        want = gfp_below(f, b)
        down.checked += 1
        if not got.is_flat() or got[0] != want:
            down.mismatches.append((L.name, f.show(), L.names[b], got.show(), L.names[want]))
    return up, down


@dataclass
class OlszewskiReport(OracleReport):
    ccont_models: int = 0


def olszewski_oracle(cfg: SearchConfig) -> OlszewskiReport:
    """The limit superior of the orbit of a flat seed is flat and postfixed, and fixed for join-preserving maps."""
    rep = OlszewskiReport("limsup-orbit", cfg.trials)
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i, "ol")
        L = rng.choice(cfg.pool())
        f = sample_map(rng, L)
        a = rng.randrange(L.size)
        v = evaluate(_OL, Interpretation(Model(L, {"F": f}), {"a": lz.flat(L, a)}))
        rep.checked += 1
        x = v[0]
        problem = None
        if not v.is_flat():
            problem = "not flat"
        elif not L.leq[x][f(x)]:
            problem = "not postfixed"
        elif continuity_holds(f, "ccont"):
            rep.ccont_models += 1
            if f(x) != x:
                problem = "not fixed"
        if problem:
            rep.mismatches.append((L.name, f.show(), L.names[a], v.show(), problem))
    return rep
