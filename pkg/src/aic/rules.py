"""The rule database: equational logic, AIC0, the AIC1 additions, continuity
schemas, the infinitary system's rows, and the discrete head axioms.

Rules are written once in the surface syntax below with ``F`` standing for a
function symbol; per-symbol rules are instantiated for every declared symbol.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from . import lasso as lz
from .errors import InvalidSpec, RuleNotFound, DuplicateName
from .semantics import Interpretation, evaluate
from .term import (
    Apply, Head, Identity, Majorum, Minorum, Orbit, Quasiequation, Shift, Term, Var,
    children, parse_identity, print_identity, rebuild,
)


class Kind(enum.Enum):
    EQUATIONAL = "equational"
    AIC0 = "aic0"
    AIC1 = "aic1"
    CONTINUITY = "continuity"
    AICW_FINITARY = "aicw-finitary"
    AICW_INFINITARY = "aicw-infinitary"
    DERIVED = "derived"
    CONTEXT_SCHEMA = "context-schema"
    EXTRA = "extra"


@dataclass(frozen=True)
class Rule:
    name: str
    premises: tuple[Identity, ...]
    conclusion: Identity
    kind: Kind
    fsym: str | None = None
    note: str = ""
    provenance: object = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int:
        return len(self.premises)

    @property
    def pattern(self) -> tuple[tuple[Identity, ...], Identity]:
        """Desugared premises and conclusion, as used by the matcher."""
        cached = self.__dict__.get("_pattern")
        if cached is None:
            cached = (tuple(p.desugar() for p in self.premises), self.conclusion.desugar())
            object.__setattr__(self, "_pattern", cached)
        return cached

    def is_identity_axiom(self) -> bool:
        return not self.premises and self.kind is not Kind.CONTEXT_SCHEMA and self.kind is not Kind.AICW_INFINITARY

    def quasieq(self) -> Quasiequation:
        return Quasiequation(self.premises, self.conclusion)

    def show(self) -> str:
        if self.kind is Kind.CONTEXT_SCHEMA or self.kind is Kind.AICW_INFINITARY:
            return self.note
        prem = "; ".join(print_identity(p) for p in self.premises)
        return f"{prem} |- {print_identity(self.conclusion)}" if prem else f"|- {print_identity(self.conclusion)}"


# rule texts: "name: premise; premise |- conclusion"

EQ_RULES = """
eq-reflex: |- a = a
symm: a = b |- b = a
eq-trans: a = b; b = c |- a = c
cong-join: a = b; c = d |- a \\/ c = b \\/ d
cong-meet: a = b; c = d |- a /\\ c = b /\\ d
cong-hd: a = b |- hd a = hd b
cong-sh: a = b |- sh a = sh b
cong-dia: a = b |- dia a = dia b
cong-box: a = b |- box a = box b
"""

EQ_RULES_F = """
cong-F: a = b |- F a = F b
cong-F*: a = b |- F* a = F* b
"""

AIC0_RULES = """
bot: |- bot <= a
top: |- a <= top
join-comm: |- a \\/ b = b \\/ a
meet-comm: |- a /\\ b = b /\\ a
join-absorb: |- a \\/ (a /\\ b) = a
meet-absorb: |- a /\\ (a \\/ b) = a
join-assoc: |- a \\/ (b \\/ c) = (a \\/ b) \\/ c
meet-assoc: |- a /\\ (b /\\ c) = (a /\\ b) /\\ c
sh-mono: a <= b |- sh a <= sh b
sh-bot: |- sh bot <= bot
sh-top: |- top <= sh top
sh-join: |- sh (a \\/ b) = sh a \\/ sh b
sh-meet: |- sh (a /\\ b) = sh a /\\ sh b
dia-inflate: |- a <= dia a
box-deflate: |- box a <= a
dia-idem: |- dia dia a = dia a
box-idem: |- box box a = box a
dia-mono: a <= b |- dia a <= dia b
box-mono: a <= b |- box a <= box b
sh-dia-comm: |- sh dia a = dia sh a
sh-box-comm: |- sh box a = box sh a
dia-ind: sh a <= a |- dia a <= a
dia-ind-rev: dia a <= a |- sh a <= a
box-coind: a <= sh a |- a <= box a
box-coind-rev: a <= box a |- a <= sh a
"""

AIC0_RULES_F = """
F-mono: a <= b |- F a <= F b
F*-mono: a <= b |- F* a <= F* b
F-sh-comm: |- sh F a = F sh a
FF*-comm: |- F F* a = F* F a
iter: |- sh F* a = F F* sh a
F-ind: F a <= a |- F* a <= a
F-coind: a <= F a |- a <= F* a
"""

AIC1_RULES = """
reflex: |- a <= a
trans: a <= b; b <= c |- a <= c
antisymm: a <= b; b <= a |- a = b
weakenL: a = b |- a <= b
weakenR: a = b |- b <= a
join-idem: |- a \\/ a = a
meet-idem: |- a /\\ a = a
join-introL: a <= c; b <= c |- a \\/ b <= c
meet-introR: a <= b; a <= c |- a <= b /\\ c
meet-introL: b <= c |- a /\\ b <= c
join-introR: a <= b |- a <= b \\/ c
join-elim: a \\/ b <= c |- b <= c
meet-elim: a <= b /\\ c |- a <= b
dia-introR: a <= b |- a <= dia b
box-introL: a <= b |- box a <= b
dia-elim: dia a <= b |- a <= b
box-elim: a <= box b |- a <= b
dia-introL: a <= b; sh b <= b |- dia a <= b
box-introR: a <= sh a; a <= b |- a <= box b
dia-exp: |- dia a = a \\/ sh dia a
box-exp: |- box a = a /\\ sh box a
dia-desc: |- sh dia a <= dia a
box-asc: |- box a <= sh box a
"""

AIC1_RULES_F = """
semi-cont: |- dia F a <= F dia a
semi-cocont: |- F box a <= box F a
asc-iter: a <= sh a |- F F* a <= sh F* a
desc-iter: sh a <= a |- sh F* a <= F F* a
orbit-asc: a <= F a; a <= sh a |- F* a <= sh F* a
orbit-desc: sh a <= a; F a <= a |- sh F* a <= F* a
F*-introL: a <= b; F b <= b |- F* a <= b
F*-introR: a <= F a; a <= b |- a <= F* b
"""

CONTINUITY_RULES_F = {
    "wcont": "wcont: a <= sh a |- F dia a <= dia F a",
    "wcocont": "wcocont: sh a <= a |- box F a <= F box a",
    "ccont": "ccont: |- F dia a <= dia F a",
    "ccocont": "ccocont: |- box F a <= F box a",
}

AICW_RULES = """
w-bot: |- bot <= a
w-top: |- a <= top
w-join-comm: |- a \\/ b = b \\/ a
w-meet-comm: |- a /\\ b = b /\\ a
w-meet-absorb: |- a /\\ (a \\/ b) = a
w-join-absorb: |- a \\/ (a /\\ b) = a
w-meet-assoc: |- a /\\ (b /\\ c) = (a /\\ b) /\\ c
w-join-assoc: |- a \\/ (b \\/ c) = (a \\/ b) \\/ c
hd-bot: |- hd bot = bot
hd-top: |- hd top = top
hd-meet: |- hd (a /\\ b) = hd a /\\ hd b
hd-join: |- hd (a \\/ b) = hd a \\/ hd b
sh-hd: |- sh hd a = hd a
dia-hd: |- dia hd a = hd a
box-hd: |- box hd a = hd a
hd-hd: |- hd hd a = hd a
w-sh-bot: |- sh bot = bot
w-sh-top: |- sh top = top
w-sh-join: |- sh (a \\/ b) = sh a \\/ sh b
w-sh-meet: |- sh (a /\\ b) = sh a /\\ sh b
w-sh-dia-comm: |- sh dia a = dia sh a
w-sh-box-comm: |- sh box a = box sh a
w-dia-inflate: |- a <= dia a
w-box-deflate: |- box a <= a
w-dia-idem: |- dia dia a = dia a
w-box-idem: |- box box a = box a
w-dia-ind: sh a <= a |- dia a <= a
w-dia-ind-rev: dia a <= a |- sh a <= a
w-box-coind: a <= sh a |- a <= box a
w-box-coind-rev: a <= box a |- a <= sh a
"""

AICW_RULES_F = """
w-F-mono: a <= b |- F a <= F b
hd-F: |- hd F a = F hd a
hd-F*: |- hd F* a = hd a
w-F-sh-comm: |- sh F a = F sh a
w-iter: |- sh F* a = F F* sh a
"""

# finitary head axioms that the basic systems leave out; opt-in via "+heads"
HEAD_RULES = """
hd-bot: |- hd bot = bot
hd-top: |- hd top = top
hd-meet: |- hd (a /\\ b) = hd a /\\ hd b
hd-join: |- hd (a \\/ b) = hd a \\/ hd b
sh-hd: |- sh hd a = hd a
dia-hd: |- dia hd a = hd a
box-hd: |- box hd a = hd a
hd-hd: |- hd hd a = hd a
"""

HEAD_RULES_F = """
hd-F: |- hd F a = F hd a
hd-F*: |- hd F* a = hd a
"""

THETA_RULES = """
theta1: |- hd x = hd hd x
theta2: |- sh hd x = hd x
theta3: x = hd y |- hd x = hd y
theta4: x = hd y |- sh x = x
"""

INFINITARY = {
    "seq-sup": "/\\_n hd sh^n a <= b |- hd dia a <= b",
    "seq-inf": "/\\_n b <= hd sh^n a |- b <= hd box a",
    "seq-ext": "/\\_n hd sh^n a = hd sh^n b |- a = b",
}

INDISCERN_NOTE = "s[x:=u] <= t[x:=u]; u = w |- s[x:=w] <= t[x:=w]"


def rename_fsym(t: Term, old: str, new: str) -> Term:
    kids = tuple(rename_fsym(c, old, new) for c in children(t))
    match t:
        case Apply(f, _) if f == old:
            return Apply(new, kids[0])
        case Orbit(f, _) if f == old:
            return Orbit(new, kids[0])
    return rebuild(t, kids) if kids else t


def _rename_identity(i: Identity, old: str, new: str) -> Identity:
    return Identity(rename_fsym(i.lhs, old, new), rename_fsym(i.rhs, old, new), i.shape)


def rule_name(template: str, fsym: str | None) -> str:
    if fsym is None or fsym == "F":
        return template
    if "F" in template:
        return template.replace("F", fsym)
    return f"{template}[{fsym}]"


def parse_rule(line: str, kind: Kind, funcs=frozenset({"F"}), fsym: str | None = None) -> Rule:
    name, _, body = line.partition(":")
    prem_text, _, concl_text = body.partition("|-")
    premises = tuple(parse_identity(p, funcs) for p in prem_text.split(";") if p.strip())
    conclusion = parse_identity(concl_text, funcs)
    name = name.strip()
    if fsym is not None and fsym != "F":
        premises = tuple(_rename_identity(p, "F", fsym) for p in premises)
        conclusion = _rename_identity(conclusion, "F", fsym)
    return Rule(rule_name(name, fsym), premises, conclusion, kind, fsym)


def _rules(block: str, kind: Kind, fsyms=(None,)) -> list[Rule]:
    out = []
    for fsym in fsyms:
        for line in block.strip().splitlines():
            out.append(parse_rule(line, kind, fsym=fsym))
    return out


def indiscern_rule() -> Rule:
    return Rule("indiscern", (), Identity(Var("s"), Var("t")), Kind.CONTEXT_SCHEMA, note=INDISCERN_NOTE)


def infinitary_rules() -> list[Rule]:
    return [
        Rule(name, (), Identity(Var("a"), Var("a")), Kind.AICW_INFINITARY, note=text)
        for name, text in INFINITARY.items()
    ]


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: dict[str, Rule]
    includes: tuple[str, ...] = ()
    funcs: frozenset[str] = frozenset({"F"})

    def __contains__(self, name: str) -> bool:
        return name in self.rules

    def __getitem__(self, name: str) -> Rule:
        try:
            return self.rules[name]
        except KeyError:
            raise RuleNotFound(f"no rule named {name!r} in {self.name}", rule=name) from None

    def get(self, name: str) -> Rule | None:
        return self.rules.get(name)

    def __iter__(self):
        return iter(self.rules.values())

    def __len__(self):
        return len(self.rules)

    def extend(self, rules, name: str | None = None) -> "RuleSet":
        merged = dict(self.rules)
        for r in rules:
            if r.name in merged and merged[r.name] != r:
                raise DuplicateName(f"rule {r.name!r} already exists in {self.name}", rule=r.name)
            merged[r.name] = r
        return RuleSet(name or self.name, merged, self.includes + (self.name,), self.funcs)

    def finitary(self) -> list[Rule]:
        return [r for r in self if r.kind is not Kind.AICW_INFINITARY]


def _mk(name: str, parts: list[list[Rule]], includes=(), funcs=frozenset({"F"})) -> RuleSet:
    rules: dict[str, Rule] = {}
    for group in parts:
        for r in group:
            if r.name in rules:
                raise DuplicateName(f"duplicate rule {r.name!r}")
            rules[r.name] = r
    return RuleSet(name, rules, tuple(includes), funcs)


def builtin_rulesets(funcs=("F",)) -> dict[str, RuleSet]:
    """EQ, AIC0, AIC1, AICw and THETA over the declared function symbols.

    Continuity schemas are attached separately, per flagged symbol, by :func:`continuity_rules`.
    """
    funcs = tuple(dict.fromkeys(funcs))
    fs = frozenset(funcs)
    eq = _rules(EQ_RULES, Kind.EQUATIONAL) + _rules(EQ_RULES_F, Kind.EQUATIONAL, funcs)
    aic0 = _rules(AIC0_RULES, Kind.AIC0) + _rules(AIC0_RULES_F, Kind.AIC0, funcs)
    aic1 = _rules(AIC1_RULES, Kind.AIC1) + [indiscern_rule()] + _rules(AIC1_RULES_F, Kind.AIC1, funcs)
    aicw = _rules(AICW_RULES, Kind.AICW_FINITARY) + _rules(AICW_RULES_F, Kind.AICW_FINITARY, funcs) + infinitary_rules()
    theta = _rules(THETA_RULES, Kind.EXTRA)
    return {
        "EQ": _mk("EQ", [eq], funcs=fs),
        "AIC0": _mk("AIC0", [eq, aic0], ("EQ",), fs),
        "AIC1": _mk("AIC1", [eq, aic0, aic1], ("EQ", "AIC0"), fs),
        "AICw": _mk("AICw", [eq, aicw], ("EQ",), fs),
        "THETA": _mk("THETA", [_rules(EQ_RULES, Kind.EQUATIONAL), theta], ("EQ",), fs),
    }


def continuity_rules(flag: str, fsym: str) -> list[Rule]:
    if flag not in CONTINUITY_RULES_F:
        raise InvalidSpec(f"unknown continuity flag {flag!r}")
    return [parse_rule(CONTINUITY_RULES_F[flag], Kind.CONTINUITY, funcs=frozenset({"F"}), fsym=fsym)]


def head_rules(funcs=("F",)) -> list[Rule]:
    return _rules(HEAD_RULES, Kind.EXTRA) + _rules(HEAD_RULES_F, Kind.EXTRA, tuple(funcs))


_ADDON = re.compile(r"^(wcont|wcocont|ccont|ccocont)\(([A-Z][A-Za-z0-9_']*)\)$")


def parse_ruleset_spec(spec: str, funcs=("F",)) -> tuple[str, list[tuple[str, str]], bool]:
    parts = [p.strip() for p in spec.split("+") if p.strip()]
    if not parts:
        raise InvalidSpec("empty rule set specification")
    base, flags, heads = parts[0], [], False
    for p in parts[1:]:
        if p == "heads":
            heads = True
            continue
        m = _ADDON.match(p)
        if not m:
            raise InvalidSpec(f"unknown rule set component {p!r}")
        flags.append((m.group(1), m.group(2)))
    return base, flags, heads


def ruleset_from_spec(spec: str, funcs=None) -> RuleSet:
    """``AIC1+wcont(F)+ccont(G)+heads``; the signature defaults to F plus every flagged symbol."""
    base, flags, heads = parse_ruleset_spec(spec)
    declared = tuple(dict.fromkeys(tuple(funcs or ("F",)) + tuple(f for _, f in flags)))
    sets = builtin_rulesets(declared)
    if base not in sets:
        raise InvalidSpec(f"unknown rule set {base!r}; expected one of {sorted(sets)}")
    rs = sets[base]
    extra: list[Rule] = []
    for flag, fsym in flags:
        extra += continuity_rules(flag, fsym)
    if heads:
        extra += head_rules(declared)
    if not extra:
        return rs
    canonical = "+".join([base] + [f"{f}({s})" for f, s in flags] + (["heads"] if heads else []))
    return rs.extend(extra, name=canonical)


def aic1_additions(funcs=("F",)) -> list[Rule]:
    sets = builtin_rulesets(funcs)
    return [r for r in sets["AIC1"] if r.name not in sets["AIC0"]]


def derived_rule(name: str, q: Quasiequation, provenance=None) -> Rule:
    return Rule(name, q.premises, q.conclusion, Kind.DERIVED, provenance=provenance)


# semantic check of the three infinitary schemas

def _hd_shift(n: int, var: str) -> Term:
    t: Term = Var(var)
    for _ in range(n):
        t = Shift(t)
    return Head(t)


def check_aicw_infinitary(axiom: str, interp: Interpretation) -> bool:
    """Decide one infinitary schema under ``interp`` via the head-set reduction.

    The conjunction over all n is decided on n in ``0..len(prefix)+len(period)-1``:
    every later index repeats an element of that window.
    """
    a = interp.vars["a"]
    b = interp.vars["b"]
    memo: dict = {}
    L = interp.lattice
    if axiom == "seq-ext":
        p, q = lz.window(a, b)
        span = p + q
    else:
        span = len(a.prefix) + len(a.period)
    heads_a = [evaluate(_hd_shift(n, "a"), interp, memo) for n in range(span)]
    if axiom == "seq-sup":
        premise = all(lz.leq(h, b) for h in heads_a)
        return not premise or lz.leq(evaluate(Head(Majorum(Var("a"))), interp, memo), b)
    if axiom == "seq-inf":
        premise = all(lz.leq(b, h) for h in heads_a)
        return not premise or lz.leq(b, evaluate(Head(Minorum(Var("a"))), interp, memo))
    if axiom == "seq-ext":
        heads_b = [evaluate(_hd_shift(n, "b"), interp, memo) for n in range(span)]
        premise = all(lz.eq(x, y) for x, y in zip(heads_a, heads_b))
        return not premise or lz.eq(a, b)
    raise InvalidSpec(f"unknown infinitary schema {axiom!r} for lattice {L.name}")
