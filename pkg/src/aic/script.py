"""Line-oriented proof scripts.

::

    proof tkp-fp
    rules AIC1+wcont(F)
    uses le-meet
    assume a <= F a
    show F dia F* a = dia F* a
    step trans :: a <= c
      leaf 0 :: a <= b
      step ... :: b <= c

Indentation (two spaces per level) gives the tree shape. ``step cuts`` with n
children abbreviates a left-nested chain of ``trans`` steps and is expanded here,
outside the kernel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, ParseError
from .kernel import Context, Derivation, Leaf, Step
from .term import (
    Identity, Join, Quasiequation, Shape, Term, funcs_of_text, parse_identity, parse_term,
    print_identity, print_term,
)


@dataclass
class Script:
    name: str
    ruleset: str
    quasieq: Quasiequation
    derivation: Derivation
    uses: tuple[str, ...] = ()
    funcs: frozenset[str] = frozenset({"F"})
    about: str = ""


_STEP = re.compile(r"^step\s+(\S+)(.*)$")
_LEAF = re.compile(r"^leaf\s+(\d+)\s*$")


def _split_conclusion(body: str, lineno: int) -> tuple[str, str]:
    if "::" not in body:
        raise ParseError("missing ':: <identity>'", 0, lineno)
    head, _, concl = body.rpartition("::")
    return head.strip(), concl.strip()


def _assignments(text: str, funcs, lineno: int) -> list[tuple[str, str]]:
    out = []
    for part in text.split(","):
        if not part.strip():
            continue
        if ":=" not in part:
            raise ParseError(f"expected name:=term, found {part.strip()!r}", 0, lineno)
        k, _, v = part.partition(":=")
        out.append((k.strip(), v.strip()))
    return out


def _parse_step(rest: str, funcs, lineno: int):
    with_text = ctx_text = ""
    m = re.search(r"\bctx\b", rest)
    if m:
        ctx_text = rest[m.end():]
        rest = rest[:m.start()]
    m = re.search(r"\bwith\b", rest)
    if m:
        with_text = rest[m.end():]
        rest = rest[:m.start()]
    if rest.strip():
        raise ParseError(f"unexpected text {rest.strip()!r}", 0, lineno)
    try:
        bindings = tuple((k, parse_term(v, funcs)) for k, v in _assignments(with_text, funcs, lineno))
        ctx = None
        if ctx_text:
            fields = dict(_assignments(ctx_text, funcs, lineno))
            missing = {"s", "t", "hole", "u", "w"} - fields.keys()
            if missing:
                raise ParseError(f"ctx misses {sorted(missing)}", 0, lineno)
            rel = fields.get("rel", "le").strip()
            if rel not in ("le", "eq"):
                raise ParseError(f"ctx rel must be le or eq, not {rel!r}", 0, lineno)
            ctx = Context(parse_term(fields["s"], funcs), parse_term(fields["t"], funcs), fields["hole"].strip(),
                          parse_term(fields["u"], funcs), parse_term(fields["w"], funcs),
                          Shape.LE if rel == "le" else Shape.EQ)
    except ParseError as e:
        raise ParseError(e.message.split(" at position")[0], e.position, lineno) from None
    return bindings, ctx


def _sides(i: Identity) -> tuple[Term, Term]:
    # lhs and rhs of an inequality, whichever way it is written
    if i.shape is Shape.LE:
        return i.lhs, i.rhs
    if isinstance(i.lhs, Join) and i.lhs.right == i.rhs:
        return i.lhs.left, i.rhs
    return i.lhs, i.rhs


def expand_cuts(conclusion: Identity, kids: list[Derivation]) -> Derivation:
    if len(kids) < 2:
        raise ArityMismatch("cuts needs at least two children", rule="cuts")
    acc = kids[0]
    first = _sides(kids[0].conclusion)[0]
    for i, k in enumerate(kids[1:], 1):
        last = i == len(kids) - 1
        concl = conclusion if last else Identity(first, _sides(k.conclusion)[1], Shape.LE)
        acc = Step("trans", concl, (acc, k))
    return acc


def parse_script(text: str, funcs=None) -> Script:
    lines = text.splitlines()
    body_text = "\n".join(l for l in lines if not l.strip().startswith(("rules ", "proof ", "about ", "uses ")))
    funcs = frozenset(funcs) if funcs else funcs_of_text(body_text)
    name, ruleset, uses, premises, conclusion = "anonymous", "AIC1", [], [], None
    nodes: list[tuple[int, int, str, str]] = []
    about = ""
    for lineno, raw in enumerate(lines, 1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        indent = len(stripped) - len(stripped.lstrip(" "))
        line = stripped.strip()
        word, _, rest = line.partition(" ")
        try:
            match word:
                case "proof":
                    name = rest.strip()
                case "about":
                    about = rest.strip()
                case "rules":
                    ruleset = rest.strip()
                case "uses":
                    uses += [u.strip() for u in rest.split(",") if u.strip()]
                case "assume":
                    premises.append(parse_identity(rest, funcs))
                case "show":
                    conclusion = parse_identity(rest, funcs)
                case "step" | "leaf":
                    if indent % 2:
                        raise ParseError("indentation must be a multiple of two spaces", 0)
                    nodes.append((lineno, indent // 2, word, line))
                case _:
                    raise ParseError(f"unknown line {line!r}", 0)
        except ParseError as e:
            if e.line is not None:
                raise
            raise ParseError(e.message.split(" at position")[0], e.position, lineno) from None
    if conclusion is None:
        raise ParseError("missing 'show' line", 0)
    if not nodes:
        raise ParseError("missing derivation", 0)
    derivation, used = _build(nodes, 0, 0, funcs)
    if used != len(nodes):
        raise ParseError("derivation must have a single root", 0, nodes[used][0])
    return Script(name, ruleset, Quasiequation(tuple(premises), conclusion), derivation, tuple(uses), funcs, about)


def _build(nodes, i: int, depth: int, funcs) -> tuple[Derivation, int]:
    lineno, d, word, line = nodes[i]
    if d != depth:
        raise ParseError(f"expected indentation depth {depth}, found {d}", 0, lineno)
    head, concl_text = _split_conclusion(line, lineno)
    try:
        conclusion = parse_identity(concl_text, funcs)
    except ParseError as e:
        raise ParseError(e.message.split(" at position")[0], e.position, lineno) from None
    if word == "leaf":
        m = _LEAF.match(head)
        if not m:
            raise ParseError(f"malformed leaf {head!r}", 0, lineno)
        if i + 1 < len(nodes) and nodes[i + 1][1] > depth:
            raise ParseError("a leaf has no children", 0, nodes[i + 1][0])
        return Leaf(int(m.group(1)), conclusion), i + 1
    m = _STEP.match(head)
    if not m:
        raise ParseError(f"malformed step {head!r}", 0, lineno)
    rule = m.group(1)
    bindings, ctx = _parse_step(m.group(2), funcs, lineno)
    kids = []
    j = i + 1
    while j < len(nodes) and nodes[j][1] > depth:
        kid, j = _build(nodes, j, depth + 1, funcs)
        kids.append(kid)
    if rule == "cuts":
        return expand_cuts(conclusion, kids), j
    return Step(rule, conclusion, tuple(kids), bindings, ctx), j


# dumping

def dump_derivation(d: Derivation, depth: int = 0) -> list[str]:
    pad = "  " * depth
    if isinstance(d, Leaf):
        return [f"{pad}leaf {d.index} :: {print_identity(d.conclusion)}"]
    parts = [f"{pad}step {d.rule}"]
    if d.bindings:
        parts.append("with " + ", ".join(f"{k}:={print_term(v)}" for k, v in d.bindings))
    if d.ctx is not None:
        c = d.ctx
        fields = f"s:={print_term(c.s)}, t:={print_term(c.t)}, hole:={c.hole}, u:={print_term(c.u)}, w:={print_term(c.w)}"
        if c.rel is Shape.EQ:
            fields += ", rel:=eq"
        parts.append("ctx " + fields)
    parts.append(f":: {print_identity(d.conclusion)}")
    out = [" ".join(parts)]
    for k in d.children:
        out += dump_derivation(k, depth + 1)
    return out


def dump_script(s: Script) -> str:
    out = [f"proof {s.name}"]
    if s.about:
        out.append(f"about {s.about}")
    out.append(f"rules {s.ruleset}")
    if s.uses:
        out.append("uses " + ", ".join(s.uses))
    out += [f"assume {print_identity(p)}" for p in s.quasieq.premises]
    out.append(f"show {print_identity(s.quasieq.conclusion)}")
    out += dump_derivation(s.derivation)
    return "\n".join(out) + "\n"
