"""Term syntax: AST, parser, printer, substitution and the ``<=`` desugaring.

Surface grammar (ASCII with Unicode aliases on input)::

    identity := term ("=" | "<=") term
    term     := unary (("\\/" unary)* | ("/\\" unary)*)
    unary    := ("hd" | "sh" | "dia" | "box" | FSYM | FSYM "*") unary | atom
    atom     := "bot" | "top" | VAR | "(" term ")"

Function symbols start with an uppercase letter, variables with a lowercase one.
Chains of one binary operator associate to the left; mixing the two without
parentheses is rejected.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .errors import ParseError, UnknownFunctionSymbol


class Term:
    __slots__ = ()

    def __str__(self):
        return print_term(self)


def _cached_hash(cls):
    # terms are hashed a lot by the evaluator memo; cache the structural hash
    original = cls.__hash__

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            h = original(self)
            object.__setattr__(self, "_h", h)
            return h

    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True)
class Bot(Term):
    pass


@_cached_hash
@dataclass(frozen=True)
class Top(Term):
    pass


@_cached_hash
@dataclass(frozen=True)
class Var(Term):
    name: str


@_cached_hash
@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@_cached_hash
@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@_cached_hash
@dataclass(frozen=True)
class Head(Term):
    arg: Term


@_cached_hash
@dataclass(frozen=True)
class Shift(Term):
    arg: Term


@_cached_hash
@dataclass(frozen=True)
class Majorum(Term):
    arg: Term


@_cached_hash
@dataclass(frozen=True)
class Minorum(Term):
    arg: Term


@_cached_hash
@dataclass(frozen=True)
class Apply(Term):
    fsym: str
    arg: Term


@_cached_hash
@dataclass(frozen=True)
class Orbit(Term):
    fsym: str
    arg: Term


BOT = Bot()
TOP = Top()

UNARY = {"hd": Head, "sh": Shift, "dia": Majorum, "box": Minorum}
UNARY_NAME = {v: k for k, v in UNARY.items()}
BINARY = {"\\/": Join, "/\\": Meet}
BINARY_NAME = {v: k for k, v in BINARY.items()}
KEYWORDS = {"bot", "top", *UNARY}


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Join(l, r) | Meet(l, r):
            return (l, r)
        case Head(x) | Shift(x) | Majorum(x) | Minorum(x) | Apply(_, x) | Orbit(_, x):
            return (x,)
    return ()


def rebuild(t: Term, kids: tuple[Term, ...]) -> Term:
    """Same head constructor as ``t`` with new children."""
    match t:
        case Join():
            return Join(*kids)
        case Meet():
            return Meet(*kids)
        case Apply(f, _):
            return Apply(f, kids[0])
        case Orbit(f, _):
            return Orbit(f, kids[0])
        case Head() | Shift() | Majorum() | Minorum():
            return type(t)(kids[0])
    return t


def free_vars(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        else:
            stack.extend(children(u))
    return out


def fsyms(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, (Apply, Orbit)):
            out.add(u.fsym)
        stack.extend(children(u))
    return out


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


def substitute(t: Term, sigma: dict[str, Term]) -> Term:
    """Simultaneous substitution; variables outside ``sigma`` are unchanged."""
    if not sigma:
        return t
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    kids = children(t)
    if not kids:
        return t
    new = tuple(substitute(c, sigma) for c in kids)
    if all(a is b for a, b in zip(new, kids)):
        return t
    return rebuild(t, new)


def replace(t: Term, old: Term, new: Term) -> Term:
    """Replace every occurrence of the subterm ``old``."""
    if t == old:
        return new
    kids = children(t)
    if not kids:
        return t
    out = tuple(replace(c, old, new) for c in kids)
    if all(a is b for a, b in zip(out, kids)):
        return t
    return rebuild(t, out)


# identities and quasiequations

class Shape(enum.Enum):
    EQ = "="
    LE = "<="


@dataclass(frozen=True)
class Identity:
    """``lhs = rhs`` or the sugar ``lhs <= rhs`` (meaning ``lhs \\/ rhs = rhs``)."""

    lhs: Term
    rhs: Term
    shape: Shape = Shape.EQ

    def desugar(self) -> "Identity":
        if self.shape is Shape.LE:
            return Identity(Join(self.lhs, self.rhs), self.rhs, Shape.EQ)
        return self

    def same(self, other: "Identity") -> bool:
        """Equality after desugaring both sides."""
        a, b = self.desugar(), other.desugar()
        return a.lhs == b.lhs and a.rhs == b.rhs

    def resugar(self) -> "Identity":
        if self.shape is Shape.EQ and isinstance(self.lhs, Join) and self.lhs.right == self.rhs:
            return Identity(self.lhs.left, self.rhs, Shape.LE)
        return self

    def substitute(self, sigma) -> "Identity":
        return Identity(substitute(self.lhs, sigma), substitute(self.rhs, sigma), self.shape)

    def free_vars(self) -> set[str]:
        return free_vars(self.lhs) | free_vars(self.rhs)

    def fsyms(self) -> set[str]:
        return fsyms(self.lhs) | fsyms(self.rhs)

    def __str__(self):
        return print_identity(self)


def desugar(identity: Identity) -> Identity:
    return identity.desugar()


def le(lhs: Term, rhs: Term) -> Identity:
    return Identity(lhs, rhs, Shape.LE)


def eq(lhs: Term, rhs: Term) -> Identity:
    return Identity(lhs, rhs, Shape.EQ)


@dataclass(frozen=True)
class Quasiequation:
    premises: tuple[Identity, ...]
    conclusion: Identity

    def free_vars(self) -> set[str]:
        out = self.conclusion.free_vars()
        for p in self.premises:
            out |= p.free_vars()
        return out

    def fsyms(self) -> set[str]:
        out = self.conclusion.fsyms()
        for p in self.premises:
            out |= p.fsyms()
        return out

    def same(self, other: "Quasiequation") -> bool:
        """Equal premise lists and conclusion, up to ``<=`` sugar."""
        return (len(self.premises) == len(other.premises)
                and all(p.same(q) for p, q in zip(self.premises, other.premises))
                and self.conclusion.same(other.conclusion))

    def substitute(self, sigma) -> "Quasiequation":
        return Quasiequation(tuple(p.substitute(sigma) for p in self.premises), self.conclusion.substitute(sigma))

    def __str__(self):
        return print_quasieq(self)


# printing

def print_term(t: Term) -> str:
    match t:
        case Bot():
            return "bot"
        case Top():
            return "top"
        case Var(name):
            return name
        case Join(l, r) | Meet(l, r):
            op = BINARY_NAME[type(t)]
            return f"{_operand(l)} {op} {_operand(r)}"
        case Apply(f, x):
            return f"{f} {_unary_arg(x)}"
        case Orbit(f, x):
            return f"{f}* {_unary_arg(x)}"
        case _:
            return f"{UNARY_NAME[type(t)]} {_unary_arg(t.arg)}"


def _operand(t: Term) -> str:
    s = print_term(t)
    return f"({s})" if isinstance(t, (Join, Meet)) else s


def _unary_arg(t: Term) -> str:
    return _operand(t)


def print_identity(i: Identity) -> str:
    return f"{print_term(i.lhs)} {i.shape.value} {print_term(i.rhs)}"


def print_quasieq(q: Quasiequation) -> str:
    lines = [f"assume {print_identity(p)};" for p in q.premises]
    lines.append(f"show {print_identity(q.conclusion)}")
    return "\n".join(lines)


# parsing

_ALIASES = {
    "⊥": " bot ", "⊤": " top ", "⋎": " \\/ ", "⋏": " /\\ ", "∨": " \\/ ", "∧": " /\\ ",
    "⊖": " hd ", "⌽": " hd ", "⊚": " sh ", "◇": " dia ", "◯": " sh ", "□": " box ", "◻": " box ",
    "⪯": " <= ", "≤": " <= ", "⊑": " <= ",
}

_TOKEN = re.compile(r"\s*(?:(\\/|/\\|<=|=|\(|\)|\*)|([A-Za-z_][A-Za-z0-9_']*))")

DEFAULT_FUNCS = frozenset({"F"})


@dataclass
class _Tokens:
    text: str
    toks: list[tuple[str, int]] = field(default_factory=list)
    pos: int = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, len(self.text))

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok


def _translate(text: str) -> str:
    # aliases widen the text; positions refer to the translated text
    if all(ord(c) < 128 for c in text):
        return text
    return "".join(_ALIASES.get(c, c) for c in text)


def _tokenize(text: str) -> _Tokens:
    text = _translate(text)
    toks: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        tok = m.group(1) or m.group(2)
        toks.append((tok, m.start(1) if m.group(1) else m.start(2)))
        i = m.end()
    return _Tokens(text, toks)


class _Parser:
    def __init__(self, text: str, funcs):
        self.ts = _tokenize(text)
        self.funcs = frozenset(funcs)

    def error(self, msg: str):
        raise ParseError(msg, self.ts.peek()[1])

    def expect(self, tok: str):
        got, pos = self.ts.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}", pos)

    def done(self):
        tok, pos = self.ts.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok!r}", pos)

    def term(self) -> Term:
        left = self.unary()
        op, _ = self.ts.peek()
        if op not in BINARY:
            return left
        ctor = BINARY[op]
        while True:
            tok, pos = self.ts.peek()
            if tok in BINARY:
                if tok != op:
                    raise ParseError("mixing \\/ and /\\ requires parentheses", pos)
                self.ts.take()
                left = ctor(left, self.unary())
            else:
                return left

    def unary(self) -> Term:
        tok, pos = self.ts.peek()
        if tok is None:
            self.error("unexpected end of input")
        if tok in UNARY:
            self.ts.take()
            return UNARY[tok](self.unary())
        if tok == "(":
            self.ts.take()
            inner = self.term()
            self.expect(")")
            return inner
        if tok == "bot":
            self.ts.take()
            return BOT
        if tok == "top":
            self.ts.take()
            return TOP
        if tok[0].isalpha() or tok[0] == "_":
            self.ts.take()
            if tok[0].isupper():
                if tok not in self.funcs:
                    raise UnknownFunctionSymbol(f"unknown function symbol {tok!r}", symbol=tok, position=pos)
                if self.ts.peek()[0] == "*":
                    self.ts.take()
                    return Orbit(tok, self.unary())
                return Apply(tok, self.unary())
            return Var(tok)
        raise ParseError(f"unexpected token {tok!r}", pos)

    def identity(self) -> Identity:
        lhs = self.term()
        tok, pos = self.ts.take()
        if tok == "=":
            shape = Shape.EQ
        elif tok == "<=":
            shape = Shape.LE
        else:
            raise ParseError("expected '=' or '<='", pos)
        rhs = self.term()
        return Identity(lhs, rhs, shape)


def parse_term(text: str, funcs=DEFAULT_FUNCS) -> Term:
    p = _Parser(text, funcs)
    t = p.term()
    p.done()
    return t


def parse_identity(text: str, funcs=DEFAULT_FUNCS) -> Identity:
    p = _Parser(text, funcs)
    i = p.identity()
    p.done()
    return i


def split_statements(text: str) -> list[tuple[int, str]]:
    """Split on ';' and newlines, dropping '#' comments; keeps 1-based line numbers."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            if part.strip():
                out.append((lineno, part.strip()))
    return out


def parse_quasieq(text: str, funcs=DEFAULT_FUNCS) -> Quasiequation:
    """Parse ``assume <id>; ... ; show <id>`` or the compact ``<id>; <id> |- <id>``."""
    if "|-" in text and not re.search(r"\bshow\b", text):
        return _parse_turnstile(text, funcs)
    premises: list[Identity] = []
    conclusion = None
    for lineno, stmt in split_statements(text):
        word, _, rest = stmt.partition(" ")
        try:
            if word == "assume" and conclusion is None:
                premises.append(parse_identity(rest, funcs))
            elif word == "show" and conclusion is None:
                conclusion = parse_identity(rest, funcs)
            else:
                raise ParseError(f"unexpected statement {stmt!r}", 0)
        except ParseError as e:
            raise ParseError(e.message.split(" at position")[0], e.position, lineno) from None
    if conclusion is None:
        raise ParseError("missing 'show' statement", 0)
    return Quasiequation(tuple(premises), conclusion)


def _parse_turnstile(text: str, funcs) -> Quasiequation:
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    left, _, right = body.partition("|-")
    premises = tuple(parse_identity(p, funcs) for p in left.split(";") if p.strip())
    return Quasiequation(premises, parse_identity(right, funcs))


def funcs_of_text(text: str) -> frozenset[str]:
    """Every uppercase identifier in ``text``; a convenient default signature."""
    return frozenset(re.findall(r"\b([A-Z][A-Za-z0-9_']*)", _translate(text))) | DEFAULT_FUNCS
