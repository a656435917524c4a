"""Latticed k-induction: the iterate Phi^k b and a proof generator for every k."""

from __future__ import annotations

from ..builder import Builder
from ..kernel import check, size
from ..rules import ruleset_from_spec
from ..script import Script, dump_script
from ..term import Apply, Meet, Term, Var, print_term


def gen_kind_term(k: int, b: Term | str = "b", fsym: str = "F") -> Term:
    """Phi^0 b = b and Phi^(k+1) b = F Phi^k b /\\ b, built syntactically."""
    if k < 0:
        raise ValueError("k must be non-negative")
    base = Var(b) if isinstance(b, str) else b
    t = base
    for _ in range(k):
        t = Meet(Apply(fsym, t), base)
    return t


def _phi(k: int) -> str:
    return print_term(gen_kind_term(k))


def _desc(B: Builder, k: int):
    """Phi^k b <= Phi^(k-1) b for k >= 1."""
    if k == 1:
        return B.by("meet-introL", B.by("reflex", a="b"), a="F b")
    x = _phi(k)
    to_f = B.trans(B.by("meet-elim", B.by("reflex", a=x)), B.by("F-mono", _desc(B, k - 1)))
    return B.by("meet-introR", to_f, B.by("meet-introL", B.by("reflex", a="b"), a=f"F ({_phi(k - 1)})"))


def _park(B: Builder, k: int):
    """F Phi^k b <= Phi^k b from premise 0."""
    if k == 0:
        return B.leaf(0)
    return B.by("meet-introR", B.by("F-mono", _desc(B, k)), B.leaf(0))


def _asc(B: Builder, k: int):
    """sh Phi^k b <= Phi^k b from premise 1: descending is preserved by Phi."""
    if k == 0:
        return B.leaf(1)
    prev = _phi(k - 1)
    y = f"sh F ({prev}) /\\ sh b"
    f_desc = B.rw(B.by("F-mono", _asc(B, k - 1)), "F-sh-comm", f"F sh ({prev})", f"sh F ({prev})")
    left = B.trans(B.by("meet-elim", B.by("reflex", a=y)), f_desc)
    right = B.by("meet-introL", B.leaf(1), a=f"sh F ({prev})")
    both = B.by("meet-introR", left, right)
    return B.rw(both, "sh-meet", y, f"sh ({_phi(k)})")


def gen_kind_proof(k: int) -> Script:
    """Kernel-checked derivation of ``F Phi^k b <= b; sh b <= b |- dia F* bot <= b`` over AIC1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rs = ruleset_from_spec("AIC1")
    phi = _phi(k)
    B = Builder(rs, [f"F ({phi}) <= b", "sh b <= b"])
    least = B.by("dia-introL", B.by("F*-introL", B.by("bot", a=phi), _park(B, k)), _asc(B, k))
    d = least if k == 0 else B.trans(least, _to_b(B, k))
    q = B.quasieq("dia F* bot <= b")
    check(d, q, rs)
    return Script(f"k-ind-{k}", "AIC1", q, d, (), rs.funcs,
                  f"latticed {k}-induction for the least fixed point reached from bottom")


def _to_b(B: Builder, k: int):
    return B.by("meet-introL", B.by("reflex", a="b"), a=f"F ({_phi(k - 1)})")


def kind_size(k: int) -> int:
    return size(gen_kind_proof(k).derivation)


def emit_kind(k: int) -> str:
    return dump_script(gen_kind_proof(k))
