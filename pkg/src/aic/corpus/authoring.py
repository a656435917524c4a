r"""Python sources of the stored proof scripts.

Each entry builds its derivation with :class:`~aic.builder.Builder`; the
``tools/regen_corpus.py`` script dumps them to ``proofs/*.proof``. Rules of the
extended system are derived over the basic one, reusing earlier derivations
through ``uses``; the fixed-point developments are self-contained over the
extended system plus the continuity flags they need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..builder import Builder
from ..kernel import Context, check, congruence_rewrite, register_derived
from ..rules import RuleSet, builtin_rulesets, ruleset_from_spec
from ..script import Script
from ..term import print_identity, substitute


@dataclass(frozen=True)
class Entry:
    name: str
    rules: str
    premises: tuple[str, ...]
    conclusion: str
    build: Callable
    uses: tuple[str, ...] = ()
    about: str = ""


ENTRIES: dict[str, Entry] = {}


def entry(name, rules, premises, conclusion, uses=(), about=""):
    def deco(fn):
        ENTRIES[name] = Entry(name, rules, tuple(premises), conclusion, fn, tuple(uses), about)
        return fn
    return deco


def _extended(name: str) -> tuple[tuple[str, ...], str]:
    r = builtin_rulesets()["AIC1"][name]
    return tuple(print_identity(p) for p in r.premises), print_identity(r.conclusion)


def derived(name, uses=(), about="derivation of an extended-system rule over the basic system"):
    prem, concl = _extended(name)
    return entry(name, "AIC0", prem, concl, uses, about)


# lattice and order basics over the basic system

@derived("join-idem")
def _(B):
    p = B.by("join-absorb", a="a", b=r"a \/ a")
    return B.rw(p, "meet-absorb", r"a /\ (a \/ a)", "a")


@derived("meet-idem")
def _(B):
    p = B.by("meet-absorb", a="a", b=r"a /\ a")
    return B.rw(p, "join-absorb", r"a \/ (a /\ a)", "a")


@derived("reflex", uses=("join-idem",))
def _(B):
    return B.restate(B.by("join-idem", a="a"), "a <= a")


@derived("weakenL", uses=("join-idem",))
def _(B):
    c = B.by("cong-join", B.leaf(0), B.refl("b"))
    return B.restate(B.eqtrans(c, B.by("join-idem", a="b")), "a <= b")


@derived("weakenR", uses=("join-idem",))
def _(B):
    c = B.by("cong-join", B.symm(B.leaf(0)), B.refl("a"))
    return B.restate(B.eqtrans(c, B.by("join-idem", a="a")), "b <= a")


@derived("trans")
def _(B):
    p0, p1 = B.leaf(0), B.leaf(1)
    e = B.eqtrans(
        B.by("cong-join", B.refl("a"), B.symm(p1)),
        B.by("join-assoc", a="a", b="b", c="c"),
        B.by("cong-join", p0, B.refl("c")),
        p1,
    )
    return B.restate(e, "a <= c")


@derived("antisymm")
def _(B):
    return B.eqtrans(B.symm(B.leaf(1)), B.by("join-comm", a="b", b="a"), B.leaf(0))


@entry("le-meet", "AIC0", ["a <= b"], r"a /\ b = a", about="an inequality read through meets")
def _(B):
    return B.eqtrans(B.by("cong-meet", B.refl("a"), B.symm(B.leaf(0))), B.by("meet-absorb", a="a", b="b"))


@entry("meet-le", "AIC0", [r"a /\ b = a"], "a <= b", about="an inequality read back from meets")
def _(B):
    e = B.eqtrans(
        B.by("cong-join", B.symm(B.leaf(0)), B.refl("b")),
        B.by("join-comm", a=r"a /\ b", b="b"),
        B.by("cong-join", B.refl("b"), B.by("meet-comm", a="a", b="b")),
        B.by("join-absorb", a="b", b="a"),
    )
    return B.restate(e, "a <= b")


@entry("meet-lb", "AIC0", [], r"a /\ b <= b", about="a meet lies below its right operand")
def _(B):
    e = B.eqtrans(
        B.by("join-comm", a=r"a /\ b", b="b"),
        B.by("cong-join", B.refl("b"), B.by("meet-comm", a="a", b="b")),
        B.by("join-absorb", a="b", b="a"),
    )
    return B.restate(e, r"a /\ b <= b")


@entry("join-ub", "AIC0", [], r"a <= a \/ b", uses=("join-idem",), about="a join lies above its left operand")
def _(B):
    e = B.eqtrans(
        B.by("join-assoc", a="a", b="a", c="b"),
        B.by("cong-join", B.by("join-idem", a="a"), B.refl("b")),
    )
    return B.restate(e, r"a <= a \/ b")


@derived("join-introL")
def _(B):
    e = B.eqtrans(
        B.symm(B.by("join-assoc", a="a", b="b", c="c")),
        B.by("cong-join", B.refl("a"), B.leaf(1)),
        B.leaf(0),
    )
    return B.restate(e, r"a \/ b <= c")


@derived("meet-introR", uses=("le-meet", "meet-le"))
def _(B):
    e = B.eqtrans(
        B.by("meet-assoc", a="a", b="b", c="c"),
        B.by("cong-meet", B.by("le-meet", B.leaf(0)), B.refl("c")),
        B.by("le-meet", B.leaf(1)),
    )
    return B.by("meet-le", e)


@derived("meet-introL", uses=("meet-lb", "trans"))
def _(B):
    return B.trans(B.by("meet-lb", a="a", b="b"), B.leaf(0))


@derived("join-introR", uses=("join-ub", "trans"))
def _(B):
    return B.trans(B.leaf(0), B.by("join-ub", a="b", b="c"))


@derived("join-elim", uses=("join-ub", "trans"))
def _(B):
    ub = B.rw(B.by("join-ub", a="b", b="a"), "join-comm", r"b \/ a", r"a \/ b")
    return B.trans(ub, B.leaf(0))


@derived("meet-elim", uses=("meet-lb", "trans"))
def _(B):
    lb = B.rw(B.by("meet-lb", a="c", b="b"), "meet-comm", r"c /\ b", r"b /\ c")
    return B.trans(B.leaf(0), lb)


# majorum and minorum introduction and elimination

@derived("dia-introR", uses=("trans",))
def _(B):
    return B.trans(B.leaf(0), B.by("dia-inflate", a="b"))


@derived("box-introL", uses=("trans",))
def _(B):
    return B.trans(B.by("box-deflate", a="a"), B.leaf(0))


@derived("dia-elim", uses=("trans",))
def _(B):
    return B.trans(B.by("dia-inflate", a="a"), B.leaf(0))


@derived("box-elim", uses=("trans",))
def _(B):
    return B.trans(B.leaf(0), B.by("box-deflate", a="b"))


@derived("dia-introL", uses=("trans",))
def _(B):
    return B.trans(B.by("dia-mono", B.leaf(0)), B.by("dia-ind", B.leaf(1)))


@derived("box-introR", uses=("trans",))
def _(B):
    return B.trans(B.by("box-coind", B.leaf(0)), B.by("box-mono", B.leaf(1)))


@derived("dia-desc", uses=("weakenL",))
def _(B):
    return B.by("dia-ind-rev", B.by("weakenL", B.by("dia-idem", a="a")))


@derived("box-asc", uses=("weakenR",))
def _(B):
    return B.by("box-coind-rev", B.by("weakenR", B.by("box-idem", a="a")))


def _below_join_right(B, x: str, y: str):
    """x <= y \\/ x"""
    return B.rw(B.by("join-ub", a=x, b=y), "join-comm", rf"({x}) \/ ({y})", rf"({y}) \/ ({x})")


@derived("dia-exp", uses=("trans", "antisymm", "join-introL", "join-ub", "dia-desc", "dia-introL"))
def _(B):
    upper = B.by("join-introL", B.by("dia-inflate", a="a"), B.by("dia-desc", a="a"))
    into_r = _below_join_right(B, "sh dia a", "a")
    step1 = B.trans(B.by("sh-mono", B.by("dia-inflate", a="a")), into_r)
    step2 = B.trans(B.by("sh-mono", B.by("dia-desc", a="a")), into_r)
    shifted = B.rw(B.by("join-introL", step1, step2), "sh-join", r"sh a \/ sh sh dia a", r"sh (a \/ sh dia a)")
    lower = B.by("dia-introL", B.by("join-ub", a="a", b="sh dia a"), shifted)
    return B.by("antisymm", lower, upper)


@derived("box-exp", uses=("trans", "antisymm", "meet-introR", "meet-lb", "box-asc", "box-introR"))
def _(B):
    upper = B.by("meet-introR", B.by("box-deflate", a="a"), B.by("box-asc", a="a"))
    to_a = B.rw(B.by("meet-lb", a="sh box a", b="a"), "meet-comm", r"sh box a /\ a", r"a /\ sh box a")
    to_sh = B.by("meet-lb", a="a", b="sh box a")
    step1 = B.trans(to_sh, B.by("sh-mono", B.by("box-deflate", a="a")))
    step2 = B.trans(to_sh, B.by("sh-mono", B.by("box-asc", a="a")))
    shifted = B.rw(B.by("meet-introR", step1, step2), "sh-meet", r"sh a /\ sh sh box a", r"sh (a /\ sh box a)")
    lower = B.by("box-introR", shifted, to_a)
    return B.by("antisymm", upper, lower)


# function symbols

@derived("semi-cont", uses=("dia-desc", "dia-introL"))
def _(B):
    desc = B.rw(B.by("F-mono", B.by("dia-desc", a="a")), "F-sh-comm", "F sh dia a", "sh F dia a")
    return B.by("dia-introL", B.by("F-mono", B.by("dia-inflate", a="a")), desc)


@derived("semi-cocont", uses=("box-asc", "box-introR"))
def _(B):
    asc = B.rw(B.by("F-mono", B.by("box-asc", a="a")), "F-sh-comm", "F sh box a", "sh F box a")
    return B.by("box-introR", asc, B.by("F-mono", B.by("box-deflate", a="a")))


@derived("asc-iter")
def _(B):
    return B.rw(B.by("F-mono", B.by("F*-mono", B.leaf(0))), "iter", "F F* sh a", "sh F* a")


@derived("desc-iter")
def _(B):
    return B.rw(B.by("F-mono", B.by("F*-mono", B.leaf(0))), "iter", "F F* sh a", "sh F* a")


@derived("orbit-asc", uses=("trans", "asc-iter"))
def _(B):
    up = B.rw(B.by("F*-mono", B.leaf(0)), "FF*-comm", "F* F a", "F F* a")
    return B.trans(up, B.by("asc-iter", B.leaf(1)))


@derived("orbit-desc", uses=("trans", "desc-iter"))
def _(B):
    down = B.rw(B.by("F*-mono", B.leaf(1)), "FF*-comm", "F* F a", "F F* a")
    return B.trans(B.by("desc-iter", B.leaf(0)), down)


@derived("F*-introL", uses=("trans",))
def _(B):
    return B.trans(B.by("F*-mono", B.leaf(0)), B.by("F-ind", B.leaf(1)))


@derived("F*-introR", uses=("trans",))
def _(B):
    return B.trans(B.by("F-coind", B.leaf(0)), B.by("F*-mono", B.leaf(1)))


@entry("indiscern-instance", "AIC0", [r"sh (a \/ b) <= c", "a = d"], r"sh (d \/ b) <= c",
       about="one replacement of equals inside a context, spelled out with congruence")
def _(B):
    ctx = Context(B.term(r"sh (x \/ b)"), B.term("c"), "x", B.term("a"), B.term("d"))
    return congruence_rewrite(B.identity(r"sh (d \/ b) <= c"), ctx, B.leaf(0), B.leaf(1))


# fixed points of monotone maps: reusable pieces over the extended system

def _at(B, text: str, a):
    # ``text`` with the seed variable a replaced by the term ``a``
    return substitute(B.term(text), {"a": B.term(a)})


def quasi_pre(B, asc, a="a"):
    """dia F F* a <= dia F* a from a proof of a <= sh a"""
    T = lambda x: _at(B, x, a)
    p = B.by("dia-mono", B.by("asc-iter", asc))
    p = B.rw(p, "sh-dia-comm", T("dia sh F* a"), T("sh dia F* a"))
    p = B.by("join-introR", p, c=T("F* a"))
    p = B.rw(p, "join-comm", T(r"sh dia F* a \/ F* a"), T(r"F* a \/ sh dia F* a"))
    return B.rw(p, "dia-exp", T(r"F* a \/ sh dia F* a"), T("dia F* a"))


def quasi_post(B, up, a="a"):
    """dia F* a <= dia F F* a from a proof of a <= F a"""
    T = lambda x: _at(B, x, a)
    return B.by("dia-mono", B.rw(B.by("F*-mono", up), "FF*-comm", T("F* F a"), T("F F* a")))


def tkp_post(B, up, a="a"):
    return B.trans(quasi_post(B, up, a), B.by("semi-cont", a=_at(B, "F* a", a)))


def tkp_pre(B, asc, up, a="a"):
    return B.trans(B.by("wcont", B.by("orbit-asc", up, asc)), quasi_pre(B, asc, a))


def tkp_least(B, ab, fb, sb):
    return B.by("dia-introL", B.by("F*-introL", ab, fb), sb)


def ol_quasi_post(B, desc):
    p = B.by("dia-mono", B.by("desc-iter", desc))
    p = B.rw(p, "sh-dia-comm", "dia sh F* a", "sh dia F* a")
    p = B.rw(B.by("box-mono", p), "sh-box-comm", "box sh dia F* a", "sh box dia F* a")
    p = B.by("meet-introL", p, a="dia F* a")
    return B.rw(p, "box-exp", r"dia F* a /\ sh box dia F* a", "box dia F* a")


def ol_quasi_pre(B, asc):
    return B.by("box-mono", quasi_pre(B, asc))


def ol_post(B, desc):
    return B.trans(
        ol_quasi_post(B, desc),
        B.by("box-mono", B.by("semi-cont", a="F* a")),
        B.by("wcocont", B.by("dia-desc", a="F* a")),
    )


def ol_pre(B, asc):
    return B.trans(
        B.by("semi-cocont", a="dia F* a"),
        B.by("box-mono", B.by("ccont", a="F* a")),
        ol_quasi_pre(B, asc),
    )


@entry("dia-quasi-pre-fp", "AIC1", ["a <= sh a"], "dia F F* a <= dia F* a",
       about="one extra application of F is absorbed under a majorum of an ascending orbit")
def _(B):
    return quasi_pre(B, B.leaf(0))


@entry("dia-quasi-post-fp", "AIC0", ["a <= F a"], "dia F* a <= dia F F* a",
       about="majorum of the orbit of a postfixed seed grows under F")
def _(B):
    return quasi_post(B, B.leaf(0))


@entry("tkp-post-fp", "AIC1", ["a <= F a"], "dia F* a <= F dia F* a",
       about="majorum of the orbit of a postfixed seed is postfixed")
def _(B):
    return tkp_post(B, B.leaf(0))


@entry("tkp-pre-fp", "AIC1+wcont(F)", ["a <= sh a", "a <= F a"], "F dia F* a <= dia F* a",
       about="majorum of the orbit is prefixed for an omega-continuous map")
def _(B):
    return tkp_pre(B, B.leaf(0), B.leaf(1))


@entry("tkp-pre-fp-ccont", "AIC1+ccont(F)", ["a <= sh a"], "F dia F* a <= dia F* a",
       about="majorum of the orbit is prefixed for a countably continuous map, for any ascending seed")
def _(B):
    return B.trans(B.by("ccont", a="F* a"), quasi_pre(B, B.leaf(0)))


@entry("tkp-fp", "AIC1+wcont(F)", ["a <= sh a", "a <= F a"], "F dia F* a = dia F* a",
       about="majorum of the orbit of a postfixed ascending seed is a fixed point")
def _(B):
    return B.by("antisymm", tkp_pre(B, B.leaf(0), B.leaf(1)), tkp_post(B, B.leaf(1)))


@entry("tkp-above", "AIC1", ["a <= F a"], "a <= dia F* a",
       about="the seed lies below the majorum of its orbit")
def _(B):
    return B.by("dia-introR", B.by("F-coind", B.leaf(0)))


@entry("tkp-least", "AIC1", ["a <= b", "F b <= b", "sh b <= b"], "dia F* a <= b",
       about="majorum of the orbit lies below every descending prefixed point above the seed")
def _(B):
    return tkp_least(B, B.leaf(0), B.leaf(1), B.leaf(2))


@entry("kleene-fp", "AIC1+wcont(F)", [], "F dia F* bot = dia F* bot",
       about="the supremum of the iterates from bottom is a fixed point")
def _(B):
    asc = B.by("bot", a="sh bot")
    up = B.by("bot", a="F bot")
    return B.by("antisymm", tkp_pre(B, asc, up, "bot"), tkp_post(B, up, "bot"))


@entry("kleene-least", "AIC1", ["F b <= b", "sh b <= b"], "dia F* bot <= b",
       about="park induction: the supremum of the iterates from bottom lies below every prefixed point")
def _(B):
    return tkp_least(B, B.by("bot", a="b"), B.leaf(0), B.leaf(1))


@entry("gen-park", "AIC1", ["a <= F a", "a <= b", "F b <= b", "sh b <= b"], "dia F* a <= b",
       about="park induction from a postfixed seed")
def _(B):
    return tkp_least(B, B.leaf(1), B.leaf(2), B.leaf(3))


@entry("box-dia-quasi-post-fp", "AIC1", ["sh a <= a"], "box dia F* a <= box dia F F* a",
       about="one extra application of F is free under a nested minorum and majorum")
def _(B):
    return ol_quasi_post(B, B.leaf(0))


@entry("box-dia-quasi-pre-fp", "AIC1", ["a <= sh a"], "box dia F F* a <= box dia F* a",
       about="the converse for ascending seeds")
def _(B):
    return ol_quasi_pre(B, B.leaf(0))


@entry("ol-post-fp", "AIC1+wcocont(F)", ["sh a <= a"], "box dia F* a <= F box dia F* a",
       about="limit superior of the orbit is postfixed for an omega-cocontinuous map")
def _(B):
    return ol_post(B, B.leaf(0))


@entry("ol-pre-fp", "AIC1+ccont(F)", ["a <= sh a"], "F box dia F* a <= box dia F* a",
       about="limit superior of the orbit is prefixed for a countably continuous map")
def _(B):
    return ol_pre(B, B.leaf(0))


@entry("ol-fp", "AIC1+wcocont(F)+ccont(F)", ["sh a <= a", "a <= sh a"], "box dia F* a = F box dia F* a",
       about="limit superior of the orbit of a flat seed is a fixed point")
def _(B):
    return B.by("antisymm", ol_post(B, B.leaf(0)), ol_pre(B, B.leaf(1)))


# alternation collapse

def _dia_box_ascends(B, x="a"):
    p = B.by("dia-mono", B.by("box-asc", a=x))
    return B.rw(p, "sh-dia-comm", f"dia sh box {x}", f"sh dia box {x}")


def _box_dia_descends(B, x="a"):
    p = B.by("box-mono", B.by("dia-desc", a=x))
    return B.rw(p, "sh-box-comm", f"box sh dia {x}", f"sh box dia {x}")


@entry("collapse-2", "AIC1", [], "dia box dia a = box dia a",
       about="a majorum over a minorum over a majorum collapses")
def _(B):
    below = B.by("dia-ind", _box_dia_descends(B))
    return B.by("antisymm", below, B.by("dia-inflate", a="box dia a"))


@entry("collapse-2-dual", "AIC1", [], "box dia box a = dia box a",
       about="a minorum over a majorum over a minorum collapses")
def _(B):
    above = B.by("box-coind", _dia_box_ascends(B))
    return B.by("antisymm", B.by("box-deflate", a="dia box a"), above)


@entry("dia-box-flat", "AIC1", [], "sh dia box a = dia box a", about="a majorum of a minorum is flat")
def _(B):
    return B.by("antisymm", B.by("dia-desc", a="box a"), _dia_box_ascends(B))


@entry("box-dia-flat", "AIC1", [], "sh box dia a = box dia a", about="a minorum of a majorum is flat")
def _(B):
    return B.by("antisymm", _box_dia_descends(B), B.by("box-asc", a="dia a"))


# further derivable rules

@entry("shift-point", "AIC1", ["dia a <= box a"], "sh a = a",
       about="a sequence whose majorum lies below its minorum is flat")
def _(B):
    down = B.by("dia-ind-rev", B.by("box-elim", B.leaf(0)))
    up = B.by("box-coind-rev", B.by("dia-elim", B.leaf(0)))
    return B.by("antisymm", down, up)


@entry("shift-point-rev", "AIC1", ["sh a = a"], "dia a <= box a",
       about="a flat sequence has its majorum below its minorum")
def _(B):
    return B.trans(B.by("dia-ind", B.by("weakenL", B.leaf(0))), B.by("box-coind", B.by("weakenR", B.leaf(0))))


@entry("dia-asc-pt", "AIC0", ["a <= sh a"], "dia dia a <= box dia a",
       about="the majorum of an ascending sequence is flat")
def _(B):
    p = B.rw(B.by("dia-mono", B.leaf(0)), "sh-dia-comm", "dia sh a", "sh dia a")
    return B.rw(B.by("box-coind", p), "dia-idem", "dia a", "dia dia a", side="lhs")


@entry("box-desc-pt", "AIC0", ["sh a <= a"], "dia box a <= box box a",
       about="the minorum of a descending sequence is flat")
def _(B):
    p = B.rw(B.by("box-mono", B.leaf(0)), "sh-box-comm", "box sh a", "sh box a")
    return B.rw(B.by("dia-ind", p), "box-idem", "box a", "box box a", side="rhs")


@entry("dia-box-mono", "AIC1", ["a <= b"], "dia box a <= box dia b",
       about="monotonicity across a majorum of a minorum and a minorum of a majorum")
def _(B):
    return B.by("dia-introL", B.by("box-mono", B.by("dia-introR", B.leaf(0))), _box_dia_descends(B, "b"))


def _join_ub_right(B, x, y):
    """x <= y \\/ x via join-introR and reflex"""
    p = B.by("join-introR", B.by("reflex", a=x), c=y)
    return B.rw(p, "join-comm", rf"{x} \/ {y}", rf"{y} \/ {x}")


@entry("dia-over-join", "AIC1", [], r"dia (a \/ b) = dia a \/ dia b",
       about="majorum distributes over joins")
def _(B):
    left = B.by("join-introR", B.by("dia-inflate", a="a"), c="dia b")
    right = B.rw(B.by("join-introR", B.by("dia-inflate", a="b"), c="dia a"), "join-comm",
                 r"dia b \/ dia a", r"dia a \/ dia b")
    base = B.by("join-introL", left, right)
    d1 = B.by("join-introR", B.by("dia-desc", a="a"), c="dia b")
    d2 = B.rw(B.by("join-introR", B.by("dia-desc", a="b"), c="dia a"), "join-comm",
              r"dia b \/ dia a", r"dia a \/ dia b")
    desc = B.rw(B.by("join-introL", d1, d2), "sh-join", r"sh dia a \/ sh dia b", r"sh (dia a \/ dia b)")
    below = B.by("dia-introL", base, desc)
    above = B.by("join-introL",
                 B.by("dia-mono", B.by("join-introR", B.by("reflex", a="a"), c="b")),
                 B.by("dia-mono", _join_ub_right(B, "b", "a")))
    return B.by("antisymm", below, above)


@entry("box-over-meet", "AIC1", [], r"box (a /\ b) = box a /\ box b",
       about="minorum distributes over meets")
def _(B):
    r = r"box a /\ box b"
    to_a = B.by("meet-elim", B.by("reflex", a=r))
    to_b = B.by("meet-introL", B.by("reflex", a="box b"), a="box a")
    base = B.by("meet-introR", B.trans(to_a, B.by("box-deflate", a="a")), B.trans(to_b, B.by("box-deflate", a="b")))
    asc = B.by("meet-introR", B.trans(to_a, B.by("box-asc", a="a")), B.trans(to_b, B.by("box-asc", a="b")))
    asc = B.rw(asc, "sh-meet", r"sh box a /\ sh box b", r"sh (box a /\ box b)")
    above = B.by("box-introR", asc, base)
    below = B.by("meet-introR",
                 B.by("box-mono", B.by("meet-elim", B.by("reflex", a=r"a /\ b"))),
                 B.by("box-mono", B.by("meet-introL", B.by("reflex", a="b"), a="a")))
    return B.by("antisymm", below, above)


@entry("dia-over-meet", "AIC1", [], r"dia (a /\ b) <= dia a /\ dia b",
       about="majorum subdistributes over meets")
def _(B):
    return B.by("meet-introR",
                B.by("dia-mono", B.by("meet-elim", B.by("reflex", a=r"a /\ b"))),
                B.by("dia-mono", B.by("meet-introL", B.by("reflex", a="b"), a="a")))


@entry("box-over-join", "AIC1", [], r"box a \/ box b <= box (a \/ b)",
       about="minorum subdistributes over joins")
def _(B):
    return B.by("join-introL",
                B.by("box-mono", B.by("join-introR", B.by("reflex", a="a"), c="b")),
                B.by("box-mono", _join_ub_right(B, "b", "a")))


# assembling

def ruleset_with_uses(spec: str, uses, built: dict[str, tuple]) -> RuleSet:
    rs = ruleset_from_spec(spec)
    for name in uses:
        rs = _register(rs, name, built)
    return rs


def _register(rs: RuleSet, name: str, built) -> RuleSet:
    if name in rs:
        return rs
    e = ENTRIES[name]
    for dep in e.uses:
        rs = _register(rs, dep, built)
    q, d = build(name, built)[:2]
    return register_derived(name, q, d, rs)


def build(name: str, built: dict | None = None):
    """(quasiequation, derivation, ruleset) of entry ``name``, kernel-checked."""
    built = {} if built is None else built
    if name in built:
        return built[name]
    e = ENTRIES[name]
    rs = ruleset_with_uses(e.rules, e.uses, built)
    B = Builder(rs, e.premises)
    d = e.build(B)
    q = B.quasieq(e.conclusion)
    check(d, q, rs)
    built[name] = (q, d, rs)
    return built[name]


def script_of(name: str, built=None) -> Script:
    q, d, rs = build(name, built)
    e = ENTRIES[name]
    return Script(name, e.rules, q, d, e.uses, rs.funcs, e.about)


def all_scripts() -> list[Script]:
    built: dict = {}
    return [script_of(n, built) for n in ENTRIES]
