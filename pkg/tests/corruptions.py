"""Deliberately broken proof scripts, each paired with the error class the kernel must raise."""

from aic import corpus

DIA_INTRO_R = corpus.get("dia-introR").text
TKP_FP = corpus.get("tkp-fp").text
SEMI_CONT = corpus.get("semi-cont").text

REFLEX = """proof r
rules AIC0
show x = x
step eq-reflex :: x = x
"""

TWO_STEP = """proof two-step
rules AIC1
assume a <= b
assume b <= c
show a <= c
step trans :: a <= c
  leaf 0 :: a <= b
  leaf 1 :: b <= c
"""


def swap(text: str, old: str, new: str, count: int = 1) -> str:
    assert old in text, old
    return text.replace(old, new, count)


def swap_lines(text: str, first: str, second: str) -> str:
    lines = text.splitlines(keepends=True)
    i = next(n for n, line in enumerate(lines) if line.strip() == first)
    j = next(n for n, line in enumerate(lines) if line.strip() == second)
    lines[i], lines[j] = lines[j], lines[i]
    return "".join(lines)


CORRUPTED = {
    # wrong rule
    "unknown-rule": (swap(TKP_FP, "step dia-exp ", "step dia-expand "), "RuleNotFound"),
    "symm-for-reflex": (swap(REFLEX, "eq-reflex", "symm"), "ArityMismatch"),
    "extended-rule-in-basic": (swap(REFLEX, "step eq-reflex :: x = x", "step reflex :: x <= x").replace(
        "show x = x", "show x <= x"), "RuleNotFound"),
    "continuity-without-flag": (swap(TKP_FP, "rules AIC1+wcont(F)", "rules AIC1"), "RuleNotFound"),
    "inflate-for-deflate": (swap(DIA_INTRO_R, "step dia-inflate", "step box-deflate"), "MatchFail"),
    "trans-for-antisymm": (swap(TKP_FP, "step antisymm ::", "step trans ::"), "MatchFail"),
    # wrong shape
    "extra-child": (DIA_INTRO_R + "  leaf 0 :: a <= b\n", "ArityMismatch"),
    "missing-child": (swap(DIA_INTRO_R, "  step dia-inflate with a:=b :: b <= dia b\n", ""), "ArityMismatch"),
    "wrong-operator": (swap(DIA_INTRO_R, "b <= dia b", "b <= box b").replace(
        "a <= dia b", "a <= box b"), "MatchFail"),
    "wrong-conclusion": (swap(DIA_INTRO_R, "show a <= dia b", "show a <= dia a"), "ConclusionMismatch"),
    # permuted premises
    "permuted-children": (swap_lines(DIA_INTRO_R, "leaf 0 :: a <= b", "step dia-inflate with a:=b :: b <= dia b"),
                          "MatchFail"),
    "permuted-rule-premises": (swap_lines(TKP_FP, "leaf 1 :: a <= F a", "leaf 0 :: a <= sh a"), "MatchFail"),
    "permuted-assumptions": (swap_lines(TKP_FP, "assume a <= sh a", "assume a <= F a"), "BadLeaf"),
    # inconsistent rebinding
    "nonlinear-reflex": (swap(REFLEX, "x = x\nstep eq-reflex :: x = x", "x = y\nstep eq-reflex :: x = y"),
                         "MatchFail"),
    "explicit-binding-clash": (swap(DIA_INTRO_R, "with a:=b", "with a:=sh b"), "MatchFail"),
    "context-hole-mismatch": (swap(SEMI_CONT, "u:=F sh dia a", "u:=F dia a"), "MatchFail"),
    "context-equation-mismatch": (swap(SEMI_CONT, "w:=sh F dia a", "w:=sh sh F dia a"), "MatchFail"),
    # bad leaf
    "leaf-out-of-range": (swap(DIA_INTRO_R, "leaf 0", "leaf 3"), "BadLeaf"),
    "leaf-wrong-index": (TWO_STEP.replace("  leaf 0 :: a <= b", "  leaf 1 :: a <= b"), "BadLeaf"),
    "leaf-without-premises": (swap(REFLEX, "step eq-reflex :: x = x", "leaf 0 :: x = x"), "BadLeaf"),
}
