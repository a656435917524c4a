from pathlib import Path

import pytest
from hypothesis import given

from aic.errors import InvalidSpec
from aic.lasso import flat, make
from aic.lattice import build_lattice
from aic.rules import INFINITARY, Kind, aic1_additions, builtin_rulesets, check_aicw_infinitary, ruleset_from_spec
from aic.semantics import Interpretation, Model
from aic.term import Head, Identity, Join, Shift, Var
from conftest import lattice_with

MANIFEST = Path(__file__).parent / "data" / "rule_manifest.txt"
C3 = build_lattice("C3")


def _manifest():
    sections, current = {}, None
    for line in MANIFEST.read_text().splitlines():
        if line.startswith("["):
            current = sections.setdefault(line.strip("[]"), [])
        elif line.strip():
            current.append(tuple(line.split("\t")))
    return sections


@pytest.mark.parametrize("name", ["AIC0", "AIC1", "AICw"])
def test_inventory_matches_the_manifest(name):
    rs = builtin_rulesets()[name]
    assert [(r.name, r.kind.value, r.show()) for r in rs] == _manifest()[name]


def test_inventory_sizes():
    sets = builtin_rulesets()
    kinds = lambda name, kind: sum(r.kind is kind for r in sets[name])
    assert kinds("AIC0", Kind.AIC0) == 32
    assert len(aic1_additions()) == 32
    assert sorted(r.name for r in sets["AICw"] if r.kind is Kind.AICW_INFINITARY) == sorted(INFINITARY)


def test_basic_system_facts():
    sets = builtin_rulesets()
    iter_rule = sets["AIC0"]["iter"]
    assert iter_rule.show() == "|- sh F* a = F F* sh a"
    assert not any("hd" in r.show() for r in sets["AIC0"] if r.kind is Kind.AIC0)
    assert sets["AIC1"]["dia-exp"].show() == "|- dia a = a \\/ sh dia a"
    assert {"dia-ind", "dia-ind-rev", "box-coind", "box-coind-rev"} <= set(sets["AIC0"].rules)


def test_every_symbol_gets_its_schemas():
    sets = builtin_rulesets(("F", "G"))
    for stem in ("mono", "sh-comm", "ind", "coind"):
        assert f"F-{stem}" in sets["AIC0"] and f"G-{stem}" in sets["AIC0"]


def test_continuity_flags_are_per_symbol():
    rs = ruleset_from_spec("AIC1+wcont(F)+ccont(G)")
    assert rs.name == "AIC1+wcont(F)+ccont(G)"
    assert rs["wcont"].kind is Kind.CONTINUITY and rs["wcont"].fsym == "F"
    assert rs["ccont[G]"].fsym == "G" and "ccont" not in rs
    assert "wcont" not in ruleset_from_spec("AIC1")
    with pytest.raises(InvalidSpec):
        ruleset_from_spec("AIC1+hcont(F)")
    with pytest.raises(InvalidSpec):
        ruleset_from_spec("AIC7")


def _interp(a, b):
    return Interpretation(Model(C3, {}), {"a": a, "b": b})


def test_infinitary_examples():
    s = make(C3, [], [0, 2])
    assert check_aicw_infinitary("seq-ext", _interp(s, s))
    assert check_aicw_infinitary("seq-sup", _interp(s, flat(C3, 2)))
    assert check_aicw_infinitary("seq-sup", _interp(s, flat(C3, 1)))


def _brute_infinitary(name, I, horizon):
    """Truncate the conjunction at a generous horizon and evaluate pointwise."""
    a, b = I.vars["a"], I.vars["b"]
    L = I.lattice
    heads = [a[n] for n in range(horizon)]
    match name:
        case "seq-sup":
            premise = all(L.leq[h][b[n]] for h in heads for n in range(horizon))
            sup = L.join_all(heads)
            return not premise or all(L.leq[sup][b[n]] for n in range(horizon))
        case "seq-inf":
            premise = all(L.leq[b[n]][h] for h in heads for n in range(horizon))
            inf = L.meet_all(heads)
            return not premise or all(L.leq[b[n]][inf] for n in range(horizon))
        case "seq-ext":
            return not all(a[n] == b[n] for n in range(horizon)) or a.unroll(horizon) == b.unroll(horizon)


@given(lattice_with("lasso", "lasso"))
def test_head_set_reduction_matches_a_long_truncation(sample):
    L, a, b = sample
    I = Interpretation(Model(L, {}), {"a": a, "b": b})
    for name in INFINITARY:
        assert check_aicw_infinitary(name, I) == _brute_infinitary(name, I, 40)
