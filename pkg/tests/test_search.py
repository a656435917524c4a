import json

import pytest
from hypothesis import given

from aic.errors import InvalidSpec, SoundnessViolation
from aic.lasso import make
from aic.lattice import build_lattice
from aic.rules import Kind, Rule, builtin_rulesets, ruleset_from_spec
from aic.search import (
    SearchConfig, continuity_holds, flatness_quasieq, fuzz_soundness, olszewski_oracle, refute,
    sample_interpretation, tkp_oracle, validity_family_flatness,
)
from aic.semantics import Interpretation, Model, parse_table, premises_hold, satisfies_quasieq
from aic.term import parse_identity, parse_quasieq
from conftest import lattice_with

B2 = build_lattice("B2")
C3 = build_lattice("C3")


def test_sampling_is_deterministic():
    cfg = SearchConfig(seed=42)
    one = sample_interpretation(cfg, {"a", "b"}, {"F"}, index=7)
    two = sample_interpretation(cfg, {"a", "b"}, {"F"}, index=7)
    assert one == two
    others = {sample_interpretation(SearchConfig(seed=s), {"a", "b"}, {"F"}, index=7).show() for s in range(20)}
    assert len(others) > 1


def test_zero_prefix_and_unit_period_give_flat_sequences():
    cfg = SearchConfig(max_prefix=0, max_period=1)
    for i in range(200):
        I = sample_interpretation(cfg, {"a", "b", "c"}, {"F"}, index=i)
        assert all(s.is_flat() for s in I.vars.values())


def test_config_validation():
    with pytest.raises(InvalidSpec):
        SearchConfig(trials=0)
    with pytest.raises(InvalidSpec):
        SearchConfig(max_period=0)
    with pytest.raises(InvalidSpec):
        SearchConfig(lattices=())


def test_countable_continuity_filter_on_b2():
    f = parse_table("table{bot->bot,a->bot,b->bot,top->top}", B2)
    assert not continuity_holds(f, "ccont")
    assert continuity_holds(f, "wcont") and continuity_holds(f, "ccocont")


@given(lattice_with("map"))
def test_chain_continuity_is_automatic_on_finite_lattices(sample):
    L, f = sample
    assert continuity_holds(f, "wcont") and continuity_holds(f, "wcocont")


def test_refute_finds_the_b2_counterexample():
    q = parse_quasieq("show F dia a <= dia F a")
    rep = refute(q, SearchConfig(lattices=("B2",), trials=100))
    assert rep.verdict == "counterexample"
    cx = rep.counterexample
    assert cx.replays() and cx.trial < 100
    assert not satisfies_quasieq(q, cx.interpretation)
    json.dumps(cx.to_json())


def test_refute_reports_none_found_for_valid_statements():
    assert refute(parse_quasieq("show a = a"), SearchConfig(trials=200)).verdict == "none-found"
    asc = parse_quasieq("assume a <= sh a; show dia dia a <= box dia a")
    rep = refute(asc, SearchConfig(trials=3000))
    assert rep.verdict == "none-found" and rep.nonvacuous > 500


def test_refute_respects_the_continuity_filter():
    q = parse_quasieq("show F dia a <= dia F a")
    cfg = SearchConfig(lattices=("B2", "M3", "N5"), trials=500, continuity=(("ccont", "F"),))
    assert refute(q, cfg).verdict == "none-found"


def test_reports_are_deterministic():
    q = parse_quasieq("assume a <= b; show sh a <= b")
    one = refute(q, SearchConfig(trials=300, seed=5))
    two = refute(q, SearchConfig(trials=300, seed=5))
    assert one.counterexample.to_json() == two.counterexample.to_json()


def test_corrupted_rule_is_caught_quickly():
    bad = Rule("sh-id", (), parse_identity("sh a = a"), Kind.EXTRA)
    rep = fuzz_soundness([bad], SearchConfig(trials=100))
    assert not rep.ok and rep.results[0].counterexample.trial < 100 and rep.results[0].counterexample.replays()
    with pytest.raises(SoundnessViolation):
        fuzz_soundness([bad], SearchConfig(trials=100), strict=True)


def test_fuzz_report_shape():
    rep = fuzz_soundness(builtin_rulesets()["AIC0"], SearchConfig(trials=50))
    assert rep.ok and len(rep.results) == len(builtin_rulesets()["AIC0"])
    doc = rep.to_json()
    assert doc["violations"] == 0 and {r["name"] for r in doc["rules"]} >= {"iter", "dia-ind"}


def test_flatness_examples():
    q = flatness_quasieq(2)
    alternating = Interpretation(Model(C3, {}), {"a": make(C3, [], [0, 2])})
    assert not premises_hold(q, alternating) and satisfies_quasieq(q, alternating)
    constant = Interpretation(Model(C3, {}), {"a": make(C3, [], [1])})
    assert premises_hold(q, constant) and satisfies_quasieq(q, constant)


@pytest.mark.parametrize("n", range(1, 9))
def test_flatness_family_holds(n):
    rep = validity_family_flatness(n, SearchConfig(trials=500, max_prefix=3, max_period=8))
    assert rep.ok and rep.exhaustive_nonvacuous > 0


def test_fixed_point_oracles_agree():
    up, down = tkp_oracle(SearchConfig(trials=300))
    assert up.ok and down.ok and up.checked == 300
    ol = olszewski_oracle(SearchConfig(trials=300))
    assert ol.ok and ol.ccont_models > 0


def test_continuity_rules_hold_in_models_sampled_under_their_flags():
    rs = ruleset_from_spec("AIC1+wcont(F)+wcocont(F)+ccont(F)+ccocont(F)")
    rep = fuzz_soundness(rs, SearchConfig(trials=500, seed=4))
    rows = {r.name: r for r in rep.results}
    assert rep.violations == 0
    assert all(rows[n].nonvacuous > 0 for n in ("wcont", "wcocont", "ccont", "ccocont"))
