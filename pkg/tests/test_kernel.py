import pytest
from hypothesis import given, settings, strategies as st

from aic import corpus
from aic.errors import AicError, ArityMismatch, DuplicateName, MatchFail, UnboundPatternVar
from aic.kernel import Step, check, is_valid, match, match_step, register_derived, size
from aic.rules import Kind, builtin_rulesets
from aic.script import dump_script, parse_script
from aic.term import BOT, Orbit, Shift, Var, desugar, parse_identity, parse_quasieq
from corruptions import CORRUPTED

RULES = builtin_rulesets()


def test_match_examples():
    pat = parse_identity("a \\/ b = b")
    assert match(pat, parse_identity("(sh x) \\/ x = x")) == {"a": Shift(Var("x")), "b": Var("x")}
    with pytest.raises(MatchFail):
        match(parse_identity("a \\/ a = a"), parse_identity("x \\/ y = x"))
    semi = desugar(parse_identity("F dia a <= dia F a"))
    got = match(semi, desugar(parse_identity("F dia F* bot <= dia F F* bot")))
    assert got == {"a": Orbit("F", BOT)}


def test_match_extends_the_seed_consistently():
    pat = parse_identity("a = b")
    assert match(pat, parse_identity("x = y"), seed={"a": Var("x")}) == {"a": Var("x"), "b": Var("y")}
    with pytest.raises(MatchFail):
        match(pat, parse_identity("x = y"), seed={"a": Var("y")})


def test_one_node_reflexivity():
    q = parse_quasieq("show x = x")
    check(Step("eq-reflex", q.conclusion), q, RULES["EQ"])
    with pytest.raises(ArityMismatch):
        check(Step("symm", q.conclusion), q, RULES["EQ"])


def test_semi_cont_tree_checks():
    script = corpus.get("semi-cont").script
    corpus.check_script(script)
    check(script.derivation, script.quasieq, corpus.ruleset_for(script))


def test_unbound_pattern_variable_is_reported():
    # trans's middle term only occurs in its premises; matching the conclusion alone leaves it open
    with pytest.raises(UnboundPatternVar) as err:
        match_step(RULES["AIC1"]["trans"], parse_identity("x <= z"), ())
    assert err.value.details["variable"] == "b"
    assert match_step(RULES["AIC1"]["trans"], parse_identity("x <= z"), (), seed={"b": Var("y")})["b"] == Var("y")


def test_register_derived_extends_and_records_provenance():
    script = corpus.get("dia-introR").script
    base = RULES["AIC1"]
    # dia-introR is already in the extended set, so register it under a fresh name
    rs = register_derived("dia-intro-right", script.quasieq, script.derivation, corpus.ruleset_for(script))
    assert rs["dia-intro-right"].kind is Kind.DERIVED
    assert rs["dia-intro-right"].provenance[0] is script.derivation
    with pytest.raises(DuplicateName):
        register_derived("dia-intro-right", script.quasieq, script.derivation, rs)
    with pytest.raises(DuplicateName):
        register_derived("trans", script.quasieq, script.derivation, base)


def test_register_rejects_a_failing_derivation_and_leaves_the_set_alone():
    q = parse_quasieq("show x <= y")
    before = dict(RULES["AIC0"].rules)
    with pytest.raises(AicError):
        register_derived("bogus", q, Step("dia-inflate", q.conclusion), RULES["AIC0"])
    assert RULES["AIC0"].rules == before and "bogus" not in RULES["AIC0"]


def test_inline_reduces_tkp_to_the_basic_system():
    script = corpus.get("tkp-fp").script
    flat, base = corpus.inline_to_base(script)
    assert base.name == "AIC0+wcont(F)"
    assert all(r.kind is not Kind.DERIVED for r in base)
    check(flat, script.quasieq, base)
    assert size(flat) > size(script.derivation)


@pytest.mark.parametrize("name", sorted(CORRUPTED))
def test_corrupted_scripts_are_rejected(name):
    text, kind = CORRUPTED[name]
    with pytest.raises(AicError) as err:
        corpus.check_script(parse_script(text))
    assert err.value.kind == kind


def test_check_is_deterministic():
    script = corpus.get("ol-fp").script
    rs = corpus.ruleset_for(script)
    assert all(is_valid(script.derivation, script.quasieq, rs) for _ in range(3))
    text, _ = CORRUPTED["permuted-rule-premises"]
    bad = parse_script(text)
    messages = set()
    for _ in range(3):
        try:
            corpus.check_script(bad)
        except AicError as e:
            messages.add(e.message)
    assert len(messages) == 1


@settings(max_examples=30)
@given(st.sampled_from(sorted(corpus.names())))
def test_scripts_survive_a_dump_and_reload(name):
    script = corpus.get(name).script
    again = parse_script(dump_script(script))
    assert again.quasieq == script.quasieq and again.derivation == script.derivation
