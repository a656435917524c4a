import json
import shutil
import subprocess

import pytest

from aic import corpus
from aic.cli import SCHEMA, main
from corruptions import CORRUPTED

PROOFS = corpus.PROOF_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA and isinstance(doc["ok"], bool)
    return code, doc


def test_eval_prints_the_lasso(capsys):
    code, out, _ = run(capsys, "eval", "--lattice", "C3", "--bind", "a=<|0,2>", "--term", "dia a")
    assert (code, out.strip()) == (0, "<|2>")
    code, doc = run_json(capsys, "eval", "--lattice", "C3", "--bind", "F=table{0->1,1->2,2->2}",
                         "--term", "F* bot")
    assert doc["value"] == "<0,1|2>" and doc["prefix"] == ["0", "1"]


def test_check_a_stored_proof(capsys):
    code, out, _ = run(capsys, "check", str(PROOFS / "tkp-fp.proof"), "--rules", "AIC1+wcont(F)")
    assert code == 0 and out.startswith("ok tkp-fp")
    code, doc = run_json(capsys, "check", str(PROOFS / "tkp-fp.proof"), "--to-basic")
    assert code == 0 and doc["basic"]["ruleset"] == "AIC0+wcont(F)"


def test_check_rejects_with_structured_diagnostics(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text(CORRUPTED["leaf-wrong-index"][0])
    code, doc = run_json(capsys, "check", str(bad))
    assert code == 1 and doc["error"] == "BadLeaf" and doc["ok"] is False
    code, _, err = run(capsys, "check", str(PROOFS / "tkp-fp.proof"), "--rules", "AIC1")
    assert code == 1 and err.startswith("RuleNotFound")


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "check", "/no/such/file.proof")[0] == 2
    assert run(capsys, "check", str(PROOFS / "tkp-fp.proof"), "--rules", "AIC9")[0] == 2
    assert run(capsys, "corpus", "check")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_refute_exit_codes_and_seed_echo(capsys, tmp_path, monkeypatch):
    invalid = tmp_path / "cont.qe"
    invalid.write_text("|- F dia a <= dia F a\n")
    code, doc = run_json(capsys, "refute", str(invalid), "--lattices", "B2", "--trials", "100")
    assert code == 1 and doc["verdict"] == "counterexample" and doc["counterexample"]["lattice"] == "B2"
    code, doc = run_json(capsys, "refute", str(invalid), "--lattices", "B2", "--trials", "100",
                         "--continuity", "ccont(F)")
    assert code == 0 and doc["verdict"] == "none-found"
    valid = tmp_path / "asc.qe"
    valid.write_text("assume a <= sh a\nshow dia dia a <= box dia a\n")
    monkeypatch.setenv("AIC_SEED", "17")
    code, doc = run_json(capsys, "refute", str(valid), "--trials", "300")
    assert code == 0 and doc["seed"] == 17 and doc["trials"] == 300


def test_fuzz(capsys, monkeypatch):
    monkeypatch.setenv("AIC_SEED", "3")
    code, doc = run_json(capsys, "fuzz", "--rules", "AICw", "--trials", "30")
    assert code == 0 and doc["seed"] == 3 and doc["violations"] == 0
    assert any(r["name"] == "seq-ext" for r in doc["rules"])


def test_corpus_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "check", "--all")
    assert code == 0 and out.strip().splitlines()[-1].startswith(f"{len(corpus.names())}/{len(corpus.names())}")
    code, doc = run_json(capsys, "corpus", "list")
    assert len(doc["proofs"]) >= 30
    code, doc = run_json(capsys, "corpus", "check", "semi-cont", "--to-basic")
    assert code == 0 and doc["checked"] == 1
    code, out, _ = run(capsys, "corpus", "show", "dia-introR")
    assert out == corpus.get("dia-introR").text
    target = tmp_path / "k4.proof"
    assert run(capsys, "corpus", "emit", "k-ind", "--k", "4", "-o", str(target))[0] == 0
    assert run(capsys, "check", str(target))[0] == 0
    code, out, _ = run(capsys, "gen-kind", "--k", "2")
    assert out == corpus.get("k-ind-2").text


def test_discrete_commands(capsys, tmp_path):
    premises = tmp_path / "p.txt"
    premises.write_text("sh x = sh sh x\n")
    code, doc = run_json(capsys, "discrete", "decide", "--premises", str(premises),
                         "--goal", "sh sh sh x = sh sh sh sh sh x", "--compare", "--oracle-depth", "6")
    assert code == 0 and doc["graph"] == "provable" and doc["oracle"]["verdict"] == "provable" and doc["agree"]
    code, doc = run_json(capsys, "discrete", "decide", "--goal", "x = y")
    assert doc["graph"] == "unknown"
    code, doc = run_json(capsys, "discrete", "flatness", "--n-min", "5", "--n-max", "6", "--depth", "10")
    assert [r["verdict"] for r in doc["rows"]] == ["unknown", "unknown"]


def test_rules_list(capsys):
    code, doc = run_json(capsys, "rules", "list", "--rules", "AIC1+ccont(F)", "--kind", "continuity")
    assert [r["name"] for r in doc["rules"]] == ["ccont"]


def test_installed_entry_point(tmp_path):
    exe = shutil.which("aic")
    if exe is None:
        pytest.skip("package not installed")
    out = subprocess.run([exe, "eval", "--lattice", "C3", "--bind", "a=<|0,2>", "--term", "dia a"],
                         capture_output=True, text=True)
    assert (out.returncode, out.stdout.strip()) == (0, "<|2>")
