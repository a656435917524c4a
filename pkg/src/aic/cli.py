"""Command-line front end: ``aic <command> ...``.

Exit codes: 0 when the requested verification succeeds, 1 when it fails (or an
input is rejected), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import corpus
from . import discrete as dc
from .errors import AicError, InvalidSpec
from .kernel import size
from .lattice import CATALOGUE, build_lattice
from .rules import Kind, ruleset_from_spec
from .script import dump_script, parse_script
from .search import SearchConfig, fuzz_soundness, refute
from .semantics import Interpretation, Model, evaluate, parse_table
from .lasso import parse_lasso
from .term import funcs_of_text, parse_identity, parse_quasieq, parse_term, print_identity, print_quasieq

SCHEMA = "aic-report/1"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("AIC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"AIC_SEED must be an integer, not {raw!r}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _search_config(args) -> SearchConfig:
    lattices = tuple(x.strip() for x in args.lattices.split(",")) if args.lattices else CATALOGUE
    for name in lattices:
        build_lattice(name)
    seed = args.seed if args.seed is not None else default_seed()
    return SearchConfig(lattices, args.trials, args.max_prefix, args.max_period, seed, _continuity(args))


def _continuity(args) -> tuple:
    from .rules import parse_ruleset_spec
    if not getattr(args, "continuity", None):
        return ()
    _, flags, _ = parse_ruleset_spec("AIC0+" + args.continuity)
    return tuple(flags)


# commands

def cmd_check(args) -> int:
    text = _read(args.file)
    script = parse_script(text)
    if args.rules:
        script.ruleset = args.rules
    t = time.perf_counter()
    corpus.check_script(script)
    basic = None
    if args.to_basic:
        flat, base = corpus.inline_to_base(script)
        basic = {"ruleset": base.name, "size": size(flat)}
    ms = (time.perf_counter() - t) * 1000
    payload = {"ok": True, "name": script.name, "ruleset": script.ruleset,
               "statement": print_quasieq(script.quasieq), "size": size(script.derivation), "ms": round(ms, 2)}
    lines = [f"ok {script.name} [{script.ruleset}] {print_quasieq(script.quasieq)} "
             f"({size(script.derivation)} nodes, {ms:.1f} ms)"]
    if basic:
        payload["basic"] = basic
        lines.append(f"   reduces to {basic['ruleset']} with {basic['size']} nodes")
    _emit(args, payload, lines)
    return 0


def _bindings(pairs, L, funcs_seen):
    vars, funcs = {}, {}
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--bind expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if name[:1].isupper():
            funcs[name] = parse_table(value, L)
        else:
            vars[name] = parse_lasso(value, L)
    return vars, funcs


def cmd_eval(args) -> int:
    L = build_lattice(args.lattice)
    vars, funcs = _bindings(args.bind, L, None)
    fsyms = frozenset(funcs) | funcs_of_text(args.term)
    t = parse_term(args.term, fsyms)
    value = evaluate(t, Interpretation(Model(L, funcs), vars))
    _emit(args, {"ok": True, "lattice": L.name, "term": args.term, "value": value.show(),
                 "prefix": [L.names[x] for x in value.prefix], "period": [L.names[x] for x in value.period]},
          [value.show()])
    return 0


def cmd_refute(args) -> int:
    q = parse_quasieq(_read(args.file), funcs_of_text(_read(args.file)))
    cfg = _search_config(args)
    rep = refute(q, cfg)
    payload = {"ok": rep.counterexample is None, "verdict": rep.verdict, "seed": cfg.seed,
               "trials": rep.trials, "nonvacuous": rep.nonvacuous, "statement": print_quasieq(q)}
    lines = [f"{rep.verdict} after {rep.trials} trials ({rep.nonvacuous} with premises true), seed {cfg.seed}"]
    if rep.counterexample:
        payload["counterexample"] = rep.counterexample.to_json()
        lines.append(rep.counterexample.show())
    _emit(args, payload, lines)
    return 1 if rep.counterexample else 0


def cmd_fuzz(args) -> int:
    rules = ruleset_from_spec(args.rules)
    cfg = _search_config(args)
    t = time.perf_counter()
    rep = fuzz_soundness(rules, cfg)
    secs = time.perf_counter() - t
    lines = [f"{r.name:18} {r.kind:16} trials {r.trials:6}  premises-true {r.nonvacuous:6}  violations {r.violations}"
             + (f"  ({r.note})" if r.note else "") for r in rep.results]
    lines.append(f"{rules.name}: {len(rep.results)} rules, {rep.violations} violations, seed {cfg.seed}, {secs:.1f} s")
    _emit(args, {"ok": rep.ok, "seed": cfg.seed, "seconds": round(secs, 2), **rep.to_json()}, lines)
    return 0 if rep.ok else 1


def cmd_corpus(args) -> int:
    match args.corpus_command:
        case "list":
            items = corpus.corpus_all()
            _emit(args, {"ok": True, "proofs": [{"name": p.name, "ruleset": p.ruleset,
                                                 "statement": print_quasieq(p.quasieq)} for p in items]},
                  [f"{p.name:24} {p.ruleset:28} {print_quasieq(p.quasieq)}" for p in items])
            return 0
        case "check":
            if not args.all and not args.name:
                raise UsageError("corpus check needs a proof name or --all")
            names = corpus.names() if args.all else [args.name]
            rows, failed = [], 0
            t = time.perf_counter()
            for n in names:
                try:
                    np_ = corpus.check_named(n)
                    entry = {"name": n, "ok": True, "ruleset": np_.ruleset, "size": size(np_.derivation)}
                    if args.to_basic and np_.ruleset.startswith("AIC1"):
                        flat, base = corpus.inline_to_base(np_.script)
                        entry["basic_size"] = size(flat)
                except AicError as e:
                    failed += 1
                    entry = {"name": n, "ok": False, **e.to_json()}
                rows.append(entry)
            secs = time.perf_counter() - t
            lines = [f"{'ok  ' if r['ok'] else 'FAIL'} {r['name']:24} "
                     + (f"{r['ruleset']:28} {r['size']} nodes" if r["ok"] else f"{r['error']}: {r['message']}")
                     + (f", {r['basic_size']} over the basic system" if "basic_size" in r else "")
                     for r in rows]
            lines.append(f"{len(rows) - failed}/{len(rows)} proofs check ({secs:.2f} s)")
            _emit(args, {"ok": failed == 0, "checked": len(rows), "failed": failed, "proofs": rows}, lines)
            return 0 if failed == 0 else 1
        case "emit":
            if args.what != "k-ind":
                raise UsageError("only 'k-ind' can be emitted")
            return _emit_kind(args)
        case "show":
            print(corpus.get(args.name).text, end="")
            return 0
    raise UsageError("missing corpus subcommand")


def _emit_kind(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    t = time.perf_counter()
    script = corpus.gen_kind_proof(args.k)
    text = dump_script(script)
    secs = time.perf_counter() - t
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    if args.json:
        _emit(args, {"ok": True, "k": args.k, "size": size(script.derivation), "seconds": round(secs, 3),
                     "script": text}, [])
    elif not args.output:
        print(text, end="")
    else:
        print(f"wrote {args.output} ({size(script.derivation)} nodes, checked in {secs:.2f} s)")
    return 0


def cmd_gen_kind(args) -> int:
    return _emit_kind(args)


def cmd_discrete(args) -> int:
    match args.discrete_command:
        case "decide":
            P = dc.parse_premises(_read(args.premises)) if args.premises else dc.HomogeneousPremises()
            goal = parse_identity(args.goal, frozenset())
            verdict = dc.decide(P, goal, args.bound)
            payload = {"ok": True, "goal": print_identity(goal), "graph": verdict.value}
            lines = [f"graph: {verdict.value}"]
            if args.compare or args.oracle_depth:
                res = dc.proof_search_oracle(P, goal, args.oracle_depth or 8)
                payload["oracle"] = {"verdict": res.verdict.value, "depth": res.depth, "universe": res.universe}
                lines.append(f"oracle: {res.verdict.value}" + (f" at depth {res.depth}" if res.depth is not None else
                                                                f" up to depth {args.oracle_depth or 8}"))
                if args.compare:
                    payload["agree"] = res.verdict is verdict
                    payload["ok"] = payload["agree"]
                    lines.append("agree" if payload["agree"] else "DISAGREE")
            _emit(args, payload, lines)
            return 0 if payload["ok"] else 1
        case "flatness":
            rows = []
            for n in range(args.n_min, args.n_max + 1):
                res = dc.flatness_evidence(n, args.depth)
                rows.append({"n": n, "verdict": res.verdict.value, "depth": res.depth, "universe": res.universe})
            _emit(args, {"ok": True, "depth": args.depth, "rows": rows},
                  [f"N={r['n']}: {r['verdict']}" + (f" at depth {r['depth']}" if r["depth"] is not None else
                                                    f" up to depth {args.depth}") for r in rows])
            return 0
    raise UsageError("missing discrete subcommand")


def cmd_rules(args) -> int:
    rs = ruleset_from_spec(args.rules)
    kinds = {k.strip() for k in args.kind.split(",")} if args.kind else None
    items = [r for r in rs if kinds is None or r.kind.value in kinds]
    _emit(args, {"ok": True, "ruleset": rs.name,
                 "rules": [{"name": r.name, "kind": r.kind.value, "rule": r.show()} for r in items]},
          [f"{r.name:18} {r.kind.value:16} {r.show()}" for r in items])
    return 0


# parser

def _search_flags(p) -> None:
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None, help="defaults to $AIC_SEED or 0")
    p.add_argument("--lattices", default=None, help="comma-separated catalogue names")
    p.add_argument("--max-prefix", type=int, default=3)
    p.add_argument("--max-period", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    ap = argparse.ArgumentParser(prog="aic", description="Proof checking and finite-model search for sequence algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="kernel-check a proof script")
    p.add_argument("file")
    p.add_argument("--rules", default=None, help="override the script's rule set")
    p.add_argument("--to-basic", action="store_true", help="also inline to the basic system and re-check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term on a finite model")
    p.add_argument("--lattice", required=True)
    p.add_argument("--bind", action="append", help="x=<p|q> or F=table{...}; repeatable")
    p.add_argument("--term", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("refute", parents=[common], help="search for a counterexample")
    p.add_argument("file")
    _search_flags(p)
    p.add_argument("--continuity", default=None, help="e.g. ccont(F)+wcont(G)")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("fuzz", parents=[common], help="fuzz the soundness of a rule set")
    p.add_argument("--rules", default="AIC1")
    _search_flags(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("corpus", help="the stored derivations")
    csub = p.add_subparsers(dest="corpus_command", required=True)
    c = csub.add_parser("list", parents=[common])
    c = csub.add_parser("check", parents=[common])
    c.add_argument("name", nargs="?")
    c.add_argument("--all", action="store_true")
    c.add_argument("--to-basic", action="store_true")
    c = csub.add_parser("emit", parents=[common])
    c.add_argument("what", choices=["k-ind"])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("-o", "--output", default=None)
    c = csub.add_parser("show", parents=[common])
    c.add_argument("name")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("discrete", help="the head/shift fragment")
    dsub = p.add_subparsers(dest="discrete_command", required=True)
    d = dsub.add_parser("decide", parents=[common])
    d.add_argument("--premises", default=None, help="file of homogeneous identities")
    d.add_argument("--goal", required=True)
    d.add_argument("--bound", type=int, default=None)
    d.add_argument("--oracle-depth", type=int, default=None)
    d.add_argument("--compare", action="store_true")
    d = dsub.add_parser("flatness", parents=[common])
    d.add_argument("--n-min", type=int, default=1)
    d.add_argument("--n-max", type=int, default=8)
    d.add_argument("--depth", type=int, default=10)
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("rules", help="rule sets")
    rsub = p.add_subparsers(dest="rules_command", required=True)
    r = rsub.add_parser("list", parents=[common])
    r.add_argument("--rules", default="AIC1")
    r.add_argument("--kind", default=None, help="comma-separated kinds to keep")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("gen-kind", parents=[common], help="emit the k-induction proof")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_kind)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except UsageError as e:
        print(f"aic: error: {e}", file=sys.stderr)
        return 2
    except InvalidSpec as e:
        _report_error(args, e)
        return 2
    except AicError as e:
        _report_error(args, e)
        return 1


def _report_error(args, e: AicError) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "ok": False, **e.to_json()}, indent=2,
                         sort_keys=True))
    else:
        where = e.details.get("path")
        print(f"{e.kind}: {e.message}" + (f" (at {where})" if where else ""), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
