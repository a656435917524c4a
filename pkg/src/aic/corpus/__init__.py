"""Stored derivations, their loader, and reduction of extended proofs to the basic system."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from ..errors import AicError, DuplicateName, InvalidSpec
from ..kernel import check, expand_indiscern, inline, register_derived
from ..rules import RuleSet, aic1_additions, ruleset_from_spec
from ..script import Script, parse_script
from .kind import emit_kind, gen_kind_proof, gen_kind_term, kind_size

PROOF_DIR = Path(__file__).parent / "proofs"


@dataclass(frozen=True)
class NamedProof:
    name: str
    script: Script
    text: str

    @property
    def quasieq(self):
        return self.script.quasieq

    @property
    def ruleset(self) -> str:
        return self.script.ruleset

    @property
    def provenance(self) -> str:
        return self.script.about

    @property
    def derivation(self):
        return self.script.derivation


def names() -> list[str]:
    return sorted(p.stem for p in PROOF_DIR.glob("*.proof"))


@lru_cache(maxsize=None)
def get(name: str) -> NamedProof:
    path = PROOF_DIR / f"{name}.proof"
    if not path.exists():
        raise InvalidSpec(f"no stored proof named {name!r}", name=name)
    text = path.read_text()
    return NamedProof(name, parse_script(text), text)


def corpus_all() -> list[NamedProof]:
    return [get(n) for n in names()]


def _with_lemma(rs: RuleSet, name: str, stack=()) -> RuleSet:
    """``rs`` extended by the stored proof ``name`` (and what it uses) as derived rules."""
    np = get(name)
    if name in rs:
        # already primitive here, e.g. a basic-system derivation read over the extended system
        if not rs[name].quasieq().same(np.quasieq):
            raise DuplicateName(f"{name!r} in {rs.name} differs from the stored lemma", rule=name)
        return rs
    if name in stack:
        raise InvalidSpec(f"cyclic uses through {name!r}")
    for dep in np.script.uses:
        rs = _with_lemma(rs, dep, stack + (name,))
    return register_derived(name, np.quasieq, np.derivation, rs)


def ruleset_for(script: Script, base: RuleSet | None = None) -> RuleSet:
    rs = base if base is not None else ruleset_from_spec(script.ruleset, script.funcs)
    for dep in script.uses:
        rs = _with_lemma(rs, dep)
    return rs


def check_script(script: Script, base: RuleSet | None = None) -> RuleSet:
    rs = ruleset_for(script, base)
    check(script.derivation, script.quasieq, rs)
    return rs


def check_named(name: str) -> NamedProof:
    np = get(name)
    check_script(np.script)
    return np


def check_all() -> list[tuple[str, AicError | None]]:
    out = []
    for n in names():
        try:
            check_named(n)
            out.append((n, None))
        except AicError as e:
            out.append((n, e))
    return out


def basic_spec(spec: str) -> str:
    """The same rule set specification with the extended base swapped for the basic one."""
    head, _, rest = spec.partition("+")
    if head.strip() not in ("AIC0", "AIC1"):
        raise InvalidSpec(f"{spec!r} is not built on the basic or extended system")
    return "AIC0" + ("+" + rest if rest else "")


def with_extended_as_derived(spec: str) -> RuleSet:
    """Basic rules plus every extended-system rule, each justified by its stored derivation."""
    rs = ruleset_from_spec(basic_spec(spec))
    for r in aic1_additions():
        if r.name == "indiscern":
            continue
        rs = _with_lemma(rs, r.name)
    return rs


def inline_to_base(script: Script) -> tuple:
    """Rewrite ``script`` into a derivation over the basic system alone.

    Returns ``(derivation, base_ruleset)``; the derivation has been re-checked.
    """
    rs = with_extended_as_derived(script.ruleset)
    for dep in script.uses:
        rs = _with_lemma(rs, dep)
    check(script.derivation, script.quasieq, rs)
    flat = expand_indiscern(inline(script.derivation, rs), rs)
    base = ruleset_from_spec(basic_spec(script.ruleset))
    check(flat, script.quasieq, base)
    return flat, base


__all__ = [
    "NamedProof", "PROOF_DIR", "names", "get", "corpus_all", "ruleset_for", "check_script",
    "check_named", "check_all", "inline_to_base", "with_extended_as_derived", "basic_spec",
    "gen_kind_term", "gen_kind_proof", "emit_kind", "kind_size",
]
