"""Exact finite-model semantics and a derivation checker for the algebra of
iterative constructions over eventually periodic sequences."""

from .errors import AicError
from .kernel import Context, Leaf, Step, check, inline, expand_indiscern
from .lasso import Lasso
from .lattice import FiniteLattice, MonotoneMap, build_lattice
from .rules import RuleSet, builtin_rulesets, ruleset_from_spec
from .semantics import Interpretation, Model, evaluate
from .term import Identity, Quasiequation, parse_identity, parse_quasieq, parse_term

__version__ = "0.1.0"

__all__ = [
    "AicError", "Context", "Leaf", "Step", "check", "inline", "expand_indiscern", "Lasso",
    "FiniteLattice", "MonotoneMap", "build_lattice", "RuleSet", "builtin_rulesets", "ruleset_from_spec",
    "Interpretation", "Model", "evaluate", "Identity", "Quasiequation", "parse_identity", "parse_quasieq",
    "parse_term",
]
