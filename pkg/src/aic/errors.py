"""Error hierarchy. Every error carries a stable ``kind`` used in JSON reports."""

from __future__ import annotations


class AicError(Exception):
    kind = "AicError"

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": self.message}
        out.update({k: _jsonable(v) for k, v in self.details.items()})
        return out


def _jsonable(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def _error(name: str) -> type[AicError]:
    return type(name, (AicError,), {"kind": name})


InvalidSpec = _error("InvalidSpec")
NotALattice = _error("NotALattice")
NotPostfixed = _error("NotPostfixed")
NotPrefixed = _error("NotPrefixed")
LatticeMismatch = _error("LatticeMismatch")
PeriodCapExceeded = _error("PeriodCapExceeded")
UnknownFunctionSymbol = _error("UnknownFunctionSymbol")
UnboundVariable = _error("UnboundVariable")
ConclusionMismatch = _error("ConclusionMismatch")
RuleNotFound = _error("RuleNotFound")
ArityMismatch = _error("ArityMismatch")
UnboundPatternVar = _error("UnboundPatternVar")
DuplicateName = _error("DuplicateName")
BoundTooSmall = _error("BoundTooSmall")


class NotMonotone(AicError):
    kind = "NotMonotone"

    def __init__(self, x: int, y: int, message: str = ""):
        super().__init__(message or f"{x} <= {y} but f({x}) is not <= f({y})", x=x, y=y)
        self.x = x
        self.y = y


class ParseError(AicError):
    kind = "ParseError"

    def __init__(self, message: str, position: int = 0, line: int | None = None):
        where = f" at position {position}" if line is None else f" at line {line}, position {position}"
        super().__init__(message + where, position=position, line=line)
        self.position = position
        self.line = line


class BadLeaf(AicError):
    kind = "BadLeaf"

    def __init__(self, index: int, message: str = "", path=()):
        super().__init__(message or f"leaf {index} does not match premise {index}", index=index, path=list(path))
        self.index = index
        self.path = tuple(path)


class MatchFail(AicError):
    kind = "MatchFail"

    def __init__(self, position: str, message: str = "", path=()):
        super().__init__(message or f"match failed at {position}", position=position, path=list(path))
        self.position = position
        self.path = tuple(path)


class SoundnessViolation(AicError):
    kind = "SoundnessViolation"

    def __init__(self, rule: str, counterexample, message: str = ""):
        super().__init__(message or f"rule {rule} violated", rule=rule, counterexample=str(counterexample))
        self.rule = rule
        self.counterexample = counterexample
