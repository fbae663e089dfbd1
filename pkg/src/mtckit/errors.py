"""Exception hierarchy and the pass/fail report shared by all validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class MtcError(Exception):
    """Base class; ``kind`` and ``witness`` end up in the CLI error JSON."""

    kind = "error"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness

    def to_json(self) -> dict:
        return {"error": {"kind": self.kind, "message": str(self), "witness": _jsonable(self.witness)}}


class ShapeError(MtcError):
    kind = "ShapeError"


class RelationFailure(MtcError):
    kind = "RelationFailure"


class DegenerateForm(MtcError):
    kind = "DegenerateForm"


class InvalidForm(MtcError):
    kind = "InvalidForm"


class UnknownName(MtcError):
    kind = "UnknownName"


class ValidationFailure(MtcError):
    kind = "ValidationFailure"


class NotIntegral(MtcError):
    kind = "NotIntegral"


class NegativeCoefficient(MtcError):
    kind = "NegativeCoefficient"


class UnboundedSearch(MtcError):
    kind = "UnboundedSearch"


class DimensionError(MtcError):
    kind = "DimensionError"


class DegeneratePairing(MtcError):
    kind = "DegeneratePairing"


class NotProportional(MtcError):
    kind = "NotProportional"


class Degenerate(MtcError):
    kind = "Degenerate"


class InvalidModule(MtcError):
    kind = "InvalidModule"


def _jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def raise_if_failed(self) -> None:
        bad = self.failures()
        if bad:
            raise ValidationFailure(f"check '{bad[0].name}' failed", {"check": bad[0].name, "witness": bad[0].witness})

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": _jsonable(c.witness)} for c in self.checks
            ],
        }
