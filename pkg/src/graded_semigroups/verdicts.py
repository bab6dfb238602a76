"""Tri-state verdicts with certificates, witnesses, and recorded search bounds.

A ``Fails`` verdict always carries either a concrete witness or a
theorem-backed certificate; an ``Unknown`` verdict always records the bounds
that were exhausted.  Searches over infinite carriers never certify a failure
of a universally quantified property on their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"


@dataclass
class Verdict:
    status: str
    certificate: str = ""
    witness: Any = None
    bounds: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.bounds:
            out["bounds"] = {k: _jsonable(v) for k, v in self.bounds.items()}
        return out

    def __repr__(self) -> str:
        extra = f": {self.certificate}" if self.certificate else ""
        return f"Verdict({self.status}{extra})"


def holds(certificate: str = "", bounds: dict | None = None) -> Verdict:
    return Verdict(HOLDS, certificate, None, bounds or {})


def fails(certificate: str, witness: Any = None, bounds: dict | None = None) -> Verdict:
    return Verdict(FAILS, certificate, witness, bounds or {})


def unknown(certificate: str, bounds: dict) -> Verdict:
    return Verdict(UNKNOWN, certificate, None, bounds)


def all_of(parts: dict[str, Verdict], certificate: str = "") -> Verdict:
    """Combine named sub-verdicts: Fails dominates, then Unknown, else Holds."""
    summary = "; ".join(f"{name}={v.status}" for name, v in parts.items())
    if certificate:
        summary = f"{certificate} [{summary}]"
    merged_bounds: dict = {}
    for v in parts.values():
        merged_bounds.update(v.bounds)
    for name, v in parts.items():
        if v.fails:
            return Verdict(FAILS, summary, {"failing": name, "witness": v.witness}, merged_bounds)
    for v in parts.values():
        if v.unknown:
            return Verdict(UNKNOWN, summary, None, merged_bounds)
    return Verdict(HOLDS, summary, None, merged_bounds)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return items
    return repr(value)
