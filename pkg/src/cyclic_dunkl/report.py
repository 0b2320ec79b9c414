"""Structured outcome of one identity check."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

#: statuses that do not count as a failure
OK_STATUSES = ("pass", "degenerate", "documented-discrepancy")


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    m: int
    nu: tuple
    truncation: int
    max_residual: float | None
    tolerance: float
    status: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(float(v) for v in self.nu))
        if not self.status:
            ok = self.max_residual is not None and self.max_residual <= self.tolerance
            object.__setattr__(self, "status", "pass" if ok else "fail")

    @property
    def passed(self) -> bool:
        return self.status in OK_STATUSES

    def to_json_obj(self) -> dict:
        r = self.max_residual
        if r is not None and not math.isfinite(r):
            r = None
        return {
            "schema_version": SCHEMA_VERSION,
            "identity": self.identity,
            "m": self.m,
            "nu": list(self.nu),
            "truncation": self.truncation,
            "max_residual": r,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=False)

    def summary(self) -> str:
        r = "n/a" if self.max_residual is None else f"{self.max_residual:.3e}"
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.identity} m={self.m} residual={r} tol={self.tolerance:g} [{self.status}]"
