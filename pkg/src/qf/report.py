"""Verdict records emitted by the verification routines and the CLI."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class Report:
    claim: str
    verdict: str
    data: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "verdict": self.verdict,
            "data": self.data,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 4),
        }

    def line(self) -> str:
        extra = "" if self.witness is None else f" witness={self.witness}"
        if self.verdict == SKIPPED and "reason" in self.data:
            extra += f" ({self.data['reason']})"
        return f"{self.verdict:7s} {self.claim}{extra}"


def verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def make_report(claim: str, checks: dict[str, bool], data: dict | None = None,
                witness: Any = None, started: float | None = None) -> Report:
    """Aggregate named boolean checks; the first failing check becomes the witness if none given."""
    failed = [name for name, ok in checks.items() if not ok]
    if failed and witness is None:
        witness = {"failed_checks": failed}
    rep = Report(claim, verdict(not failed), dict(data or {}), witness)
    rep.data["checks"] = {k: bool(v) for k, v in checks.items()}
    if started is not None:
        rep.elapsed = time.perf_counter() - started
    return rep


@contextmanager
def timed():
    box = {"start": time.perf_counter()}
    yield box
    box["elapsed"] = time.perf_counter() - box["start"]
