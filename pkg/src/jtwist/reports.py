"""Verification reports shared by every check in the package."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

__all__ = ["Report", "timed"]


@dataclass
class Report:
    """Outcome of one named identity check.

    ``residual_witness`` holds a rendered nonzero term when the check fails
    (or any extra diagnostic string); ``details`` carries check-specific
    data such as counts or scales and is included in the JSON form.
    """

    check: str
    params: dict
    status: str = "pass"
    residual_witness: str | None = None
    wall_time_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        out = {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "residual_witness": self.residual_witness,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=False, **kw)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        text = f"[{tag}] {self.check} ({ps}) {self.wall_time_ms:.0f} ms"
        if self.residual_witness and not self.passed:
            text += f"\n       witness: {self.residual_witness}"
        return text


@contextmanager
def timed(report):
    """Fill ``report.wall_time_ms`` with the duration of the block."""
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
