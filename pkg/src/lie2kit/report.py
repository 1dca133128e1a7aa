"""Verification reports: one ``Check`` per identity family, grouped in a ``Report``."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

MAX_LISTED = 20


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.3e}"
    return str(value)


@dataclass
class Check:
    name: str
    residual: object = Fraction(0)
    violations: list = field(default_factory=list)
    n_violations: int = 0
    n_tested: int = 0

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def record(self, where, residual=None):
        """Register one failing tuple; only the first ``MAX_LISTED`` are kept."""
        self.n_violations += 1
        if len(self.violations) < MAX_LISTED:
            self.violations.append(where)
        if residual is not None and residual > self.residual:
            self.residual = residual

    def observe(self, residual, failed: bool, where):
        self.n_tested += 1
        if failed:
            self.record(where, residual)
        elif residual > self.residual:
            self.residual = residual

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "residual": _fmt(self.residual),
            "tested": self.n_tested,
            "violations": self.n_violations,
            "counterexamples": [list(v) if isinstance(v, tuple) else v for v in self.violations],
        }


@dataclass
class Report:
    suite: str
    instance: str = ""
    checks: list[Check] = field(default_factory=list)
    mode: str = "exact"
    seed: int | None = None
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name)
        self.checks.append(c)
        return c

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def violations(self) -> list:
        return [(c.name, v) for c in self.checks for v in c.violations]

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            c.name = prefix + c.name
            self.checks.append(c)
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "mode": self.mode,
            "seed": self.seed,
            "elapsed": round(self.elapsed, 4),
            "status": "pass" if self.ok else "fail",
            "checks": [c.to_dict() for c in self.checks],
            **({"extra": self.extra} if self.extra else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def format(self) -> str:
        head = f"[{self.suite}] {self.instance}  mode={self.mode}"
        if self.seed is not None:
            head += f" seed={self.seed}"
        lines = [head]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"  {status}  {c.name:<28} residual={_fmt(c.residual)}  tested={c.n_tested}"
            if not c.passed:
                line += f"  violations={c.n_violations}"
            lines.append(line)
            for v in c.violations[:5]:
                text = str(v)
                if len(text) > 160:
                    text = text[:157] + "..."
                lines.append(f"        at {text}")
        for k, v in self.extra.items():
            text = str(v)
            if len(text) > 160:
                text = text[:157] + "..."
            lines.append(f"  {k}: {text}")
        lines.append(f"  => {'PASS' if self.ok else 'FAIL'} ({self.elapsed:.3f}s)")
        return "\n".join(lines)


class timed:
    """Context manager stamping ``report.elapsed``."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self._t0
        return False
