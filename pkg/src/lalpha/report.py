"""Structured pass/fail records shared by the verification suites and the CLI."""

import csv
import io
import json
from dataclasses import dataclass, field


def _plain(value):
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    if hasattr(value, "item"):  # numpy scalar
        return _plain(value.item())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class Check:
    claim: str
    params: dict
    measured: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self):
        return {
            "claim": self.claim,
            "params": _plain(self.params),
            "measured": _plain(self.measured),
            "tolerance": _plain(self.tolerance),
            "verdict": "pass" if self.passed else "fail",
            "note": self.note,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def add(self, claim, params, measured, tolerance, passed, note=""):
        self.checks.append(Check(claim, dict(params), measured, tolerance, bool(passed), note))
        return self.checks[-1]

    def extend(self, other):
        self.checks.extend(other.checks)
        for k, v in other.summary.items():
            self.summary.setdefault(k, v)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "suite": self.suite,
            "verdict": "pass" if self.passed else "fail",
            "config": _plain(self.config),
            "summary": _plain(self.summary),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "claim", "params", "measured", "tolerance", "verdict", "note"])
        for c in self.checks:
            d = c.to_dict()
            writer.writerow([self.suite, d["claim"], json.dumps(d["params"], sort_keys=True),
                             repr(d["measured"]), repr(d["tolerance"]), d["verdict"], d["note"]])
        return buf.getvalue()

    def to_table(self, max_rows=None):
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} "
                 f"({len(self.checks) - len(self.failures())}/{len(self.checks)} checks)"]
        for k, v in sorted(self.config.items()):
            lines.append(f"  config {k} = {_plain(v)}")
        for k, v in sorted(self.summary.items()):
            lines.append(f"  {k} = {_plain(v)}")
        shown = self.checks if max_rows is None else self.failures()[:max_rows]
        for c in shown:
            params = ", ".join(f"{k}={_plain(v)}" for k, v in c.params.items())
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.claim} ({params}): "
                         f"measured={_plain(c.measured)} tol={_plain(c.tolerance)}"
                         + (f"  {c.note}" if c.note else ""))
        return "\n".join(lines) + "\n"
