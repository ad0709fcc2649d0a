"""Command reports with a canonical JSON form and a plain-text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .checks import CheckReport

STATUSES = ("pass", "fail", "error")
EXIT_CODES = {"pass": 0, "fail": 1, "error": 2}


def _plain(x):
    """JSON-friendly copy of a witness (tuples become lists, numbers and strings stay)."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return str(x)


@dataclass(frozen=True)
class Finding:
    check: str
    verdict: str  # pass | fail | error
    witness: Any = None

    def to_dict(self) -> dict:
        d = {"check": self.check, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        return d


@dataclass
class Report:
    command: str
    findings: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    forced_status: Optional[str] = None

    def add(self, check: str, ok: bool, witness=None) -> "Report":
        self.findings.append(Finding(check, "pass" if ok else "fail", witness))
        return self

    def add_error(self, check: str, message: str) -> "Report":
        self.findings.append(Finding(check, "error", message))
        return self

    def add_checks(self, rep: CheckReport, prefix: str = "") -> "Report":
        for c in rep:
            self.add(prefix + c.name, c.ok, c.witness)
        return self

    def fact(self, name: str, value) -> "Report":
        self.artifacts.setdefault("facts", {})[name] = _plain(value)
        return self

    @property
    def status(self) -> str:
        if self.forced_status:
            return self.forced_status
        if any(f.verdict == "error" for f in self.findings):
            return "error"
        return "pass" if all(f.verdict == "pass" for f in self.findings) else "fail"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        d = {"command": self.command, "status": self.status, "findings": [f.to_dict() for f in self.findings]}
        if self.artifacts:
            d["artifacts"] = self.artifacts
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        findings = [Finding(f["check"], f["verdict"], f.get("witness")) for f in d.get("findings", [])]
        r = cls(d["command"], findings, dict(d.get("artifacts", {})))
        if r.status != d["status"]:
            r.forced_status = d["status"]
        return r

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"lycas {self.command}: {self.status.upper()}"]
        for f in self.findings:
            line = f"  {f.verdict.upper():5} {f.check}"
            if f.witness is not None:
                w = f.witness
                line += f"  witness: {tuple(w) if isinstance(w, list) else w}"
            lines.append(line)
        for name, value in sorted(self.artifacts.get("facts", {}).items()):
            lines.append(f"  {name}: {value}")
        return "\n".join(lines) + "\n"
