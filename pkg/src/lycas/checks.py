"""Check reports: named verdicts with the first failing witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""


@dataclass
class CheckReport:
    """Ordered collection of checks; ``ok`` iff every check passed."""

    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> "CheckReport":
        self.checks.append(Check(name, bool(ok), witness, detail))
        return self

    def add_residual(self, name: str, residual: np.ndarray, lead: int, detail: str = "") -> "CheckReport":
        witness = first_nonzero(residual, lead)
        return self.add(name, witness is None, witness, detail)

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.detail))
        self.info.update(other.info)
        return self

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
            if c.witness is not None:
                line += f"  witness={c.witness}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        return "\n".join(lines)

    def require(self, what: str) -> "CheckReport":
        if not self.ok:
            first = self.failures[0]
            raise ValidationError(
                f"{what}: {first.name} fails" + (f" at {first.witness}" if first.witness is not None else ""),
                report=self,
                witness=first.witness,
            )
        return self


def first_nonzero(residual: Any, lead: int) -> Optional[tuple]:
    """Lexicographically first index over the leading ``lead`` axes where ``residual`` is nonzero."""
    residual = np.asarray(residual, dtype=object)
    if residual.size == 0:
        return None
    nz = residual != 0
    if nz.ndim > lead:
        nz = nz.reshape(nz.shape[:lead] + (-1,)).any(axis=-1)
    hits = np.argwhere(nz)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])
