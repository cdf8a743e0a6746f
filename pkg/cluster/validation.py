"""Report values returned by the validate_* operations."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class Violation:
    rule: str
    pair: Optional[Tuple] = None
    message: str = ""

    def __str__(self) -> str:
        where = f" at {self.pair}" if self.pair is not None else ""
        return f"{self.rule}{where}: {self.message}" if self.message else f"{self.rule}{where}"


@dataclass
class Report:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def add(self, rule: str, pair=None, message: str = "") -> None:
        self.violations.append(Violation(rule, tuple(pair) if pair is not None else None, message))

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [asdict(v) for v in self.violations]}

    def __bool__(self) -> bool:
        return self.ok
