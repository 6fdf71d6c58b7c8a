"""Verification report entries and their text/JSON renderings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class CheckResult:
    check_id: str
    identity: str
    target: complex
    computed: complex
    tolerance: float
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def abs_error(self) -> float:
        err = abs(complex(self.computed) - complex(self.target))
        return err if math.isfinite(err) else math.inf

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tolerance

    def to_dict(self) -> dict:
        t, c = complex(self.target), complex(self.computed)
        out = {
            "check_id": self.check_id,
            "identity": self.identity,
            "target": [_num(t.real), _num(t.imag)],
            "computed": [_num(c.real), _num(c.imag)],
            "abs_error": _num(self.abs_error),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.note:
            out["note"] = self.note
        out.update(self.extra)
        return out


def _num(x: float):
    # JSON has no inf/nan; keep them as strings
    return x if math.isfinite(x) else str(x)


@dataclass
class VerificationReport:
    entries: list[CheckResult]
    wall_time_seconds: float = 0.0

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def n_passed(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def all_passed(self) -> bool:
        return self.n_passed == self.total

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "summary": {
                "total": self.total,
                "passed": self.n_passed,
                "wall_time_seconds": round(self.wall_time_seconds, 3),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_table(self) -> str:
        head = f"{'check':<34} {'abs_error':>11} {'tolerance':>10}  result"
        lines = [head, "-" * len(head)]
        for e in self.entries:
            status = "PASS" if e.passed else "FAIL"
            lines.append(f"{e.check_id:<34} {e.abs_error:>11.3e} {e.tolerance:>10.1e}  {status}")
            if e.note:
                lines.append(f"    {e.note}")
        lines.append("-" * len(head))
        lines.append(f"{self.n_passed}/{self.total} checks passed in {self.wall_time_seconds:.2f} s")
        return "\n".join(lines) + "\n"

    def write(self, directory: Path, stem: str) -> tuple[Path, Path]:
        directory.mkdir(parents=True, exist_ok=True)
        json_path = directory / f"{stem}.json"
        text_path = directory / f"{stem}.txt"
        json_path.write_text(self.to_json(), encoding="utf-8")
        text_path.write_text(self.to_table(), encoding="utf-8")
        return json_path, text_path
