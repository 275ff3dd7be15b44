"""Verification reports: a list of named checks with a status each."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

STATUSES = ("pass", "fail", "skip", "warn")


@dataclass
class Check:
    id: str
    description: str
    status: str
    detail: str = ""
    claim: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, description: str, status: str | bool, detail: str = "", claim: str = "") -> Check:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        c = Check(id, description, status, detail, claim)
        self.checks.append(c)
        return c

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def get(self, check_id: str) -> Check | None:
        try:
            return self[check_id]
        except KeyError:
            return None

    @property
    def summary(self) -> dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return not any(c.status == "fail" for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if c.status == "fail"), None)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        rep = cls(data["suite"], [Check(**c) for c in data["checks"]])
        if "summary" in data and data["summary"] != rep.summary:
            raise ValueError("summary counts do not match the checks")
        return rep

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        width = max((len(c.id) for c in self.checks), default=2)
        lines = [f"== {self.suite} =="]
        for c in self.checks:
            line = f"{c.status.upper():5} {c.id:<{width}}  {c.description}"
            if c.detail and c.status != "pass":
                line += f"  [{c.detail}]"
            lines.append(line)
        s = self.summary
        lines.append(
            f"-- {s['pass']} pass, {s['fail']} fail, {s['warn']} warn, {s['skip']} skip: "
            + ("PASS" if self.ok else "FAIL")
        )
        return "\n".join(lines)
