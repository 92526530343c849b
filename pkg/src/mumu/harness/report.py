"""Check verdicts and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..steps import Trace
from ..syntax import show

HOLDS = "holds"
FALSIFIED = "falsified"
INCONCLUSIVE = "inconclusive"
STATUSES = (HOLDS, FALSIFIED, INCONCLUSIVE)


@dataclass
class CheckReport:
    name: str
    status: str
    subject: str
    witness: list[Trace] = field(default_factory=list)
    bound_used: dict = field(default_factory=dict)
    # free-form remarks (for instance which form a simulation witness took);
    # kept out of the JSON so the key set stays fixed
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status == HOLDS

    def witness_json(self) -> list[dict]:
        out = []
        for trace in self.witness:
            out.append({"rule": "start", "linear": True, "term": show(trace.start)})
            for redex, node in trace.steps:
                out.append({"rule": redex.rule, "linear": redex.linear, "term": show(node)})
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "bound_used": self.bound_used,
            "subject": self.subject,
            "witness": self.witness_json(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def summary(self) -> str:
        return f"{self.name}: {self.status}  {self.subject}"


def combine(name: str, subject: str, parts: list[CheckReport], bound_used: dict | None = None) -> CheckReport:
    """Fold sub-reports: any falsified wins, then any inconclusive, else holds."""
    statuses = {p.status for p in parts}
    if FALSIFIED in statuses:
        status = FALSIFIED
    elif INCONCLUSIVE in statuses:
        status = INCONCLUSIVE
    else:
        status = HOLDS
    witness = [t for p in parts for t in p.witness]
    bounds = dict(bound_used or {})
    for p in parts:
        for k, v in p.bound_used.items():
            if isinstance(v, int) and not isinstance(v, bool):
                bounds[k] = max(bounds.get(k, 0), v)
    notes = {"parts": [p.notes for p in parts]}
    return CheckReport(name, status, subject, witness, bounds, notes)
