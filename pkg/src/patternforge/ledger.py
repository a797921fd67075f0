"""Machine-checkable claims and their ledger.

A Claim records one verified value: what was expected, what was computed,
and how the two compare.  The pass flag is always recomputed from the
stored fields, never trusted from serialization.  Claim kinds:

* exact  - computed must equal expected (within tolerance for floats);
* lower  - computed must be >= expected (a proven lower bound);
* upper  - computed must be <= expected (a proven upper bound);
* target - informational comparison, never gates a run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

Number = int | float


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    kind: str
    expected: int | float | bool | str
    computed: int | float | bool | str
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "lower", "upper", "target"):
            raise ValueError(f"unknown claim kind {self.kind!r}")

    @property
    def gating(self) -> bool:
        return self.kind != "target"

    @property
    def passed(self) -> bool:
        e, c = self.expected, self.computed
        if self.kind in ("exact", "target"):
            if isinstance(e, (int, float)) and isinstance(c, (int, float)) \
                    and not isinstance(e, bool) and not isinstance(c, bool):
                return abs(c - e) <= self.tolerance
            return c == e
        if not isinstance(c, (int, float)) or not isinstance(e, (int, float)):
            return False
        if self.kind == "lower":
            return c >= e - self.tolerance
        return c <= e + self.tolerance

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "kind": self.kind,
            "expected": self.expected,
            "computed": self.computed,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Claim":
        return cls(claim_id=d["claim_id"], statement=d["statement"],
                   kind=d["kind"], expected=d["expected"],
                   computed=d["computed"], tolerance=d.get("tolerance", 0.0))


class VerdictLedger:
    """An append-only collection of claims with a deterministic order.

    Claim ids are unique; serialization sorts by id so identical runs
    produce byte-identical output.
    """

    def __init__(self, claims: Iterable[Claim] = ()):
        self._claims: dict[str, Claim] = {}
        self.extend(claims)

    def add(self, claim: Claim) -> Claim:
        if claim.claim_id in self._claims:
            raise ValueError(f"duplicate claim id {claim.claim_id!r}")
        self._claims[claim.claim_id] = claim
        return claim

    def extend(self, claims: Iterable[Claim]) -> None:
        for c in claims:
            self.add(c)

    def merge(self, other: "VerdictLedger") -> None:
        self.extend(other.claims)

    @property
    def claims(self) -> list[Claim]:
        return sorted(self._claims.values(), key=lambda c: c.claim_id)

    def __len__(self) -> int:
        return len(self._claims)

    def __getitem__(self, claim_id: str) -> Claim:
        return self._claims[claim_id]

    def __contains__(self, claim_id: str) -> bool:
        return claim_id in self._claims

    def __iter__(self) -> Iterator[Claim]:
        return iter(self.claims)

    def failed(self) -> list[Claim]:
        return [c for c in self.claims if c.gating and not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failed()

    def summary(self) -> dict:
        gating = [c for c in self.claims if c.gating]
        return {
            "checked": len(gating),
            "passed": sum(1 for c in gating if c.passed),
            "failed": sum(1 for c in gating if not c.passed),
            "informational": len(self._claims) - len(gating),
        }

    def to_json(self, indent: int | None = 2) -> str:
        doc = {
            "format_version": "verdict-ledger/1",
            "summary": self.summary(),
            "claims": [c.to_dict() for c in self.claims],
        }
        return json.dumps(doc, indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerdictLedger":
        doc = json.loads(text)
        return cls(Claim.from_dict(d) for d in doc["claims"])

    def format_table(self) -> str:
        rows = [("claim", "kind", "expected", "computed", "verdict")]
        for c in self.claims:
            verdict = ("pass" if c.passed else "FAIL") if c.gating \
                else ("met" if c.passed else "unmet")
            rows.append((c.claim_id, c.kind, _fmt(c.expected),
                         _fmt(c.computed), verdict))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths))
                 for row in rows]
        s = self.summary()
        lines.append(f"checked={s['checked']} passed={s['passed']} "
                     f"failed={s['failed']} informational={s['informational']}")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)
