"""Bound reports: worst-case (lhs, rhs, ratio) per branch, plus CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

CSV_FIELDS = ("instance", "lhs", "rhs", "ratio", "branch")


@dataclass
class BoundRow:
    instance: str
    lhs: float
    rhs: float
    ratio: float
    branch: str


@dataclass
class BoundReport:
    """Worst instance per branch of an inequality check.

    Every checked instance is folded in through :meth:`add` or
    :meth:`add_many`; only the maximal ratio per branch is retained, along
    with the number of instances seen.
    """

    name: str
    worst: dict[str, BoundRow] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)

    def add(self, instance: str, lhs: float, rhs: float, branch: str = "main"):
        ratio = lhs / rhs if rhs > 0 else float("inf")
        self.counts[branch] = self.counts.get(branch, 0) + 1
        cur = self.worst.get(branch)
        if cur is None or ratio > cur.ratio:
            self.worst[branch] = BoundRow(instance, float(lhs), float(rhs), float(ratio), branch)

    def add_many(self, lhs, rhs, branch: str, label):
        """Vectorised add; ``label(i)`` names instance i lazily."""
        lhs = np.asarray(lhs, dtype=float).ravel()
        rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape).ravel()
        if lhs.size == 0:
            return
        ratio = lhs / rhs
        i = int(np.argmax(ratio))
        self.counts[branch] = self.counts.get(branch, 0) + int(lhs.size)
        cur = self.worst.get(branch)
        if cur is None or ratio[i] > cur.ratio:
            self.worst[branch] = BoundRow(label(i), float(lhs[i]), float(rhs[i]),
                                          float(ratio[i]), branch)

    def merge(self, other: "BoundReport") -> "BoundReport":
        for b, row in other.worst.items():
            self.counts[b] = self.counts.get(b, 0) + other.counts.get(b, 0)
            cur = self.worst.get(b)
            if cur is None or row.ratio > cur.ratio:
                self.worst[b] = row
        return self

    def max_ratio(self, branch: str | None = None) -> float:
        if branch is not None:
            row = self.worst.get(branch)
            return row.ratio if row else 0.0
        return max((r.ratio for r in self.worst.values()), default=0.0)

    @property
    def rows(self) -> list[BoundRow]:
        return [self.worst[b] for b in sorted(self.worst)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in self.rows:
            w.writerow([r.instance, repr(r.lhs), repr(r.rhs), repr(r.ratio), r.branch])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"name": self.name, "counts": dict(sorted(self.counts.items())),
                "rows": [asdict(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
