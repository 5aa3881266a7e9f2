"""
Reports of a single command: the verdicts it reached, the tables behind them and
enough context (ring, window, seed) to reproduce the run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from tclab.bounds import Window
from tclab.errors import InconclusiveError, TclabError
from tclab.rings import GradedRing
from tclab.verdicts import Status, Verdict

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3


class Table(NamedTuple):
    name: str
    rows: list[dict[str, Any]]

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "rows": self.rows}


def ring_summary(ring: GradedRing) -> dict[str, Any]:
    """The ring block of a report; an undecided dimension is left null."""
    try:
        dim, provenance = ring.dimension
    except InconclusiveError:
        dim, provenance = None, None
    return {
        "char": ring.p,
        "vars": [
            {"name": name, "weight": weight}
            for name, weight in zip(ring.names, ring.weights)
        ],
        "relations": [str(f) for f in ring.presentation.relations],
        "dim": dim,
        "provenance": provenance,
    }


def exit_code(verdicts: list[Verdict]) -> int:
    """A false verdict outranks an inconclusive one; only all-true exits 0."""
    statuses = {v.status for v in verdicts}
    if statuses & {Status.CERTIFIED_FALSE, Status.EVIDENCE_FALSE}:
        return EXIT_FALSE
    if Status.INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


@dataclass
class Report:
    command: str
    ring: dict[str, Any]
    window: Window
    seed: int
    verdicts: list[Verdict] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)

    def add(self, verdict: Verdict) -> Report:
        self.verdicts.append(verdict)
        return self

    def table(self, name: str, rows: list[dict[str, Any]]) -> Report:
        self.tables.append(Table(name, rows))
        return self

    @property
    def exit_code(self) -> int:
        return exit_code(self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "ring": self.ring,
            "window": self.window.to_dict(),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "tables": [t.to_dict() for t in self.tables],
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def dim_text(self) -> str:
        if self.ring["dim"] is None:
            return "dim unknown"
        return f"dim {self.ring['dim']} ({self.ring['provenance']})"

    def to_text(self) -> str:
        variables = ", ".join(v["name"] for v in self.ring["vars"])
        lines = [
            f"Command: {self.command}",
            f"Ring: F_{self.ring['char']}[{variables}], {self.dim_text()}",
            f"Window: {self.window.n_lo}..{self.window.n_hi}, seed {self.seed}",
        ]
        for verdict in self.verdicts:
            lines.append(f"  {verdict}")
            if verdict.witness:
                witness = ", ".join(f"{k}={v}" for k, v in verdict.witness.items())
                lines.append(f"    witness: {witness}")
        for table in self.tables:
            lines.append(f"Table {table.name}:")
            lines += [
                "  " + ", ".join(f"{k}={v}" for k, v in row.items())
                for row in table.rows
            ]
        return "\n".join(lines)

    def render(self, text: bool = False) -> str:
        return self.to_text() if text else self.to_json()


def error_payload(error: TclabError) -> str:
    return json.dumps({"error": error.to_dict()}, indent=2, ensure_ascii=False)
