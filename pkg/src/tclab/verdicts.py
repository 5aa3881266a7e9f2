"""
Five-state answers.

A bounded computation can prove a statement (a witness exists, or a finite check
is exhaustive), gather evidence up to a bound, or give up. Every check in tclab
returns a ``Verdict`` saying which of these happened.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any


class Status(str, Enum):
    CERTIFIED_TRUE = "CertifiedTrue"
    CERTIFIED_FALSE = "CertifiedFalse"
    EVIDENCE_TRUE = "EvidenceTrue"
    EVIDENCE_FALSE = "EvidenceFalse"
    INCONCLUSIVE = "Inconclusive"

    @property
    def certified(self) -> bool:
        return self in (Status.CERTIFIED_TRUE, Status.CERTIFIED_FALSE)

    @property
    def evidence(self) -> bool:
        return self in (Status.EVIDENCE_TRUE, Status.EVIDENCE_FALSE)

    @property
    def positive(self) -> bool:
        return self in (Status.CERTIFIED_TRUE, Status.EVIDENCE_TRUE)

    @property
    def negative(self) -> bool:
        return self in (Status.CERTIFIED_FALSE, Status.EVIDENCE_FALSE)


# Most damaging status first: a combined claim is as weak as its weakest part.
severity = (
    Status.CERTIFIED_FALSE,
    Status.EVIDENCE_FALSE,
    Status.INCONCLUSIVE,
    Status.EVIDENCE_TRUE,
    Status.CERTIFIED_TRUE,
)

downgraded = {
    Status.CERTIFIED_TRUE: Status.EVIDENCE_TRUE,
    Status.CERTIFIED_FALSE: Status.EVIDENCE_FALSE,
}


@dataclass(frozen=True)
class Verdict:
    claim: str
    status: Status
    bound: Mapping[str, Any] | None = None
    witness: Mapping[str, Any] | None = None
    assumptions: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        object.__setattr__(self, "assumptions", tuple(dict.fromkeys(self.assumptions)))
        if self.status.certified and self.assumptions:
            raise ValueError(
                f"{self.status.value} verdict for {self.claim!r} cannot rest on "
                f"assumptions {list(self.assumptions)}."
            )
        if self.status.evidence and self.bound is None:
            raise ValueError(f"Evidence for {self.claim!r} must record its bound.")

    # Constructors mirror the statuses so call sites read like the outcome.
    @classmethod
    def certified_true(cls, claim: str, **kwargs) -> Verdict:
        return cls(claim, Status.CERTIFIED_TRUE, **kwargs)

    @classmethod
    def certified_false(cls, claim: str, **kwargs) -> Verdict:
        return cls(claim, Status.CERTIFIED_FALSE, **kwargs)

    @classmethod
    def evidence_true(cls, claim: str, bound: Mapping[str, Any], **kwargs) -> Verdict:
        return cls(claim, Status.EVIDENCE_TRUE, bound=bound, **kwargs)

    @classmethod
    def evidence_false(cls, claim: str, bound: Mapping[str, Any], **kwargs) -> Verdict:
        return cls(claim, Status.EVIDENCE_FALSE, bound=bound, **kwargs)

    @classmethod
    def inconclusive(cls, claim: str, **kwargs) -> Verdict:
        return cls(claim, Status.INCONCLUSIVE, **kwargs)

    @classmethod
    def decided(
        cls,
        claim: str,
        holds: bool,
        *,
        bound: Mapping[str, Any] | None = None,
        witness: Mapping[str, Any] | None = None,
        assumptions: Iterable[str] = (),
    ) -> Verdict:
        """
        Certified outcome of an exact check. A success over a bounded range, or any
        outcome leaning on assumptions, is weakened to evidence; a failure found
        within the bound stays certified.
        """
        status = Status.CERTIFIED_TRUE if holds else Status.CERTIFIED_FALSE
        assumptions = tuple(assumptions)
        if assumptions or (holds and bound is not None):
            status = downgraded[status]
            bound = bound if bound is not None else {}
        return cls(claim, status, bound=bound, witness=witness, assumptions=assumptions)

    @property
    def holds(self) -> bool:
        return self.status.positive

    @property
    def fails(self) -> bool:
        return self.status.negative

    def with_assumptions(self, assumptions: Iterable[str]) -> Verdict:
        assumptions = (*self.assumptions, *assumptions)
        if not assumptions:
            return self
        status = downgraded.get(self.status, self.status)
        bound = self.bound
        if status.evidence and bound is None:
            bound = {}
        return replace(self, status=status, bound=bound, assumptions=assumptions)

    def renamed(self, claim: str) -> Verdict:
        return replace(self, claim=claim)

    @classmethod
    def combine(
        cls,
        claim: str,
        verdicts: Iterable[Verdict],
        *,
        bound: Mapping[str, Any] | None = None,
        witness: Mapping[str, Any] | None = None,
    ) -> Verdict:
        """
        Conjunction of verdicts. The weakest status wins, assumptions are pooled and
        the witness of the first deciding failure is kept.
        """
        verdicts = list(verdicts)
        if not verdicts:
            return cls.certified_true(claim, bound=bound, witness=witness)

        status = min((v.status for v in verdicts), key=severity.index)
        assumptions = tuple(a for v in verdicts for a in v.assumptions)
        if status.certified and assumptions:
            status = downgraded[status]

        if witness is None:
            culprit = next((v for v in verdicts if v.status == status), None)
            if culprit is not None and not status.positive:
                witness = {"claim": culprit.claim, **(culprit.witness or {})}

        merged_bound: dict[str, Any] = {}
        for v in verdicts:
            merged_bound.update(v.bound or {})
        merged_bound.update(bound or {})
        if not merged_bound and not status.evidence:
            merged_bound = None

        return cls(
            claim,
            status,
            bound=merged_bound,
            witness=witness,
            assumptions=assumptions,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "status": self.status.value,
            "bound": dict(self.bound) if self.bound is not None else None,
            "witness": dict(self.witness) if self.witness is not None else None,
            "assumptions": list(self.assumptions),
        }

    def __str__(self) -> str:
        parts = [f"{self.status.value}: {self.claim}"]
        if self.bound:
            parts.append(
                "bound " + ", ".join(f"{k}={v}" for k, v in sorted(self.bound.items()))
            )
        if self.assumptions:
            parts.append("assuming " + "; ".join(self.assumptions))
        return " | ".join(parts)
