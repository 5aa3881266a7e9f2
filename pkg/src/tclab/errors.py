from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from tclab.verdicts import Verdict


class TclabError(Exception):
    """Base class for every error raised by tclab."""

    kind = "error"

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "message": str(self)}


class InputError(TclabError, ValueError):
    """Malformed user input: bad prime, unknown variable, dimension mismatch..."""

    kind = "input"


class PolynomialSyntaxError(InputError):
    kind = "syntax"

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position

    def to_dict(self) -> dict[str, Any]:
        return super().to_dict() | {"position": self.position}


class PreconditionError(TclabError):
    kind = "precondition"


class InconclusiveError(TclabError):
    """A bounded search ran out of room before it could decide."""

    kind = "inconclusive"

    def __init__(self, message: str, verdict: Verdict):
        super().__init__(message)
        self.verdict = verdict
