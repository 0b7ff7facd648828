from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check.  ``holds is None`` means not applicable."""

    name: str
    holds: bool | None
    lhs: int | None = None
    rhs: int | None = None
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = [list(x) if isinstance(x, tuple) else x for x in w]
        return {
            "name": self.name,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "witness": w,
            "detail": self.detail,
        }
