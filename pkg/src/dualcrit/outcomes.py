"""Shared decision vocabulary: outcome tags and operating characteristics."""

from __future__ import annotations

import enum
from dataclasses import dataclass

_SIMPLEX_TOL = 1e-9


class InfeasibleDesignError(ValueError):
    """Raised when no design satisfies the requested constraints."""


class DecisionTag(enum.Enum):
    GO = "GO"
    NOGO = "NO-GO"
    INCONCLUSIVE_SIG_NOT_RELEVANT = "INCONCLUSIVE_SIG_NOT_RELEVANT"
    INCONCLUSIVE_RELEVANT_NOT_SIG = "INCONCLUSIVE_RELEVANT_NOT_SIG"


# Conventional four-case numbering: 1 = both criteria missed, 2 = both met,
# 3 = significant only, 4 = relevant only.
_CASE_NUMBER = {
    DecisionTag.NOGO: 1,
    DecisionTag.GO: 2,
    DecisionTag.INCONCLUSIVE_SIG_NOT_RELEVANT: 3,
    DecisionTag.INCONCLUSIVE_RELEVANT_NOT_SIG: 4,
}


def _tag_for(significant: bool, relevant: bool) -> DecisionTag:
    if significant and relevant:
        return DecisionTag.GO
    if significant:
        return DecisionTag.INCONCLUSIVE_SIG_NOT_RELEVANT
    if relevant:
        return DecisionTag.INCONCLUSIVE_RELEVANT_NOT_SIG
    return DecisionTag.NOGO


@dataclass(frozen=True)
class Decision:
    """Outcome of applying the dual criterion to an observed result."""

    tag: DecisionTag
    significant: bool
    relevant: bool

    def __post_init__(self):
        if self.tag is not _tag_for(self.significant, self.relevant):
            raise ValueError("decision tag inconsistent with its criteria")

    @classmethod
    def from_criteria(cls, significant: bool, relevant: bool) -> "Decision":
        return cls(
            tag=_tag_for(significant, relevant),
            significant=significant,
            relevant=relevant,
        )

    @property
    def case(self) -> int:
        return _CASE_NUMBER[self.tag]

    @property
    def is_inconclusive(self) -> bool:
        return self.significant != self.relevant


@dataclass(frozen=True)
class OperatingCharacteristics:
    """GO / NO-GO / inconclusive probabilities at one true effect size."""

    true_effect: float
    p_go: float
    p_nogo: float
    p_inconclusive: float

    def __post_init__(self):
        for name in ("p_go", "p_nogo", "p_inconclusive"):
            value = getattr(self, name)
            if not -_SIMPLEX_TOL <= value <= 1.0 + _SIMPLEX_TOL:
                raise ValueError(f"{name} out of [0, 1]: {value}")
        total = self.p_go + self.p_nogo + self.p_inconclusive
        if abs(total - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"outcome probabilities sum to {total}, not 1")

    @property
    def probs(self) -> tuple[float, float, float]:
        return (self.p_go, self.p_nogo, self.p_inconclusive)
