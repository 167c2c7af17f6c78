# rules/models.py
"""
Rule verdicts and slice overlap reports.
"""
from dataclasses import dataclass

RULES = {1: 'output instructions are extracted',
         2: 'parameters are initialised and current',
         3: 'no conditionally defined final variable',
         4: 'no redeclaration at the call site',
         5: 'the remaining method keeps a definition',
         6: 'no highly overlapping output slices',
         7: 'no duplicated state change',
         8: 'no duplicated object creation',
         9: 'statement and output order is preserved'}
"""Rule id -> short description."""


@dataclass(frozen=True)
class RuleVerdict:
    """
    The outcome of checking one rule on one candidate.
    """
    rule_id: int
    passed: bool
    reason: str = ''
    """Why the rule failed. Empty for passed rules."""

    def __post_init__(self):
        if self.rule_id not in RULES:
            raise ValueError(f'Unknown rule {self.rule_id}.')
        if self.passed == bool(self.reason):
            raise ValueError(f'Rule {self.rule_id}: a verdict carries a reason exactly when it failed.')

    def to_dict(self) -> dict:
        d = {'rule': self.rule_id, 'passed': self.passed}
        if not self.passed:
            d['reason'] = self.reason
        return d


@dataclass(frozen=True)
class OverlapReport:
    """
    The overlap of the slices of two output instructions.
    """
    pair: tuple[int, int]
    """The two output statements, lower id first."""
    common: frozenset[int]
    """The statements both slices share."""
    slice_overlap: float
    """|common| divided by the size of the union of both slices."""

    def to_dict(self) -> dict:
        return {'pair': list(self.pair), 'common': sorted(self.common), 'overlap': round(self.slice_overlap, 4)}
