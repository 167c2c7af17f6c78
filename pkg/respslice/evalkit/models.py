# evalkit/models.py
"""
Ground truths and evaluation reports.
"""
from dataclasses import dataclass
import math

from ..settings import MAX_DIFF

DECISIONS = ('if', 'while', 'for')
"""Statement kinds that may never differ between a matched suggestion and a true occurrence."""


@dataclass(frozen=True)
class MatchConfig:
    max_diff: int = MAX_DIFF
    """The number of differing statements, declarations aside, a match tolerates."""

    def __post_init__(self):
        if self.max_diff < 0:
            raise ValueError(f'max_diff must not be negative, but got {self.max_diff}')


@dataclass(frozen=True)
class GroundTruth:
    """
    The parts of a method that should be extracted.
    """
    method: str
    occurrences: tuple[frozenset[int], ...]
    """The true occurrences, each a set of statement ids."""


def _ratio(a: int, b: int) -> float:
    return a / b if b else 0.0


def f1(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


def percent(ratio: float) -> float:
    """
    :return: The ratio in percent, truncated to one decimal. 152 of 223 is 68.1.
    """
    return math.floor(ratio * 1000 + 1e-9) / 10


@dataclass(frozen=True)
class MethodScore:
    method: str
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        """0 for a method without suggestions."""
        return _ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> float:
        return _ratio(self.tp, self.tp + self.fn)

    @property
    def f1(self) -> float:
        return f1(self.precision, self.recall)

    def to_dict(self) -> dict:
        return {'method': self.method, 'tp': self.tp, 'fp': self.fp, 'fn': self.fn,
                'precision': round(self.precision, 4), 'recall': round(self.recall, 4), 'f1': round(self.f1, 4)}


@dataclass(frozen=True)
class EvalReport:
    """
    Overall scores pool the counts of all methods, average scores average the per method scores.
    """
    methods: tuple[MethodScore, ...]

    @property
    def tp(self) -> int:
        return sum(m.tp for m in self.methods)

    @property
    def fp(self) -> int:
        return sum(m.fp for m in self.methods)

    @property
    def fn(self) -> int:
        return sum(m.fn for m in self.methods)

    @property
    def overall(self) -> tuple[float, float, float]:
        """(precision, recall, f1) of the pooled counts."""
        p, r = _ratio(self.tp, self.tp + self.fp), _ratio(self.tp, self.tp + self.fn)
        return p, r, f1(p, r)

    @property
    def average(self) -> tuple[float, float, float]:
        """(precision, recall, f1) averaged over the methods."""
        n = len(self.methods)
        p = _ratio(sum(m.precision for m in self.methods), n) if n else 0.0
        r = _ratio(sum(m.recall for m in self.methods), n) if n else 0.0
        return p, r, f1(p, r)

    def to_dict(self) -> dict:
        return {'methods': [m.to_dict() for m in self.methods],
                'totals': {'tp': self.tp, 'fp': self.fp, 'fn': self.fn},
                'overall': dict(zip(('precision', 'recall', 'f1'), (round(v, 4) for v in self.overall))),
                'average': dict(zip(('precision', 'recall', 'f1'), (round(v, 4) for v in self.average)))}

    def to_table(self) -> str:
        """
        :return: A text table with one line per method followed by the overall and average scores in percent,
            truncated to one decimal.
        """
        width = max([len(m.method) for m in self.methods] + [7])
        lines = [f'{"method":<{width}}  {"TP":>4} {"FP":>4} {"FN":>4}  {"Pr":>6} {"Re":>6} {"F1":>6}']
        for m in self.methods:
            lines.append(f'{m.method:<{width}}  {m.tp:>4} {m.fp:>4} {m.fn:>4}  {percent(m.precision):>6.1f} '
                         f'{percent(m.recall):>6.1f} {percent(m.f1):>6.1f}')
        for label, (p, r, f) in (('overall', self.overall), ('average', self.average)):
            lines.append(f'{label:<{width}}  {self.tp:>4} {self.fp:>4} {self.fn:>4}  {percent(p):>6.1f} '
                         f'{percent(r):>6.1f} {percent(f):>6.1f}')
        return '\n'.join(lines)
