# metrics/models.py
"""
Cohesion, complexity and census reports.
"""
from dataclasses import dataclass, field

MODES = ('output', 'all')
"""Cohesion modes: the output values of a method, or all its local variables."""

NOT_APPLICABLE = 'n/a'
"""Printed instead of a metric that is undefined for a method."""


@dataclass(frozen=True)
class CohesionReport:
    """
    Slice based cohesion of one method.

    tightness = |intersection| / length, overlap = mean of |intersection| / |slice|, coverage = mean of
    |slice| / length, where length is the number of statements of the method.
    """
    mode: str
    """One of MODES."""
    out_set: tuple[str, ...]
    """The variables whose slices are measured."""
    slices: dict[str, frozenset[int]] = field(default_factory=dict)
    slices_intersect: frozenset[int] = frozenset()
    length: int = 0
    tightness: float | None = None
    """None when the out set is empty."""
    overlap: float | None = None
    coverage: float | None = None

    @property
    def applicable(self) -> bool:
        return self.tightness is not None

    def values(self) -> dict[str, float | None]:
        return {'tightness': self.tightness, 'overlap': self.overlap, 'coverage': self.coverage}

    def to_dict(self) -> dict:
        return {'mode': self.mode,
                'out_set': list(self.out_set),
                'slices': {v: sorted(s) for v, s in self.slices.items()},
                'slices_intersect': sorted(self.slices_intersect),
                'length': self.length,
                **{k: (round(v, 4) if v is not None else NOT_APPLICABLE) for k, v in self.values().items()}}


@dataclass(frozen=True)
class ComplexityReport:
    loc: int
    """The number of statements."""
    cyclomatic: int
    """1 plus the number of if, while and for statements."""
    max_nesting: int
    """The deepest nesting of statement lists, 0 for straight line code."""

    def values(self) -> dict[str, int]:
        return {'loc': self.loc, 'cc': self.cyclomatic, 'max_nesting': self.max_nesting}


@dataclass(frozen=True)
class MethodMetrics:
    """
    All metrics of one method.
    """
    method: str
    cohesion: CohesionReport
    complexity: ComplexityReport

    def values(self) -> dict[str, float | int | None]:
        return {**self.cohesion.values(), **self.complexity.values()}


@dataclass(frozen=True)
class DeltaRow:
    """
    The change of one metric of a method by one refactoring.
    """
    method: str
    metric: str
    original: float | None
    remaining: float | None
    extracted: float | None
    remain_minus_original: float | None
    """remaining - original."""
    average_minus_original: float | None
    """(extracted + remaining) / 2 - original."""


@dataclass(frozen=True)
class Census:
    """
    How many methods of a program fall into each output class.
    """
    type_a: int = 0
    """At most one output instruction with at most one variable."""
    type_b: int = 0
    """One output instruction with several variables."""
    type_c: int = 0
    """Several output instructions."""
    multiple_outputs: int = 0
    """Methods with more than one output instruction."""
    methods: int = 0

    def to_dict(self) -> dict:
        return {'A': self.type_a, 'B': self.type_b, 'C': self.type_c, 'multiple_outputs': self.multiple_outputs,
                'methods': self.methods}
