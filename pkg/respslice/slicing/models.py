# slicing/models.py
"""
Slices and extract method candidates.
"""
from dataclasses import dataclass, field

from ..criteria import SlicingCriterion


@dataclass(frozen=True)
class Slice:
    """
    A backward slice, possibly limited to a block based region.
    """
    criteria: tuple[SlicingCriterion, ...]
    """The criteria the slice was computed from."""
    anchor: int | None
    """The block whose region bounds the slice. None for unrestricted slices."""
    statements: frozenset[int]
    """The statement ids of the slice."""
    variable: str
    """The variable the slice is computed for."""

    def __len__(self):
        return len(self.statements)

    def to_dict(self) -> dict:
        return {'criteria': [c.to_dict() for c in self.criteria],
                'region': f'B{self.anchor}' if self.anchor is not None else None,
                'statements': sorted(self.statements),
                'variable': self.variable}


@dataclass(frozen=True)
class ExtractCandidate:
    """
    A slice turned into an extract method opportunity.

    The extracted statements move to the new method, the duplicated ones are copied into it and stay in the
    original method as well.
    """
    method: str
    """The qualified name of the method the candidate belongs to."""
    slice: Slice
    algorithm: str
    """One of output-based, complete-computation or object-state."""
    extracted: frozenset[int]
    duplicated: frozenset[int]
    remaining: frozenset[int]
    """All statements of the method except the extracted ones."""
    output_stmt: int | None = None
    """The output instruction the candidate was computed for."""
    params: tuple[str, ...] = field(default=())
    """The parameters of the new method, filled in by signature inference."""
    returns: tuple[str, str] | None = None
    """(variable, type) returned by the new method, filled in by signature inference."""

    @property
    def variable(self) -> str:
        return self.slice.variable

    @property
    def anchor(self) -> int | None:
        return self.slice.anchor

    @property
    def statements(self) -> frozenset[int]:
        """The statements of the new method: extracted and duplicated."""
        return self.extracted | self.duplicated

    @property
    def duplication_ratio(self) -> float:
        return len(self.duplicated) / len(self.statements) if self.statements else 0.0

    def sort_key(self) -> tuple:
        return (self.output_stmt if self.output_stmt is not None else 0, self.anchor or 0, self.algorithm,
                self.variable, sorted(self.statements))

    def to_dict(self) -> dict:
        return {'method': self.method,
                'algorithm': self.algorithm,
                'variable': self.variable,
                'output': self.output_stmt,
                'region': f'B{self.anchor}' if self.anchor is not None else None,
                'extracted': sorted(self.extracted),
                'duplicated': sorted(self.duplicated),
                'params': list(self.params),
                'returns': list(self.returns) if self.returns is not None else None}
