# criteria/models.py
"""
Output instructions and slicing criteria.
"""
from dataclasses import dataclass

CATEGORIES = ('call-no-result', 'global-or-field-modify', 'print-stream', 'file-or-db-write', 'return-stmt')
"""The categories of output instructions."""

ORIGINS = ('output-based', 'complete-computation', 'object-state')
"""The slicing algorithms a criterion can originate from."""


@dataclass(frozen=True)
class OutputInstruction:
    """
    A statement sending information outside the method body.
    """
    stmt_id: int
    category: str
    """One of CATEGORIES."""
    variables: tuple[str, ...]
    """The variable keys read by the instruction, in order of first appearance. Empty for literal only outputs."""

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f'Unknown output category "{self.category}".')

    def to_dict(self) -> dict:
        return {'stmt': self.stmt_id, 'category': self.category, 'variables': list(self.variables)}


@dataclass(frozen=True, order=True)
class SlicingCriterion:
    """
    The slicing criterion C(x, v): statement x and variable v.
    """
    stmt_id: int
    variable: str
    origin: str = 'output-based'
    """One of ORIGINS."""

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise ValueError(f'Unknown criterion origin "{self.origin}".')

    def __str__(self):
        return f'({self.stmt_id}, {self.variable})'

    def to_dict(self) -> dict:
        return {'stmt': self.stmt_id, 'variable': self.variable, 'origin': self.origin}


@dataclass(frozen=True)
class OutputSliceComputation:
    """
    The node criteria of one output variable: for each of its output instructions, the statements defining the
    variable since the previous one, and the intersection of their boundary blocks.
    """
    output_variable: str
    outputs: tuple[int, ...]
    """The output instructions reading the variable, in id order."""
    node_criteria: tuple[frozenset[int], ...]
    """One set of defining statements per output instruction."""
    boundary_intersection: tuple[frozenset[int], ...]
    """One set of block ids per output instruction. Empty if the node criteria are empty."""

    def to_dict(self) -> dict:
        return {'variable': self.output_variable,
                'outputs': list(self.outputs),
                'node_criteria': [sorted(n) for n in self.node_criteria],
                'boundary_intersection': [[f'B{b}' for b in sorted(i)] for i in self.boundary_intersection]}
