# extractor/models.py
"""
The result of applying an extract method candidate.
"""
from dataclasses import dataclass, field

from ..lang import Program, Method, unparse

LOCATIONS = ('remaining', 'extracted', 'both')
"""Where an original statement ends up."""


@dataclass(frozen=True)
class RefactoredProgram:
    """
    A program after one extract method refactoring.
    """
    program: Program
    """The rewritten, resolved program."""
    method: str
    """The qualified name of the refactored method."""
    new_method_name: str
    """The qualified name of the extracted method."""
    call_site_stmt_id: int
    """The id of the statement calling the new method, in the rewritten method."""
    mapping: dict[int, str] = field(default_factory=dict)
    """Original statement id -> one of LOCATIONS."""

    @property
    def remaining_method(self) -> Method:
        return self.program.method(self.method)

    @property
    def new_method(self) -> Method:
        return self.program.method(self.new_method_name)

    def source(self) -> str:
        """
        :return: The MIMPL text of the rewritten program.
        """
        return unparse(self.program)

    def to_dict(self) -> dict:
        return {'method': self.method,
                'new_method': self.new_method_name,
                'call_site': self.call_site_stmt_id,
                'mapping': {str(k): v for k, v in sorted(self.mapping.items())}}
