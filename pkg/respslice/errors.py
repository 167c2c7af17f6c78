# errors.py
"""
Exceptions raised by respslice.
"""


class RespsliceError(Exception):
    """Base class of all respslice errors."""


class MimplSyntaxError(RespsliceError, ValueError):
    """
    The MIMPL source text could not be parsed.
    """
    line: int
    """The line of the offending token."""
    column: int
    """The column of the offending token."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f'{message} (line {line}, column {column})')
        self.line = line
        self.column = column


class NameResolutionError(RespsliceError):
    """
    An identifier is undeclared or declared twice in the same scope.
    """
    line: int
    """The line of the offending identifier."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f'{message} (line {line})')
        self.line = line


class MimplTypeError(RespsliceError, TypeError):
    """
    A program does not type-check.
    """
    line: int
    """The line of the offending construct."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f'{message} (line {line})')
        self.line = line


class DuplicateMethodError(RespsliceError):
    """
    Two methods of one program share a name.
    """

    def __init__(self, name: str):
        super().__init__(f'The method "{name}" is declared more than once.')
        self.name = name


class ExtractionError(RespsliceError):
    """
    A candidate could not be turned into an extract method refactoring.
    """


class RuleRejectedError(RespsliceError):
    """
    A candidate that failed at least one rule was applied without force.
    """

    def __init__(self, verdicts: list):
        reasons = '; '.join(f'rule {v.rule_id}: {v.reason}' for v in verdicts)
        super().__init__(f'The candidate was rejected: {reasons}')
        self.verdicts = verdicts


class CorpusMismatchError(RespsliceError, KeyError):
    """
    Suggestions reference a method that has no ground truth.
    """

    def __init__(self, method: str):
        super().__init__(f'No ground truth for method "{method}".')
        self.method = method

    def __str__(self):
        return self.args[0]
