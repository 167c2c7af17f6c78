# interp/models.py
"""
Runtime values and observable traces of MIMPL runs.
"""
from dataclasses import dataclass, field
import json

EVENT_KINDS = ('print', 'file-write', 'global-final-state', 'param-final-state', 'return-value', 'error', 'timeout')
"""The kinds of trace events."""


class MimplObject:
    """
    An instance of a MIMPL class. Objects compare by identity, like all references.
    """
    cls: str
    """The class name."""
    fields: dict[str, object]
    """Field name -> value."""

    def __init__(self, cls: str, fields: dict[str, object]):
        self.cls = cls
        self.fields = fields

    def __repr__(self):
        return f'MimplObject({self.cls}, {self.fields!r})'


def render(value, depth: int = 0) -> str:
    """
    :param value: A runtime value.
    :param depth: The current nesting depth. Nested references deeper than four levels are cut.
    :return: The text print produces for the value.
    """
    if depth > 4:
        return '...'
    match value:
        case bool():
            return 'true' if value else 'false'
        case None:
            return 'null'
        case list():
            return '[' + ', '.join(render(v, depth + 1) for v in value) + ']'
        case MimplObject(cls=cls, fields=fields):
            return cls + '{' + ', '.join(f'{k}={render(v, depth + 1)}' for k, v in fields.items()) + '}'
    return str(value)


@dataclass(frozen=True)
class TraceEvent:
    """
    One observable effect of a run.
    """
    kind: str
    """One of EVENT_KINDS."""
    payload: str | tuple[str, str] | None = None
    """The printed text; (file, text) for file writes; (name, value) for final states; the rendered return value;
    the error message."""

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f'Unknown trace event kind "{self.kind}".')

    def to_dict(self) -> dict:
        d = {'kind': self.kind}
        if isinstance(self.payload, tuple):
            d['name'], d['value'] = self.payload
        elif self.payload is not None:
            d['value'] = self.payload
        return d


@dataclass(frozen=True)
class OutputTrace:
    """
    The ordered observable effects of running one method on one input.
    """
    events: tuple[TraceEvent, ...] = field(default=())

    def __len__(self):
        return len(self.events)

    @property
    def timed_out(self) -> bool:
        return bool(self.events) and self.events[-1].kind == 'timeout'

    @property
    def failed(self) -> bool:
        return any(e.kind == 'error' for e in self.events)

    def printed(self) -> list[str]:
        """
        :return: The texts of all print events in order.
        """
        return [e.payload for e in self.events if e.kind == 'print']

    def files(self) -> dict[str, list[str]]:
        """
        :return: File name -> texts written to it in order.
        """
        files = {}
        for e in self.events:
            if e.kind == 'file-write':
                files.setdefault(e.payload[0], []).append(e.payload[1])
        return files

    def to_json_lines(self) -> str:
        return '\n'.join(json.dumps(e.to_dict()) for e in self.events)


@dataclass(frozen=True)
class EquivalenceResult:
    """
    The outcome of comparing two programs on a set of inputs. Truthy exactly when all traces agree.
    """
    equivalent: bool
    inputs_checked: int
    divergent_input: tuple | None = None
    """The rendered arguments of the first input with different traces."""
    position: int | None = None
    """The index of the first differing event."""
    expected: TraceEvent | None = None
    """The event of the first program at position, None if its trace ended earlier."""
    actual: TraceEvent | None = None
    """The event of the second program at position, None if its trace ended earlier."""

    def __bool__(self):
        return self.equivalent

    def report(self) -> str:
        """
        :return: A one line description of the first divergence.
        """
        if self.equivalent:
            return f'equivalent on {self.inputs_checked} inputs'
        return (f'traces differ on input ({", ".join(self.divergent_input)}) at event {self.position}: '
                f'expected {self.expected}, got {self.actual}')
