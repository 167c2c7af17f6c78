# graphs/models.py
"""
Data types of the method level graphs: the control flow graph over basic blocks, the program dependence graph and
the control dependence graph.

Statement ids refer to lang.Method statement ids. The synthetic id ENTRY (0) stands for the method entry, which
defines the parameters, this and the globals. EXIT (-1) only appears in the statement level flow graph.
"""
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx

from ..lang import Method, Symbol

ENTRY = 0
"""The synthetic entry node."""
EXIT = -1
"""The synthetic exit node of the statement flow graph."""


@dataclass(frozen=True)
class BasicBlock:
    """
    A maximal sequence of consecutive statements. Control enters only at the first statement and leaves only after
    the last one.
    """
    id: int
    """The block number, dense from 1 in textual order."""
    stmts: tuple[int, ...]
    """The statement ids of the block in execution order."""

    def __str__(self):
        return f'B{self.id}'

    @property
    def first(self) -> int:
        return self.stmts[0]

    @property
    def last(self) -> int:
        return self.stmts[-1]


class CfgEdge(NamedTuple):
    source: int
    target: int
    loopback: bool


class Cfg:
    """
    The control flow graph of one method.
    """
    method: Method
    """The method the graph was built for."""
    blocks: tuple[BasicBlock, ...]
    """The basic blocks, blocks[i] has the id i+1."""
    graph: nx.DiGraph
    """The block graph. Nodes are block ids, each edge carries a boolean loopback attribute."""
    flow: nx.DiGraph
    """The statement level flow graph including ENTRY and EXIT."""

    def __init__(self, method: Method, blocks: tuple[BasicBlock, ...], graph: nx.DiGraph, flow: nx.DiGraph):
        self.method = method
        self.blocks = blocks
        self.graph = graph
        self.flow = flow
        self._block_of = {s: b.id for b in blocks for s in b.stmts}

    def __repr__(self):
        return f'Cfg({self.method.qualified_name}, {len(self.blocks)} blocks)'

    @property
    def entry(self) -> int | None:
        """The id of the entry block, None for an empty method."""
        return self.blocks[0].id if self.blocks else None

    def block(self, block_id: int) -> BasicBlock:
        """
        :param block_id: The block id.
        :return: The basic block.
        :raises KeyError: If the graph has no such block.
        """
        if not 1 <= block_id <= len(self.blocks):
            raise KeyError(f'Unknown block B{block_id} in method "{self.method.qualified_name}".')
        return self.blocks[block_id - 1]

    def block_of(self, stmt_id: int) -> int:
        """
        :param stmt_id: A statement id.
        :return: The id of the block containing the statement.
        :raises KeyError: If the method has no such statement.
        """
        try:
            return self._block_of[stmt_id]
        except KeyError:
            raise KeyError(f'Unknown statement {stmt_id} in method "{self.method.qualified_name}".') from None

    def edges(self) -> set[CfgEdge]:
        """
        :return: All block edges with their loopback flag.
        """
        return {CfgEdge(u, v, d['loopback']) for u, v, d in self.graph.edges(data=True)}

    def statements_of(self, block_ids) -> set[int]:
        """
        :param block_ids: Any iterable of block ids.
        :return: The union of the statements of the blocks.
        """
        return {s for b in block_ids for s in self.block(b).stmts}


class DataEdge(NamedTuple):
    """The definition in source reaches the use of variable in target."""
    source: int
    target: int
    variable: str


@dataclass(frozen=True)
class DefUse:
    """
    Definitions and uses of one statement, as analysis keys.
    """
    defs: frozenset[str] = frozenset()
    """Variables the statement may define."""
    kills: frozenset[str] = frozenset()
    """Variables the statement definitely overwrites as a whole."""
    uses: frozenset[str] = frozenset()
    """Variables the statement reads."""
    mutated: frozenset[str] = frozenset()
    """Reference variables whose referenced state the statement changes."""


class Pdg:
    """
    The program dependence graph of one method. Nodes are the statement ids and ENTRY.

    Besides data and control edges the graph has declaration edges, from the declaration of a local to every other
    statement defining it.
    """
    method: Method
    """The method the graph was built for."""
    defuse: dict[int, DefUse]
    """Definitions and uses per statement id, ENTRY included."""
    symbols: dict[str, Symbol]
    """The symbol of every plain variable key."""
    data_edges: frozenset[DataEdge]
    control_edges: frozenset[tuple[int, int]]
    """(controller, controlled) pairs, ENTRY controls the top level statements."""
    decl_edges: frozenset[tuple[int, int, str]]
    """(declaration, defining statement, variable) triples."""
    graph: nx.MultiDiGraph
    """All edges, each with a kind attribute of data, control or decl and a variable attribute for data and decl."""

    def __init__(self, method: Method, defuse: dict[int, DefUse], symbols: dict[str, Symbol],
                 data_edges: frozenset[DataEdge], control_edges: frozenset[tuple[int, int]],
                 decl_edges: frozenset[tuple[int, int, str]]):
        self.method = method
        self.defuse = defuse
        self.symbols = symbols
        self.data_edges = data_edges
        self.control_edges = control_edges
        self.decl_edges = decl_edges
        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(defuse.keys())
        self.graph.add_edges_from((d, u, {'kind': 'data', 'variable': v}) for d, u, v in data_edges)
        self.graph.add_edges_from((p, c, {'kind': 'control'}) for p, c in control_edges)
        self.graph.add_edges_from((d, s, {'kind': 'decl', 'variable': v}) for d, s, v in decl_edges)
        self._parent = {c: p for p, c in control_edges}

    def __repr__(self):
        return (f'Pdg({self.method.qualified_name}, {len(self.data_edges)} data edges, '
                f'{len(self.control_edges)} control edges)')

    @property
    def nodes(self) -> list[int]:
        return sorted(self.defuse.keys())

    def defs(self, stmt_id: int) -> frozenset[str]:
        return self.defuse[stmt_id].defs

    def uses(self, stmt_id: int) -> frozenset[str]:
        return self.defuse[stmt_id].uses

    def mutated(self, stmt_id: int) -> frozenset[str]:
        return self.defuse[stmt_id].mutated

    def control_parent(self, stmt_id: int) -> int:
        """
        :param stmt_id: A statement id.
        :return: The controlling statement, ENTRY for top level statements.
        :raises KeyError: If the method has no such statement.
        """
        try:
            return self._parent[stmt_id]
        except KeyError:
            raise KeyError(f'Unknown statement {stmt_id} in method "{self.method.qualified_name}".') from None

    def incoming(self, stmt_id: int) -> list[tuple[int, str, str | None]]:
        """
        :param stmt_id: A statement id.
        :return: (source, kind, variable) for every edge entering the statement.
        """
        return [(d, attr['kind'], attr.get('variable')) for d, _, attr in self.graph.in_edges(stmt_id, data=True)]

    def is_reference(self, variable: str) -> bool:
        """
        :param variable: An analysis key.
        :return: True for composite field variables and variables of array or object type.
        """
        if '.' in variable:
            return True
        symbol = self.symbols.get(variable)
        return symbol is not None and symbol.type.is_reference

    def definitions_of(self, variable: str) -> list[int]:
        """
        :param variable: An analysis key.
        :return: The ids of all statements defining the variable, in id order. ENTRY is excluded.
        """
        return [s for s in self.nodes if s != ENTRY and variable in self.defuse[s].defs]


class Cdg:
    """
    The control dependence graph, the control edge projection of a Pdg rooted at ENTRY.
    """
    method: Method
    edges: frozenset[tuple[int, int]]
    graph: nx.DiGraph

    def __init__(self, method: Method, edges: frozenset[tuple[int, int]]):
        self.method = method
        self.edges = edges
        self.graph = nx.DiGraph()
        self.graph.add_node(ENTRY)
        self.graph.add_edges_from(edges)
        self._parent = {c: p for p, c in edges}

    def __repr__(self):
        return f'Cdg({self.method.qualified_name}, {len(self.edges)} edges)'

    def parent(self, stmt_id: int) -> int:
        """
        :param stmt_id: A statement id.
        :return: The CDG parent, ENTRY for top level statements.
        :raises KeyError: If the method has no such statement.
        """
        try:
            return self._parent[stmt_id]
        except KeyError:
            raise KeyError(f'Unknown statement {stmt_id} in method "{self.method.qualified_name}".') from None

    def children(self, node: int) -> set[int]:
        return set(self.graph.successors(node))

    def descendants(self, node: int) -> set[int]:
        """
        :param node: A statement id or ENTRY.
        :return: All statements transitively control dependent on node.
        """
        return nx.descendants(self.graph, node)
