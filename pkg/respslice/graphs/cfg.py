# graphs/cfg.py
"""
Control flow graph construction with the block partitioning algorithm.
"""
import logging

import networkx as nx

from ..lang import Method, Stmt, If, While, For, Block, Return, walk
from .models import BasicBlock, Cfg, ENTRY, EXIT


def statement_flow(method: Method) -> nx.DiGraph:
    """
    Builds the statement level flow graph. A compound statement is the node of its header; loops branch from their
    header into the body and out of the loop, and the last statements of a loop body lead back to the header.

    :param method: A numbered method.
    :return: A graph over the statement ids, ENTRY and EXIT.
    """
    flow = nx.DiGraph()
    flow.add_nodes_from([ENTRY, EXIT])

    def wire_list(stmts: tuple[Stmt, ...], follow: int) -> int:
        nxt = follow
        for s in reversed(stmts):
            nxt = wire(s, nxt)
        return nxt

    def wire(s: Stmt, follow: int) -> int:
        flow.add_node(s.id)
        match s:
            case If(then=then, orelse=orelse):
                flow.add_edge(s.id, wire_list(then, follow))
                flow.add_edge(s.id, wire_list(orelse, follow) if orelse is not None else follow)
            case While(body=body) | For(body=body):
                flow.add_edge(s.id, wire_list(body, s.id))
                flow.add_edge(s.id, follow)
            case Block(body=body):
                flow.add_edge(s.id, wire_list(body, follow))
            case Return():
                flow.add_edge(s.id, EXIT)
            case _:
                flow.add_edge(s.id, follow)
        return s.id

    flow.add_edge(ENTRY, wire_list(method.body, EXIT))
    return flow


def _partition(method: Method, flow: nx.DiGraph) -> list[list[int]]:
    blocks = []
    for s in walk(method.body):
        preds = list(flow.predecessors(s.id))
        joins = (blocks and len(preds) == 1 and preds[0] == blocks[-1][-1] and preds[0] != ENTRY
                 and flow.out_degree(preds[0]) == 1)
        if joins:
            blocks[-1].append(s.id)
        else:
            blocks.append([s.id])
    return blocks


def dominates(idom: dict[int, int], a: int, b: int) -> bool:
    """
    :param idom: Immediate dominators as returned by networkx.immediate_dominators.
    :param a: A node.
    :param b: A node.
    :return: True if a dominates b.
    """
    node = b
    while True:
        if node == a:
            return True
        parent = idom.get(node)
        if parent is None or parent == node:
            return False
        node = parent


def build_cfg(method: Method) -> Cfg:
    """
    Partitions a method into maximal basic blocks and connects them.

    An edge is a loopback edge exactly when its target dominates its source.

    :param method: A numbered method.
    :return: The control flow graph.
    """
    flow = statement_flow(method)
    blocks = tuple(BasicBlock(i + 1, tuple(stmts)) for i, stmts in enumerate(_partition(method, flow)))
    first_of = {b.first: b.id for b in blocks}
    last_of = {b.last: b.id for b in blocks}
    graph = nx.DiGraph()
    graph.add_nodes_from(b.id for b in blocks)
    for u, v in flow.edges:
        if u in last_of and v in first_of:
            graph.add_edge(last_of[u], first_of[v])
    if blocks:
        idom = nx.immediate_dominators(graph, blocks[0].id)
        for u, v in graph.edges:
            graph.edges[u, v]['loopback'] = dominates(idom, v, u)
    logging.debug(f'CFG of "{method.qualified_name}": {len(blocks)} blocks, {graph.number_of_edges()} edges.')
    return Cfg(method, blocks, graph, flow)
