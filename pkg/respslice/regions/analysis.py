# regions/analysis.py
"""
Reachable blocks, dominated blocks, boundary blocks and block based regions.
"""
from typing import Collection, Mapping

import networkx as nx

from ..graphs import Cfg, Cdg, ENTRY


def _check_block(cfg: Cfg, b: int):
    cfg.block(b)


def reachable_blocks(cfg: Cfg, b: int) -> set[int]:
    """
    Computes Reach(b), the forward closure of b without traversing loopback edges.

    :param cfg: The control flow graph.
    :param b: A block id.
    :return: The reachable block ids, b included.
    :raises KeyError: If the graph has no block b.
    """
    _check_block(cfg, b)
    forward = nx.subgraph_view(cfg.graph, filter_edge=lambda u, v: not cfg.graph.edges[u, v]['loopback'])
    return nx.descendants(forward, b) | {b}


def dominated_blocks(cdg: Cdg, cfg: Cfg, b: int) -> set[int]:
    """
    Computes Dom(b): the blocks whose statements are control dependent, directly or transitively, on the control
    parent of the statements of b. For blocks controlled by the method entry this is every block.

    :param cdg: The control dependence graph.
    :param cfg: The control flow graph.
    :param b: A block id.
    :return: The dominated block ids, b included.
    :raises KeyError: If the graph has no block b.
    """
    parent = cdg.parent(cfg.block(b).first)
    if parent == ENTRY:
        return {block.id for block in cfg.blocks}
    controlled = cdg.descendants(parent)
    return {block.id for block in cfg.blocks if block.first in controlled}


def boundary_blocks(cfg: Cfg, cdg: Cdg, x: int, reach: Mapping[int, set[int]] | None = None,
                    dom: Mapping[int, set[int]] | None = None) -> set[int]:
    """
    Computes the boundary blocks of a statement: all B with block(x) in Reach(B) and Dom(B).

    :param cfg: The control flow graph.
    :param cdg: The control dependence graph.
    :param x: A statement id.
    :param reach: Precomputed Reach table.
    :param dom: Precomputed Dom table.
    :return: The boundary block ids.
    :raises KeyError: If the method has no statement x.
    """
    home = cfg.block_of(x)
    result = set()
    for block in cfg.blocks:
        r = reach[block.id] if reach is not None else reachable_blocks(cfg, block.id)
        d = dom[block.id] if dom is not None else dominated_blocks(cdg, cfg, block.id)
        if home in r and home in d:
            result.add(block.id)
    return result


def region(cfg: Cfg, b: int, reach: Mapping[int, set[int]] | None = None) -> set[int]:
    """
    Computes R(b), the statements of all blocks in Reach(b).

    :param cfg: The control flow graph.
    :param b: A block id.
    :param reach: Precomputed Reach table.
    :return: The statement ids of the region.
    :raises KeyError: If the graph has no block b.
    """
    _check_block(cfg, b)
    return cfg.statements_of(reach[b] if reach is not None else reachable_blocks(cfg, b))


def output_interval(outputs: Mapping[int, Collection[str]], target: int, variable: str) -> range:
    """
    :param outputs: The output instructions of a method, statement id -> variables read.
    :param target: The id of one output instruction.
    :param variable: An output variable of target.
    :return: The statement ids strictly between the previous output of variable and target. If there is no previous
        output, the interval starts at 1.
    :raises ValueError: If target is not an output instruction.
    """
    if target not in outputs:
        raise ValueError(f'Statement {target} is not an output instruction.')
    previous = [o for o in outputs if o < target and variable in outputs[o]]
    return range(max(previous) + 1 if previous else 1, target)


def inter_output_restrict(region_: set[int], outputs: Mapping[int, Collection[str]], target: int,
                          variable: str) -> set[int]:
    """
    Limits a region to the statements between target and the previous output instruction of the same variable.

    :param region_: A region.
    :param outputs: The output instructions of the method, statement id -> variables read.
    :param target: The output instruction.
    :param variable: The output variable.
    :return: The restricted region.
    :raises ValueError: If target is not an output instruction.
    """
    interval = output_interval(outputs, target, variable)
    return {s for s in region_ if s in interval}
