# regions/models.py
"""
The region tables of one method.
"""
import json

from ..graphs import Cfg, Cdg
from .analysis import reachable_blocks, dominated_blocks, boundary_blocks, region


class RegionAnalysis:
    """
    Reach, Dom, boundary and region tables of a method, computed once from its CFG and CDG.
    """
    cfg: Cfg
    cdg: Cdg
    reach: dict[int, set[int]]
    """Block id -> Reach(block)."""
    dom: dict[int, set[int]]
    """Block id -> Dom(block)."""
    boundary: dict[int, set[int]]
    """Statement id -> boundary blocks of the statement."""
    region: dict[int, set[int]]
    """Block id -> R(block)."""

    def __init__(self, cfg: Cfg, cdg: Cdg):
        self.cfg = cfg
        self.cdg = cdg
        self.reach = {b.id: reachable_blocks(cfg, b.id) for b in cfg.blocks}
        self.dom = {b.id: dominated_blocks(cdg, cfg, b.id) for b in cfg.blocks}
        self.boundary = {s: boundary_blocks(cfg, cdg, s, self.reach, self.dom)
                         for b in cfg.blocks for s in b.stmts}
        self.region = {b.id: region(cfg, b.id, self.reach) for b in cfg.blocks}

    def __repr__(self):
        return f'RegionAnalysis({self.cfg.method.qualified_name}, {len(self.reach)} blocks)'

    def boundary_of(self, stmt_id: int) -> set[int]:
        """
        :param stmt_id: A statement id.
        :return: The boundary blocks of the statement.
        :raises KeyError: If the method has no such statement.
        """
        try:
            return self.boundary[stmt_id]
        except KeyError:
            raise KeyError(f'Unknown statement {stmt_id} in method "{self.cfg.method.qualified_name}".') from None

    def region_of(self, block_id: int) -> set[int]:
        """
        :param block_id: A block id.
        :return: R(block).
        :raises KeyError: If the method has no such block.
        """
        try:
            return self.region[block_id]
        except KeyError:
            raise KeyError(f'Unknown block B{block_id} in method "{self.cfg.method.qualified_name}".') from None

    def to_dict(self) -> dict:
        """
        :return: The four tables as a JSON serializable dictionary with sorted lists. Block keys are written as B<n>.
        """
        def blocks(ids):
            return [f'B{b}' for b in sorted(ids)]

        return {
            'method': self.cfg.method.qualified_name,
            'blocks': {f'B{b.id}': list(b.stmts) for b in self.cfg.blocks},
            'reach': {f'B{b}': blocks(r) for b, r in self.reach.items()},
            'dom': {f'B{b}': blocks(d) for b, d in self.dom.items()},
            'boundary': {str(s): blocks(bs) for s, bs in sorted(self.boundary.items())},
            'region': {f'B{b}': sorted(r) for b, r in self.region.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
