# analysis.py
"""
Bundles every per-method analysis result the rules, the extractor and the pipeline work on.
"""
from functools import cached_property
import logging

import networkx as nx

from .criteria import OutputInstruction, SlicingCriterion, classify_outputs, method_type
from .graphs import (Cfg, Pdg, Cdg, EffectAnalysis, ENTRY, build_cfg, build_pdg, build_cdg, definitely_assigned,
                     dominates)
from .lang import Program, Method, lexical_parents, nesting_levels
from .regions import RegionAnalysis
from .slicing import backward_slice


class MethodAnalysis:
    """
    The graphs, regions and outputs of one method of a program. Derived tables are computed on first access.
    """
    program: Program
    """The resolved program."""
    method: Method
    """The analysed method."""
    effects: EffectAnalysis
    """The call effect cache shared by all methods of the program."""
    cfg: Cfg
    pdg: Pdg
    cdg: Cdg
    regions: RegionAnalysis
    outputs: list[OutputInstruction]
    """The output instructions in statement order."""

    def __init__(self, program: Program, method: Method, effects: EffectAnalysis | None = None):
        self.program = program
        self.method = method
        self.effects = effects if effects is not None else EffectAnalysis(program)
        self.cfg = build_cfg(method)
        self.pdg = build_pdg(method, self.cfg, program, self.effects)
        self.cdg = build_cdg(self.pdg)
        self.regions = RegionAnalysis(self.cfg, self.cdg)
        self.outputs = classify_outputs(method, program, self.effects)
        logging.debug(f'Analysed "{method.qualified_name}": {method.stmt_count} statements, '
                      f'{len(self.cfg.blocks)} blocks, {len(self.outputs)} outputs.')

    @property
    def method_type(self) -> str:
        return method_type(self.outputs)

    @cached_property
    def parents(self) -> dict[int, int]:
        """Statement id -> id of the enclosing compound statement, 0 for the method body."""
        return lexical_parents(self.method.body)

    @cached_property
    def levels(self) -> dict[int, int]:
        """Statement id -> nesting level."""
        return nesting_levels(self.method.body)

    @cached_property
    def assigned(self) -> dict[int, frozenset[str]]:
        """Statement id -> local keys definitely assigned before it."""
        return definitely_assigned(self.cfg, self.pdg)

    @cached_property
    def forward_flow(self) -> nx.DiGraph:
        """The statement flow graph without loop back edges."""
        idom = nx.immediate_dominators(self.cfg.flow, ENTRY)
        back = [(a, b) for a, b in self.cfg.flow.edges if dominates(idom, b, a)]
        return nx.restricted_view(self.cfg.flow, [], back)

    @cached_property
    def output_slices(self) -> dict[int, frozenset[int]]:
        """
        Output statement -> the unrestricted backward slice of all variables it reads, the output statement
        itself excluded.
        """
        slices = {}
        for o in self.outputs:
            statements = set()
            for v in o.variables or ('',):
                statements |= backward_slice(self.pdg, SlicingCriterion(o.stmt_id, v)).statements
            slices[o.stmt_id] = frozenset(statements - {o.stmt_id})
        return slices


def analyze(program: Program, name: str, effects: EffectAnalysis | None = None) -> MethodAnalysis:
    """
    :param program: A resolved program.
    :param name: The qualified name of a method.
    :return: The analysis of the method.
    :raises KeyError: If the program has no such method.
    """
    return MethodAnalysis(program, program.method(name), effects)
