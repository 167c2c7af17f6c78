# slicing/slicer.py
"""
Backward slicing, block based slicing and the three candidate generating algorithms: output based slicing,
complete computation slicing and object state slicing.
"""
import logging
from typing import Iterable

from ..criteria import (SlicingCriterion, OutputInstruction, node_criteria, other_criteria, output_map)
from ..graphs import Pdg, ENTRY
from ..lang import Method
from ..regions import RegionAnalysis, inter_output_restrict
from .models import Slice, ExtractCandidate


def _closure(pdg: Pdg, start: Iterable[int], region: set[int] | None, skip=None) -> set[int]:
    """
    Collects all statements reaching start over data, control and declaration edges.

    :param start: The statements to start from, part of the result.
    :param region: The statements the closure may enter. None for the whole method.
    :param skip: Optional predicate (source, target, kind, variable) -> bool for edges not to follow.
    """
    result = set(start)
    stack = list(result)
    while stack:
        u = stack.pop()
        for d, kind, var in pdg.incoming(u):
            if d == ENTRY or d in result or (region is not None and d not in region):
                continue
            if skip is not None and skip(d, u, kind, var):
                continue
            result.add(d)
            stack.append(d)
    return result


def backward_slice(pdg: Pdg, criterion: SlicingCriterion, region: set[int] | None = None,
                   follow_all: bool | None = None, anchor: int | None = None) -> Slice:
    """
    Computes the statements affecting the value of the criterion variable at the criterion statement.

    If the criterion statement does not define the variable, only the data edges of the variable and the control
    edges enter the slice at the criterion statement. All other statements follow all incoming edges.

    :param pdg: The program dependence graph.
    :param criterion: The slicing criterion.
    :param region: The statements the slice is limited to. None for the whole method.
    :param follow_all: Forces following all edges at the criterion statement.
    :param anchor: The block the region belongs to.
    :return: The slice, the criterion statement included.
    :raises KeyError: If the method has no criterion statement.
    :raises ValueError: If the criterion statement lies outside the region.
    """
    x, v = criterion.stmt_id, criterion.variable
    if x not in pdg.defuse or x == ENTRY:
        raise KeyError(f'Unknown statement {x} in method "{pdg.method.qualified_name}".')
    if region is not None and x not in region:
        raise ValueError(f'The criterion {criterion} lies outside the region.')
    if follow_all is None:
        follow_all = v in pdg.defs(x)
    start = {x}
    for d, kind, var in pdg.incoming(x):
        if d == ENTRY or (region is not None and d not in region):
            continue
        if follow_all or kind == 'control' or (kind == 'data' and var == v):
            start.add(d)
    seeds = start - {x}
    statements = _closure(pdg, seeds, region) | {x}
    return Slice((criterion,), anchor, frozenset(statements), v)


def block_based_slices(pdg: Pdg, ra: RegionAnalysis, criterion: SlicingCriterion) -> list[Slice]:
    """
    Expands a criterion in the region of each of its boundary blocks.

    :param pdg: The program dependence graph.
    :param ra: The region tables.
    :param criterion: The slicing criterion.
    :return: One slice per boundary block, ordered by block id.
    """
    return [backward_slice(pdg, criterion, ra.region_of(b), anchor=b)
            for b in sorted(ra.boundary_of(criterion.stmt_id))]


def delivered(pdg: Pdg, source: int, variable: str, candidate_variable: str) -> bool:
    """
    Tells whether a value flowing out of a candidate reaches the rest of the method without duplication: through
    the return value of the new method, or through a shared reference whose state the source statement changes.

    :param pdg: The program dependence graph.
    :param source: The defining statement inside the candidate.
    :param variable: The variable of the data edge.
    :param candidate_variable: The slice variable of the candidate.
    """
    if variable == candidate_variable:
        return True
    if not pdg.is_reference(variable):
        return False
    mutated = pdg.mutated(source)
    return variable in mutated or variable.split('.')[0] in mutated


def partition_duplicated(method: Method, pdg: Pdg, statements: set[int] | frozenset[int],
                         variable: str | None = None) -> tuple[frozenset[int], frozenset[int]]:
    """
    Splits the statements of a candidate into extracted and duplicated ones. A statement is duplicated when some
    statement outside the candidate depends on it, directly or transitively.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param statements: The candidate statements.
    :param variable: The slice variable. Its values are returned by the new method and need no duplication.
    :return: (extracted, duplicated).
    """
    inside = set(statements)
    outside = {s.id for s in method.statements()} - inside

    def skip(d, u, kind, var):
        return (kind == 'data' and d in inside and u not in inside
                and variable is not None and delivered(pdg, d, var, variable))

    needed = _closure(pdg, outside, None, skip)
    duplicated = frozenset(inside & needed)
    return frozenset(inside - duplicated), duplicated


def make_candidate(method: Method, pdg: Pdg, slice_: Slice, algorithm: str,
                   output: OutputInstruction | None = None, region: set[int] | None = None) -> ExtractCandidate:
    """
    Packages a slice as an extract method candidate. The output statement of a non return output instruction joins
    the candidate together with its control and data predecessors inside the region.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param slice_: The slice.
    :param algorithm: The generating algorithm.
    :param output: The output instruction the slice was computed for.
    :param region: The statements the slice was limited to. None for the whole method.
    :return: The candidate.
    """
    statements = set(slice_.statements)
    if output is not None and output.category != 'return-stmt':
        statements |= _closure(pdg, {output.stmt_id}, region)
    extracted, duplicated = partition_duplicated(method, pdg, statements, slice_.variable)
    all_ids = {s.id for s in method.statements()}
    return ExtractCandidate(method.qualified_name, slice_, algorithm, extracted, duplicated,
                            frozenset(all_ids - extracted), output.stmt_id if output is not None else None)


def output_based_slicing(method: Method, pdg: Pdg, ra: RegionAnalysis,
                         outputs: list[OutputInstruction]) -> list[ExtractCandidate]:
    """
    For every output variable and every output instruction reading it: collects the node criteria since the
    previous output of the variable, and for every block in the intersection of their boundary blocks, unites the
    backward slices of the node criteria within the block region limited to the statements between the two
    output instructions. Each union is one candidate. Candidates of the same output instruction with the same
    statements as one of a more inner block or of an earlier variable are dropped.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param ra: Its region tables.
    :param outputs: Its output instructions.
    :return: The candidates ordered by output statement and region.
    """
    mapping = output_map(outputs)
    by_id = {o.stmt_id: o for o in outputs}
    variables = []
    for o in outputs:
        variables += [v for v in o.variables if v not in variables]
    candidates = []
    seen: set[tuple[int, frozenset[int]]] = set()
    for v in variables:
        computation = node_criteria(method, pdg, ra, v, outputs)
        for o, nodes, blocks in zip(computation.outputs, computation.node_criteria,
                                    computation.boundary_intersection):
            for b in sorted(blocks, reverse=True):
                region_ = inter_output_restrict(ra.region_of(b), mapping, o, v)
                criteria = tuple(SlicingCriterion(d, v) for d in sorted(nodes))
                statements = set()
                for c in criteria:
                    statements |= backward_slice(pdg, c, region_).statements
                candidate = make_candidate(method, pdg, Slice(criteria, b, frozenset(statements), v),
                                           'output-based', by_id[o], region_)
                key = (o, candidate.statements)
                if key not in seen:
                    seen.add(key)
                    candidates.append(candidate)
    candidates.sort(key=ExtractCandidate.sort_key)
    logging.debug(f'Output based slicing of "{method.qualified_name}": {len(candidates)} candidates.')
    return candidates


def complete_computation_slices(method: Method, pdg: Pdg, ra: RegionAnalysis) -> list[ExtractCandidate]:
    """
    Builds candidates from the block based slices of every local variable at its last definition.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param ra: Its region tables.
    :return: The candidates ordered by criterion and region.
    """
    candidates = []
    for c in other_criteria(method, pdg):
        if c.origin != 'complete-computation':
            continue
        for s in block_based_slices(pdg, ra, c):
            candidates.append(make_candidate(method, pdg, s, 'complete-computation'))
    return candidates


def object_state_slices(method: Method, pdg: Pdg, ra: RegionAnalysis) -> list[ExtractCandidate]:
    """
    Builds candidates for every reference whose state the method changes: at each boundary block of the last
    state changing statement, the slice unites the backward slices of all state changing statements of the
    reference in the block region.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param ra: Its region tables.
    :return: The candidates ordered by criterion and region.
    """
    candidates = []
    for c in other_criteria(method, pdg):
        if c.origin != 'object-state':
            continue
        for b in sorted(ra.boundary_of(c.stmt_id)):
            region_ = ra.region_of(b)
            seeds = [s for s in sorted(region_) if c.variable in pdg.mutated(s)]
            statements = set()
            for s in seeds:
                statements |= backward_slice(pdg, SlicingCriterion(s, c.variable, 'object-state'), region_,
                                             follow_all=True).statements
            slice_ = Slice((c,), b, frozenset(statements), c.variable)
            candidates.append(make_candidate(method, pdg, slice_, 'object-state'))
    return candidates


def variable_union_slice(method: Method, pdg: Pdg, ra: RegionAnalysis, variable: str, block: int,
                         outputs: list[OutputInstruction]) -> Slice:
    """
    Unites the slices of all definitions of a variable across all its output intervals within one block region,
    the way a complete computation slice without output boundaries covers a variable.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param ra: Its region tables.
    :param variable: The output variable.
    :param block: The block whose region bounds the slice.
    :param outputs: The output instructions of the method.
    :return: The united slice.
    """
    computation = node_criteria(method, pdg, ra, variable, outputs)
    region_ = ra.region_of(block)
    criteria = tuple(SlicingCriterion(d, variable, 'complete-computation')
                     for nodes in computation.node_criteria for d in sorted(nodes) if d in region_)
    statements = set()
    for c in criteria:
        statements |= backward_slice(pdg, c, region_).statements
    return Slice(criteria, block, frozenset(statements), variable)
