# criteria/detect.py
"""
Detection of output instructions and derivation of the slicing criteria of a method.
"""
from functools import reduce
import logging

from ..graphs import Pdg, EffectAnalysis, ENTRY, root_key, access_path
from ..lang import (Program, Method, Expr, VarRef, FieldRef, Index, Assign, FieldAssign, Return, Print, Write,
                    CallStmt, walk, walk_expr, header_exprs)
from ..regions import RegionAnalysis, output_interval
from .models import OutputInstruction, SlicingCriterion, OutputSliceComputation


def read_variables(exprs: list[Expr]) -> tuple[str, ...]:
    """
    :param exprs: Expressions in evaluation order.
    :return: The variable keys read by the expressions in order of first appearance, without this.
    """
    seen = []
    for x in exprs:
        for e in walk_expr(x):
            key = None
            if isinstance(e, VarRef):
                key = root_key(e)
            elif isinstance(e, FieldRef):
                key = access_path(e)
            if key is not None and key != 'this' and key not in seen:
                seen.append(key)
    return tuple(seen)


def _escapes(target: Expr) -> bool:
    root = target
    while isinstance(root, (FieldRef, Index)):
        root = root.obj if isinstance(root, FieldRef) else root.array
    if not isinstance(root, VarRef) or root.symbol is None:
        return False
    if root.symbol.kind == 'global':
        return True
    return root.symbol.kind == 'this'


def classify_outputs(method: Method, program: Program, effects: EffectAnalysis | None = None) \
        -> list[OutputInstruction]:
    """
    Finds the statements of a method that send information outside the method body.

    - call-no-result: a call statement whose callee changes neither its receiver nor its arguments.
    - global-or-field-modify: an assignment to a global, to an element of a global array, or to a field of this or
      of a global object.
    - print-stream: print.
    - file-or-db-write: write.
    - return-stmt: return with a value.

    :param method: A resolved method.
    :param program: Its program.
    :param effects: A shared call effect cache.
    :return: The output instructions in id order.
    """
    effects = effects if effects is not None else EffectAnalysis(program)
    outputs = []
    for s in walk(method.body):
        category = None
        exprs = header_exprs(s)
        match s:
            case CallStmt(call=call):
                e = effects.of_call(call)
                if not (e.mutates_receiver or e.mutated_args):
                    category = 'call-no-result'
            case Assign(target=t, value=v) | FieldAssign(target=t, value=v):
                if _escapes(t):
                    category = 'global-or-field-modify'
                    exprs = [v] + ([t.index] if isinstance(t, Index) else [])
            case Print():
                category = 'print-stream'
            case Write():
                category = 'file-or-db-write'
            case Return(value=value):
                if value is not None:
                    category = 'return-stmt'
        if category is not None:
            outputs.append(OutputInstruction(s.id, category, read_variables(exprs)))
    logging.debug(f'Output instructions of "{method.qualified_name}": {[o.stmt_id for o in outputs]}')
    return outputs


def output_criteria(method: Method, outputs: list[OutputInstruction]) -> list[SlicingCriterion]:
    """
    :param method: The method.
    :param outputs: Its output instructions.
    :return: One criterion per output instruction and variable read by it.
    """
    return [SlicingCriterion(o.stmt_id, v, 'output-based') for o in outputs for v in o.variables]


def output_map(outputs: list[OutputInstruction]) -> dict[int, tuple[str, ...]]:
    """
    :param outputs: Output instructions.
    :return: Statement id -> variables read.
    """
    return {o.stmt_id: o.variables for o in outputs}


def node_criteria(method: Method, pdg: Pdg, ra: RegionAnalysis, variable: str,
                  outputs: list[OutputInstruction]) -> OutputSliceComputation:
    """
    Collects, for every output instruction of variable, the statements defining it after the previous output of
    the same variable, and intersects their boundary blocks.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param ra: Its region tables.
    :param variable: An output variable.
    :param outputs: All output instructions of the method.
    :return: The node criteria of the variable.
    :raises ValueError: If no output instruction reads the variable.
    """
    mapping = output_map(outputs)
    own = [o.stmt_id for o in outputs if variable in o.variables]
    if not own:
        raise ValueError(f'No output instruction of "{method.qualified_name}" reads "{variable}".')
    nodes, intersections = [], []
    for o in own:
        interval = output_interval(mapping, o, variable)
        defs = frozenset(s for s in interval if s in pdg.defuse and variable in pdg.defs(s))
        nodes.append(defs)
        boundaries = [ra.boundary_of(s) for s in sorted(defs)]
        intersections.append(frozenset(reduce(set.intersection, boundaries)) if boundaries else frozenset())
    return OutputSliceComputation(variable, tuple(own), tuple(nodes), tuple(intersections))


def other_criteria(method: Method, pdg: Pdg) -> list[SlicingCriterion]:
    """
    Derives the seeds of complete computation and object state slicing: every local variable at its last
    defining statement, and every reference whose state is changed at its last state changing statement.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :return: The criteria, complete computation first, each group ordered by statement id.
    """
    last_def, last_mutation = {}, {}
    for s in pdg.nodes:
        if s == ENTRY:
            continue
        for v in pdg.defs(s):
            symbol = pdg.symbols.get(v)
            if symbol is not None and symbol.kind == 'local':
                last_def[v] = s
        for v in pdg.mutated(s):
            last_mutation[v] = s
    complete = sorted(SlicingCriterion(s, v, 'complete-computation') for v, s in last_def.items())
    state = sorted(SlicingCriterion(s, v, 'object-state') for v, s in last_mutation.items())
    return complete + state


def method_type(outputs: list[OutputInstruction]) -> str:
    """
    Classifies a method by its outputs.

    :param outputs: The output instructions of the method.
    :return: A for at most one output instruction with at most one variable, B for a single output instruction
        with several variables, C for several output instructions.
    """
    if len(outputs) > 1:
        return 'C'
    if outputs and len(outputs[0].variables) > 1:
        return 'B'
    return 'A'
