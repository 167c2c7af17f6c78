# extractor/rewrite.py
"""
Turns an extract method candidate into a rewritten program.

The new method receives the candidate statements (extracted and duplicated) in their original structure. Compound
statements left outside the candidate are dropped around their kept children when they enclose the call site as well,
bare blocks are kept for their scope.
The original method loses the extracted statements, and the call takes the place of the first of them.
"""
from dataclasses import replace
import logging

from ..analysis import MethodAnalysis
from ..errors import ExtractionError, RespsliceError
from ..lang import (Program, Method, Param, Stmt, VarDecl, Assign, CallStmt, Return, VarRef, Call, If, While, For,
                    Block, VOID, parse, unparse, walk, calls_of)
from ..rules import free_variables
from ..slicing import ExtractCandidate
from .models import RefactoredProgram


def _name(key: str) -> str:
    return key.split('@')[0]


def name_method(candidate: ExtractCandidate, program: Program | None = None) -> str:
    """
    Names the new method after the slice variable and the output instruction (or criterion statement) of the
    candidate.

    :param candidate: The candidate.
    :param program: If given, a numeric suffix avoids names the program already uses.
    :return: The method name, e.g. extracted_ArrayIn_8.
    """
    anchor = candidate.output_stmt
    if anchor is None:
        anchor = candidate.slice.criteria[0].stmt_id if candidate.slice.criteria else 0
    variable = '_'.join(_name(part) for part in candidate.variable.split('.'))
    base = f'extracted_{variable}_{anchor}'
    if program is None:
        return base
    taken = {m.name for m in program.all_methods()}
    name, n = base, 1
    while name in taken:
        n += 1
        name = f'{base}_{n}'
    return name


def _live_outs(candidate: ExtractCandidate, analysis: MethodAnalysis) -> set[str]:
    pdg = analysis.pdg
    live = set()
    for e in pdg.data_edges:
        if e.source not in candidate.extracted or e.target in candidate.extracted:
            continue
        mutated = pdg.mutated(e.source)
        shared = pdg.is_reference(e.variable) and (e.variable in mutated or e.variable.split('.')[0] in mutated)
        if e.variable == candidate.variable and candidate.algorithm == 'object-state' and shared:
            continue
        if e.variable != candidate.variable and shared:
            continue
        live.add(e.variable)
    return live


def _branches(stmts: tuple[Stmt, ...], chain: tuple[tuple[int, int], ...] = ()) -> dict[int, tuple]:
    """
    :return: Statement id -> the (compound statement id, statement list index) pairs enclosing it, outermost first.
    """
    chains = {}
    for s in stmts:
        chains[s.id] = chain
        for i, child_list in enumerate(s.child_lists()):
            chains.update(_branches(child_list, chain + ((s.id, i),)))
    return chains


def _check_placement(candidate: ExtractCandidate, analysis: MethodAnalysis):
    """
    The extracted statements must share the statement list of the first one, which the call replaces. Compound
    statements around candidate statements stay outside the candidate only if they enclose the call site too, and
    no loop of the candidate may enclose it.
    """
    method = analysis.method
    chains = _branches(method.body)
    first = min(candidate.extracted)
    site = chains[first]
    for s in sorted(candidate.extracted):
        if chains[s][:len(site)] != site:
            raise ExtractionError(f'Statement {s} of the candidate lies outside the block of its first '
                                  f'statement {first}.')
    enclosing = {c for c, _ in site}
    for s in sorted(candidate.statements):
        if s in enclosing and isinstance(method.statement(s), (While, For)):
            raise ExtractionError(f'The loop {s} of the candidate encloses the call site {first}, the new method '
                                  f'would run it again.')
        for c, i in chains[s]:
            if c in candidate.statements or (c, i) in site or isinstance(method.statement(c), Block):
                continue
            raise ExtractionError(f'Statement {c} controls statement {s} of the candidate but stays outside it.')


def _signature(candidate: ExtractCandidate, analysis: MethodAnalysis) -> tuple[list[str], str | None]:
    if not candidate.extracted:
        raise ExtractionError(f'The candidate of "{candidate.method}" extracts no statement.')
    _check_placement(candidate, analysis)
    params = free_variables(candidate, analysis)
    live = _live_outs(candidate, analysis)
    if len(live) > 1 or (live and candidate.variable not in live):
        raise ExtractionError(f'The candidate needs the values of {", ".join(sorted(map(_name, live)))} after the '
                              f'call, but a method returns a single value.')
    returns = None
    if live:
        symbol = analysis.pdg.symbols.get(candidate.variable)
        if symbol is not None and symbol.kind in ('local', 'param'):
            returns = candidate.variable
    return params, returns


def infer_signature(candidate: ExtractCandidate, analysis: MethodAnalysis) -> ExtractCandidate:
    """
    Infers the parameters and the return value of the new method.

    :param candidate: A candidate of the analysed method.
    :param analysis: The analysis of the method.
    :return: The candidate with params and returns filled in.
    :raises ExtractionError: If the extracted statements do not share one enclosing block, an if or loop controls
        candidate statements from outside the candidate, or the rest of the method needs more than one value computed
        by them.
    """
    params, returns = _signature(candidate, analysis)
    symbols = analysis.pdg.symbols
    return replace(candidate, params=tuple(_name(p) for p in params),
                   returns=(_name(returns), str(symbols[returns].type)) if returns is not None else None)


def _filter(stmts: tuple[Stmt, ...], keep: frozenset[int], site: tuple[tuple[int, int], ...]) -> tuple[Stmt, ...]:
    """
    :param site: The statement lists enclosing the call site, as (compound statement id, list index) pairs.
    :return: The statements of keep in their original structure.
    :raises ExtractionError: If a dropped if or loop controls kept statements and does not enclose the call site.
    """
    result = []
    for s in stmts:
        if s.id in keep:
            result.append(_with_children(s, lambda body: _filter(body, keep, site)))
        elif isinstance(s, Block):
            body = _filter(s.body, keep, site)
            if body:
                result.append(replace(s, body=body))
        else:
            for i, child_list in enumerate(s.child_lists()):
                kept = _filter(child_list, keep, site)
                if kept and (s.id, i) not in site:
                    raise ExtractionError(f'Statement {s.id} controls statement {kept[0].id} of the candidate but '
                                          f'stays outside it.')
                result += kept
    return tuple(result)


def _with_children(s: Stmt, rebuild) -> Stmt:
    match s:
        case If(then=then, orelse=orelse):
            return replace(s, then=rebuild(then), orelse=rebuild(orelse) if orelse is not None else None)
        case While(body=body) | For(body=body) | Block(body=body):
            return replace(s, body=rebuild(body))
    return s


def _remove(stmts: tuple[Stmt, ...], extracted: frozenset[int], first: int, call: Stmt) -> tuple[Stmt, ...]:
    """
    :return: The statements without the extracted ones, the call in place of the first extracted statement.
    """
    result = []
    for s in stmts:
        if s.id == first:
            result.append(call)
        elif s.id not in extracted:
            result.append(_with_children(s, lambda body: _remove(body, extracted, first, call)))
    return tuple(result)


def apply(candidate: ExtractCandidate, program: Program, analysis: MethodAnalysis | None = None) -> RefactoredProgram:
    """
    Applies a candidate as an extract method refactoring.

    :param candidate: The candidate.
    :param program: The resolved program the candidate was computed on.
    :param analysis: The analysis of the method of the candidate. Computed if None.
    :return: The rewritten program, re-parsed and type-checked.
    :raises ExtractionError: If the signature cannot be inferred or the rewritten program does not type-check.
    """
    if analysis is None:
        analysis = MethodAnalysis(program, program.method(candidate.method))
    method = analysis.method
    params, returns = _signature(candidate, analysis)
    symbols = analysis.pdg.symbols
    name = name_method(candidate, program)

    receiver = VarRef('this') if method.owner is not None else None
    call = Call(name, tuple(VarRef(_name(p)) for p in params), receiver)
    if returns is None:
        call_stmt = CallStmt(call)
    elif symbols[returns].kind == 'local' and symbols[returns].decl in candidate.extracted:
        s = symbols[returns]
        call_stmt = VarDecl(s.type, s.name, call, s.final)
    else:
        call_stmt = Assign(VarRef(_name(returns)), call)

    first = min(candidate.extracted)
    body = _filter(method.body, candidate.statements, _branches(method.body)[first])
    if returns is not None:
        body += (Return(VarRef(_name(returns))),)
    new_method = Method(name, tuple(Param(_name(p), symbols[p].type) for p in params),
                        symbols[returns].type if returns is not None else VOID,
                        body, method.owner)
    remaining = replace(method, body=_remove(method.body, candidate.extracted, first, call_stmt))

    rewritten = program.with_method(remaining).add_method(new_method)
    text = unparse(rewritten)
    try:
        resolved = parse(text)
    except RespsliceError as e:
        raise ExtractionError(f'Extracting "{name}" from "{method.qualified_name}" breaks the program: {e}') from e

    qualified = name if method.owner is None else f'{method.owner}.{name}'
    call_site = next(s.id for s in walk(resolved.method(method.qualified_name).body)
                     if any(c.name == name for c in calls_of(s)))
    mapping = {}
    for s in method.statements():
        if s.id in candidate.duplicated:
            mapping[s.id] = 'both'
        elif s.id in candidate.extracted:
            mapping[s.id] = 'extracted'
        else:
            mapping[s.id] = 'remaining'
    logging.debug(f'Extracted "{qualified}" from "{method.qualified_name}" at statement {call_site}.')
    return RefactoredProgram(resolved, method.qualified_name, qualified, call_site, mapping)
