# rules/checks.py
"""
The precondition rules of extract method candidates.

Every check takes the candidate and the analysis of its method and returns a RuleVerdict. Rule 6 compares the
candidates of different output instructions and is applied after all other rules by check_rule6.
"""
from itertools import combinations
import logging

import networkx as nx

from ..analysis import MethodAnalysis
from ..graphs import ENTRY
from ..lang import (Stmt, VarDecl, Assign, FieldAssign, For, Return, Print, Write, VarRef, Index, NewObject, NewArray,
                    ArrayLit, walk, walk_expr, header_exprs, calls_of)
from ..settings import MAX_OVERLAP
from ..slicing import ExtractCandidate
from .models import RuleVerdict, OverlapReport


def _plain(variable: str) -> str:
    return variable.split('.')[0].split('@')[0]


def check_rule1(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    Output instructions other than returns whose whole computation is extracted must be extracted as well, and no
    return statement may be extracted.
    """
    for s in sorted(candidate.extracted):
        if isinstance(analysis.method.statement(s), Return):
            return RuleVerdict(1, False, f'the return statement {s} would move to the new method')
    for o in analysis.outputs:
        if o.category == 'return-stmt' or o.stmt_id in candidate.extracted:
            continue
        computation = analysis.output_slices[o.stmt_id]
        if computation and computation <= candidate.extracted:
            return RuleVerdict(1, False, f'the output instruction {o.stmt_id} stays while its computation moves')
    return RuleVerdict(1, True)


def free_variables(candidate: ExtractCandidate, analysis: MethodAnalysis) -> list[str]:
    """
    :param candidate: A candidate.
    :param analysis: The analysis of its method.
    :return: The keys of the locals and parameters referenced by the candidate statements but declared outside
        them, in order of first reference.
    """
    free = []
    for s in sorted(candidate.statements):
        stmt = analysis.method.statement(s)
        for x in header_exprs(stmt):
            for e in walk_expr(x):
                if not isinstance(e, VarRef) or e.symbol is None or e.symbol.kind not in ('local', 'param'):
                    continue
                if e.symbol.kind == 'local' and e.symbol.decl in candidate.statements:
                    continue
                if e.symbol.key not in free:
                    free.append(e.symbol.key)
    return free


def check_rule2(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    Locals referenced by the candidate but declared outside it become parameters of the new method, so they must
    be definitely assigned where the call is inserted. A candidate statement running before the call site must also
    find the value it read originally: no statement between it and the call site may redefine a parameter or global
    it reads.
    """
    call_site = min(candidate.extracted)
    assigned = analysis.assigned.get(call_site, frozenset())
    free = free_variables(candidate, analysis)
    pdg = analysis.pdg
    for v in free:
        if pdg.symbols[v].kind == 'local' and v not in assigned:
            return RuleVerdict(2, False, f'"{_plain(v)}" is declared outside the candidate and not assigned before '
                                         f'statement {call_site}')
    passed = set(free) | {v for v, s in pdg.symbols.items() if s.kind == 'global'}
    flow = _call_flow(analysis, call_site)
    for c in sorted(s for s in candidate.statements if s < call_site):
        read = _roots(pdg.uses(c)) & passed
        if not read:
            continue
        once = nx.restricted_view(flow, [], [(p, c) for p in flow.predecessors(c)])
        later = nx.descendants(once, c)
        if call_site not in later:
            continue
        for d in sorted(({c} | later) & nx.ancestors(once, call_site)):
            changed = _roots(pdg.defs(d)) & read
            if d == c:
                changed -= _roots(pdg.mutated(c))
            if changed:
                return RuleVerdict(2, False, f'statement {d} changes "{_plain(min(changed))}" before the call at '
                                             f'statement {call_site}, but the candidate statement {c} reads its '
                                             f'earlier value')
    return RuleVerdict(2, True)


def _roots(variables) -> set[str]:
    return {v.split('.')[0] for v in variables}


def _call_flow(analysis: MethodAnalysis, call_site: int) -> nx.DiGraph:
    """
    :return: The statement flow graph where every path into the call site is a new call: the edges closing the loop
        of a loop statement serving as call site are left out.
    """
    flow = analysis.cfg.flow
    inside = {s.id for s in walk((analysis.method.statement(call_site),))}
    return nx.restricted_view(flow, [], [(u, call_site) for u in flow.predecessors(call_site) if u in inside])


def check_rule3(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    A node criterion must not define a final variable that is defined under a condition.
    """
    pdg = analysis.pdg
    for c in candidate.slice.criteria:
        for v in sorted(pdg.defs(c.stmt_id)):
            symbol = pdg.symbols.get(v)
            if symbol is None or not symbol.final or symbol.kind != 'local':
                continue
            conditional = [d for d in pdg.definitions_of(v) if pdg.control_parent(d) != ENTRY]
            if conditional:
                return RuleVerdict(3, False, f'the final variable "{symbol.name}" is defined under the condition of '
                                             f'statement {pdg.control_parent(conditional[0])}')
    return RuleVerdict(3, True)


def _declarations(analysis: MethodAnalysis) -> dict[str, list[int]]:
    decls = {}
    for s in walk(analysis.method.body):
        d = s.init if isinstance(s, For) else s
        if isinstance(d, VarDecl):
            decls.setdefault(d.name, []).append(s.id)
    return decls


def check_rule4(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    When the declaration of the returned variable moves and its name is declared again elsewhere in the method, the
    extracted statements must be nested deeper than the innermost block enclosing all declarations of the name, or
    the declaration at the call site collides with the others.
    """
    name = _plain(candidate.variable)
    decls = _declarations(analysis).get(name, [])
    if len(decls) < 2 or not any(d in candidate.extracted for d in decls):
        return RuleVerdict(4, True)

    def chain(s):
        parents = [analysis.parents[s]]
        while parents[-1] != 0:
            parents.append(analysis.parents[parents[-1]])
        return parents

    chains = [chain(d) for d in decls]
    common = next(p for p in chains[0] if all(p in c for c in chains[1:]))
    level = 0 if common == 0 else analysis.levels[common] + 1
    lowest = min(analysis.levels[s] for s in candidate.extracted)
    if lowest > level:
        return RuleVerdict(4, True)
    return RuleVerdict(4, False, f'"{name}" is declared {len(decls)} times and the call site at nesting level '
                                 f'{lowest} would declare it again')


def check_rule5(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    The remaining method must keep at least one statement defining a variable besides the call.
    """
    for s in sorted(candidate.remaining):
        stmt = analysis.method.statement(s)
        if isinstance(stmt, (Assign, FieldAssign)) or (isinstance(stmt, VarDecl) and stmt.init is not None):
            return RuleVerdict(5, True)
    return RuleVerdict(5, False, 'the remaining method would only call the new method')


def slice_overlap(slices: dict[int, frozenset[int]]) -> list[OverlapReport]:
    """
    Compares the slices of every pair of output instructions.

    :param slices: Output statement -> its slice.
    :return: One report per pair, ordered by pair.
    """
    reports = []
    for a, b in combinations(sorted(slices), 2):
        common = slices[a] & slices[b]
        union = slices[a] | slices[b]
        reports.append(OverlapReport((a, b), frozenset(common), len(common) / len(union) if union else 0.0))
    return reports


def check_rule6(reports: list[OverlapReport], candidates: list[ExtractCandidate],
                threshold: float = MAX_OVERLAP) -> tuple[list[ExtractCandidate], list[RuleVerdict]]:
    """
    Groups the output instructions whose slices overlap more than the threshold and keeps a single candidate per
    group: one of the output instruction sharing the most statements with the others of its group, ties going to
    the lower statement id. Output instructions without candidates are passed over. Among the candidates of the
    chosen output instruction the one extracting most statements wins, then the earlier one.

    :param reports: The pairwise slice overlaps of the output instructions.
    :param candidates: The candidates left by the other rules.
    :param threshold: The overlap above which two output instructions are grouped.
    :return: The surviving candidates and one verdict per candidate, in input order.
    """
    graph = nx.Graph()
    for r in reports:
        if r.slice_overlap > threshold:
            graph.add_edge(*r.pair, common=len(r.common))
    losers = {}
    for group in nx.connected_components(graph):
        members = [i for i, c in enumerate(candidates) if c.output_stmt in group]
        if not members:
            continue
        shared = {o: sum(d['common'] for _, _, d in graph.edges(o, data=True)) for o in group}
        ranked = sorted(group, key=lambda o: (-shared[o], o))
        winner = next(o for o in ranked if any(candidates[i].output_stmt == o for i in members))
        tied = [o for o in ranked if shared[o] == shared[winner] and o != winner]
        note = f' (tied with {", ".join(map(str, tied))})' if tied else ''
        kept = min((i for i in members if candidates[i].output_stmt == winner),
                   key=lambda i: (-len(candidates[i].extracted), i))
        for i in members:
            if i == kept:
                continue
            o = candidates[i].output_stmt
            losers[i] = (f'its slice overlaps the slice of output instruction {winner} by more than {threshold}{note}'
                         if o != winner else f'output instruction {o} already keeps a larger or earlier candidate')
        logging.debug(f'Overlapping output instructions {sorted(group)}, keeping a candidate of {winner}{note}.')
    survivors, verdicts = [], []
    for i, c in enumerate(candidates):
        if i in losers:
            verdicts.append(RuleVerdict(6, False, losers[i]))
        else:
            verdicts.append(RuleVerdict(6, True))
            survivors.append(c)
    return survivors, verdicts


def check_rule7(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    Duplicated statements must not change state visible outside the method copy: fields, array elements, globals,
    or anything a side effecting call touches.
    """
    for s in sorted(candidate.duplicated):
        stmt = analysis.method.statement(s)
        reason = None
        match stmt:
            case FieldAssign():
                reason = 'assigns a field'
            case Assign(target=Index()):
                reason = 'assigns an array element'
            case Assign(target=VarRef(symbol=sym)) if sym is not None and sym.kind == 'global':
                reason = f'assigns the global "{sym.name}"'
        if reason is None:
            for call in calls_of(stmt):
                if analysis.effects.of_call(call).side_effecting:
                    reason = f'calls the side effecting method "{call.name}"'
                    break
        if reason is not None:
            return RuleVerdict(7, False, f'the duplicated statement {s} {reason}')
    return RuleVerdict(7, True)


def check_rule8(candidate: ExtractCandidate, analysis: MethodAnalysis) -> RuleVerdict:
    """
    Duplicated statements must not create objects or arrays.
    """
    for s in sorted(candidate.duplicated):
        for x in header_exprs(analysis.method.statement(s)):
            if any(isinstance(e, (NewObject, NewArray, ArrayLit)) for e in walk_expr(x)):
                return RuleVerdict(8, False, f'the duplicated statement {s} creates an object')
    return RuleVerdict(8, True)


def _channels(stmt: Stmt, analysis: MethodAnalysis) -> set[str]:
    """
    :return: The output channels a statement writes to: 'print', 'file <name>', or '*' when a called method prints
        or writes files.
    """
    match stmt:
        case Print():
            written = {'print'}
        case Write(file=f):
            written = {f'file {f}'}
        case _:
            written = set()
    if any(analysis.effects.of_call(c).performs_output for c in calls_of(stmt)):
        written.add('*')
    return written


def _reordered(a: int, b: int, analysis: MethodAnalysis, candidate: ExtractCandidate) -> str | None:
    pdg = analysis.pdg
    extracted = b in candidate.extracted
    moved = 'extracted' if extracted else 'duplicated'
    flow = _roots(pdg.defs(a)) & _roots(pdg.uses(b))
    if flow and a not in candidate.duplicated:
        return f'the {moved} statement {b} reads "{_plain(min(flow))}" after statement {a} defines it'
    if not extracted:
        return None
    anti = _roots(pdg.uses(a)) & _roots(pdg.defs(b))
    if anti:
        return f'statement {a} reads "{_plain(min(anti))}" before the extracted statement {b} redefines it'
    output = _roots(pdg.defs(a)) & _roots(pdg.defs(b))
    if output:
        return f'statement {a} and the extracted statement {b} both define "{_plain(min(output))}"'
    ca, cb = _channels(analysis.method.statement(a), analysis), _channels(analysis.method.statement(b), analysis)
    if ca and cb and (ca & cb or '*' in ca | cb):
        return f'the output of statement {a} comes before the output of the extracted statement {b}'
    return None


def check_rule9(candidate: ExtractCandidate, analysis: MethodAnalysis,
                call_site: int | None = None) -> RuleVerdict:
    """
    The call runs the candidate statements at the call site, ahead of the statements between the call site and
    them. No such statement left in the method may read or write a variable an extracted statement writes, or share
    the print stream or a file with it. Nor may it define a variable a later candidate statement reads, unless the
    new method runs it as well.

    :param call_site: The statement the call replaces. Defaults to the first extracted statement.
    """
    call_site = min(candidate.extracted) if call_site is None else call_site
    forward = analysis.forward_flow
    after_call = nx.descendants(forward, call_site) | {call_site}
    pdg = analysis.pdg
    for a in sorted(after_call - candidate.extracted):
        if a not in pdg.defuse or a == ENTRY:
            continue
        later = nx.descendants(forward, a) & candidate.statements
        for b in sorted(later):
            reason = _reordered(a, b, analysis, candidate)
            if reason is not None:
                return RuleVerdict(9, False, reason)
    return RuleVerdict(9, True)


CHECKS = {1: check_rule1, 2: check_rule2, 3: check_rule3, 4: check_rule4, 5: check_rule5, 7: check_rule7,
          8: check_rule8, 9: check_rule9}
"""The rules checked per candidate. Rule 6 compares candidates and is checked by check_rule6."""


def evaluate(candidate: ExtractCandidate, analysis: MethodAnalysis) -> list[RuleVerdict]:
    """
    :param candidate: A candidate.
    :param analysis: The analysis of its method.
    :return: The verdicts of all per candidate rules, ordered by rule id.
    """
    if not candidate.extracted:
        return [RuleVerdict(r, False, 'nothing is extracted') for r in CHECKS]
    return [check(candidate, analysis) for check in CHECKS.values()]
