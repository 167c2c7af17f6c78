# graphs/pdg.py
"""
Program dependence graph construction.

Data edges come from a reaching definitions fixpoint over the statement flow graph. Control edges mirror the
statement nesting, which is exact for structured code: every statement depends on its innermost enclosing if,
while or for header, or on ENTRY. Bare blocks are lexical only and pass their control parent on to their children.
"""
import logging

from ..lang import Program, Method, Stmt, If, While, For, Block, VarDecl, walk
from .cfg import build_cfg
from .defuse import DefUseAnalysis, EffectAnalysis
from .models import Cfg, Pdg, Cdg, DataEdge, DefUse, ENTRY


def control_edges(body: tuple[Stmt, ...], parent: int = ENTRY) -> set[tuple[int, int]]:
    """
    :param body: A statement list.
    :param parent: The control parent of the statements in body.
    :return: The (controller, controlled) pairs of the list and all nested lists.
    """
    edges = set()
    for s in body:
        edges.add((parent, s.id))
        inner = parent if isinstance(s, Block) else s.id
        for child_list in s.child_lists():
            edges |= control_edges(child_list, inner)
    return edges


def reaching_definitions(cfg: Cfg, table: dict[int, DefUse]) -> dict[int, frozenset[tuple[int, str]]]:
    """
    Solves the forward may analysis of reaching definitions.

    :param cfg: The control flow graph.
    :param table: Definitions and kills per statement, ENTRY included.
    :return: The (definition, variable) pairs reaching the start of every node of the statement flow graph.
    """
    flow = cfg.flow
    gen = {n: frozenset((n, v) for v in table[n].defs) if n in table else frozenset() for n in flow.nodes}
    reach_in = {n: frozenset() for n in flow.nodes}
    reach_out = dict(gen)
    worklist = list(flow.nodes)
    while worklist:
        n = worklist.pop(0)
        incoming = frozenset().union(*(reach_out[p] for p in flow.predecessors(n)))
        kills = table[n].kills if n in table else frozenset()
        out = gen[n] | frozenset(d for d in incoming if d[1] not in kills)
        reach_in[n] = incoming
        if out != reach_out[n]:
            reach_out[n] = out
            worklist.extend(s for s in flow.successors(n) if s not in worklist)
    return reach_in


def definitely_assigned(cfg: Cfg, pdg: Pdg) -> dict[int, frozenset[str]]:
    """
    Solves the forward must analysis of definite assignment for the locals of a method.

    :param cfg: The control flow graph.
    :param pdg: The program dependence graph providing the kills of every statement.
    :return: The local keys definitely assigned on entry to every statement.
    """
    flow = cfg.flow
    locals_ = frozenset(k for k, s in pdg.symbols.items() if s.kind == 'local')
    out = {n: locals_ for n in flow.nodes}
    out[ENTRY] = frozenset()
    assigned_in = {}
    changed = True
    while changed:
        changed = False
        for n in flow.nodes:
            if n == ENTRY:
                continue
            preds = list(flow.predecessors(n))
            incoming = frozenset.intersection(*(out[p] for p in preds)) if preds else frozenset()
            assigned_in[n] = incoming
            kills = pdg.defuse[n].kills & locals_ if n in pdg.defuse else frozenset()
            new = incoming | kills
            if new != out[n]:
                out[n] = new
                changed = True
    return {n: a for n, a in assigned_in.items() if n in pdg.defuse}


def build_pdg(method: Method, cfg: Cfg | None = None, program: Program | None = None,
              effects: EffectAnalysis | None = None) -> Pdg:
    """
    Builds the program dependence graph of a method.

    :param method: A resolved method.
    :param cfg: Its control flow graph. Built if None.
    :param program: The program of the method, needed for call effects and globals. If None, a program holding only
        the method is assumed.
    :param effects: A shared call effect cache for the program.
    :return: The program dependence graph.
    """
    if program is None:
        program = Program(methods=(method,)) if method.owner is None else Program()
    if cfg is None:
        cfg = build_cfg(method)
    analysis = DefUseAnalysis(program, method, effects)
    table = analysis.table()
    reach_in = reaching_definitions(cfg, table)
    data = set()
    for u, du in table.items():
        for d, v in reach_in.get(u, ()):
            if v in du.uses and d != u:
                data.add(DataEdge(d, u, v))
    decl = set()
    declared = {}
    for s in walk(method.body):
        d = s.init if isinstance(s, For) else s
        if isinstance(d, VarDecl) and d.symbol is not None:
            declared[d.symbol.key] = s.id
    for s, du in table.items():
        for v in du.defs:
            if v in declared and declared[v] != s:
                decl.add((declared[v], s, v))
    pdg = Pdg(method, table, analysis.symbols, frozenset(data), frozenset(control_edges(method.body)),
              frozenset(decl))
    logging.debug(f'PDG of "{method.qualified_name}": {pdg!r}')
    return pdg


def build_cdg(pdg: Pdg) -> Cdg:
    """
    Projects a program dependence graph onto its control edges.

    :param pdg: The program dependence graph.
    :return: The control dependence graph rooted at ENTRY.
    """
    return Cdg(pdg.method, pdg.control_edges)
