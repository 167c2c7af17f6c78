# metrics/compute.py
"""
Slice based cohesion, complexity and the deltas of both caused by a refactoring.
"""
import csv
import io
from statistics import mean

from ..criteria import SlicingCriterion, classify_outputs, method_type
from ..graphs import Pdg, ENTRY, build_pdg
from ..lang import Program, Method, If, While, For, walk, nesting_levels
from ..slicing import backward_slice
from .models import CohesionReport, ComplexityReport, MethodMetrics, DeltaRow, Census, MODES, NOT_APPLICABLE

CSV_COLUMNS = ('method', 'tightness', 'overlap', 'coverage', 'loc', 'cc', 'max_nesting')


def out_values(method: Method, pdg: Pdg, program: Program, mode: str = 'output') -> list[str]:
    """
    :param mode: output: the variables read by output instructions, the globals the method assigns and the
        reference parameters whose state it changes. all: every local variable of the method.
    :return: The variable keys in order of first appearance.
    :raises ValueError: On an unknown mode.
    """
    if mode not in MODES:
        raise ValueError(f'Unknown cohesion mode "{mode}". Must be one of {", ".join(MODES)}.')
    keys = []
    if mode == 'all':
        for s in sorted(pdg.nodes):
            keys += [v for v in sorted(pdg.defs(s))
                     if v in pdg.symbols and pdg.symbols[v].kind == 'local' and v not in keys]
        return keys
    for o in classify_outputs(method, program):
        keys += [v for v in o.variables if v not in keys]
    for s in sorted(pdg.nodes):
        if s == ENTRY:
            continue
        for v in sorted(pdg.defs(s) | pdg.mutated(s)):
            symbol = pdg.symbols.get(v)
            if symbol is None or v in keys:
                continue
            if symbol.kind == 'global' or (symbol.kind == 'param' and symbol.type.is_reference
                                           and v in pdg.mutated(s)):
                keys.append(v)
    return keys


def cohesion(method: Method, pdg: Pdg, mode: str = 'output', program: Program | None = None) -> CohesionReport:
    """
    Measures tightness, overlap and coverage of a method. Each out value is sliced without region limits from the
    last statement reading or defining it.

    :param method: The method.
    :param pdg: Its program dependence graph.
    :param mode: output or all.
    :param program: The program of the method, needed to classify the output instructions.
    :return: The report. The ratios are None if the out set is empty.
    """
    program = program if program is not None else Program(methods=(method,))
    keys = out_values(method, pdg, program, mode)
    length = method.stmt_count
    if not keys or length == 0:
        return CohesionReport(mode, tuple(keys), length=length)
    slices = {}
    for v in keys:
        last = max(s for s in pdg.nodes if s != ENTRY and (v in pdg.uses(s) or v in pdg.defs(s)))
        slices[v] = backward_slice(pdg, SlicingCriterion(last, v)).statements
    intersect = frozenset.intersection(*slices.values())
    return CohesionReport(mode, tuple(keys), slices, intersect, length,
                          tightness=len(intersect) / length,
                          overlap=mean(len(intersect) / len(s) for s in slices.values()),
                          coverage=mean(len(s) / length for s in slices.values()))


def complexity(method: Method) -> ComplexityReport:
    """
    :param method: A method.
    :return: Statement count, cyclomatic complexity and maximum nesting.
    """
    statements = list(walk(method.body))
    decisions = sum(isinstance(s, (If, While, For)) for s in statements)
    levels = nesting_levels(method.body)
    depth = max([levels[s.id] + 1 for s in statements if s.child_lists()] + list(levels.values()) + [0])
    return ComplexityReport(len(statements), 1 + decisions, depth)


def method_metrics(method: Method, program: Program, mode: str = 'output') -> MethodMetrics:
    """
    :return: Cohesion and complexity of a method of a resolved program.
    """
    pdg = build_pdg(method, program=program)
    return MethodMetrics(method.qualified_name, cohesion(method, pdg, mode, program), complexity(method))


def delta_report(before: MethodMetrics, remaining: MethodMetrics, extracted: MethodMetrics) -> list[DeltaRow]:
    """
    Compares the metrics of a method with those of its remaining and its extracted part.

    :param before: The metrics of the original method.
    :param remaining: The metrics of the method after the refactoring.
    :param extracted: The metrics of the new method.
    :return: One row per metric. Deltas are None where a metric is undefined.
    :raises ValueError: If the cohesion reports use different modes.
    """
    modes = {before.cohesion.mode, remaining.cohesion.mode, extracted.cohesion.mode}
    if len(modes) > 1:
        raise ValueError(f'Cannot compare cohesion computed in the modes {", ".join(sorted(modes))}.')
    rows = []
    b, r, e = before.values(), remaining.values(), extracted.values()
    for metric in b:
        if None in (b[metric], r[metric], e[metric]):
            rows.append(DeltaRow(before.method, metric, b[metric], r[metric], e[metric], None, None))
            continue
        rows.append(DeltaRow(before.method, metric, b[metric], r[metric], e[metric], r[metric] - b[metric],
                             (e[metric] + r[metric]) / 2 - b[metric]))
    return rows


def _cell(value) -> str:
    if value is None:
        return NOT_APPLICABLE
    return f'{value:.4f}' if isinstance(value, float) else str(value)


def metrics_csv(rows: list[MethodMetrics]) -> str:
    """
    :return: CSV text with the columns method, tightness, overlap, coverage, loc, cc, max_nesting.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for m in rows:
        values = m.values()
        writer.writerow([m.method] + [_cell(values[c]) for c in CSV_COLUMNS[1:]])
    return out.getvalue()


def delta_csv(rows: list[DeltaRow]) -> str:
    """
    :return: CSV text with one line per method and metric.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(('method', 'metric', 'original', 'remaining', 'extracted', 'remain_minus_original',
                     'average_minus_original'))
    for r in rows:
        writer.writerow([r.method, r.metric] + [_cell(v) for v in (r.original, r.remaining, r.extracted,
                                                                   r.remain_minus_original,
                                                                   r.average_minus_original)])
    return out.getvalue()


def census(program: Program) -> Census:
    """
    Counts the methods of a program per output class.

    :param program: A resolved program.
    :return: The census.
    """
    counts = {'A': 0, 'B': 0, 'C': 0}
    multiple = 0
    methods = program.all_methods()
    for m in methods:
        outputs = classify_outputs(m, program)
        counts[method_type(outputs)] += 1
        multiple += len(outputs) > 1
    return Census(counts['A'], counts['B'], counts['C'], multiple, len(methods))
