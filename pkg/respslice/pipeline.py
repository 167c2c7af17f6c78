# pipeline.py
"""
The suggestion pipeline: analyse a method, generate candidates with the slicing algorithms its output class calls
for, filter them by size and duplication, check the rules, infer signatures and try the rewrite. Rule 6 comes last
and picks among the candidates that pass everything else.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging

from .analysis import MethodAnalysis
from .errors import ExtractionError, RuleRejectedError
from .extractor import RefactoredProgram, apply, infer_signature
from .graphs import EffectAnalysis
from .lang import Program
from .rules import RuleVerdict, check_rule6, evaluate, slice_overlap
from .settings import AnalysisConfig, TOOL_VERSION, WORKERS
from .slicing import (ExtractCandidate, output_based_slicing, complete_computation_slices, object_state_slices)


@dataclass
class CandidateReport:
    """
    One candidate of a method with its rule verdicts.
    """
    index: int
    """The position of the candidate in its suggestion document."""
    candidate: ExtractCandidate
    verdicts: list[RuleVerdict] = field(default_factory=list)
    """One verdict per rule, ordered by rule id."""
    applicable: bool = False
    """True if the candidate passes all enabled rules and its rewrite type-checks."""
    error: str | None = None
    """Why signature inference or the rewrite failed."""
    disabled_rules: frozenset[int] = frozenset()

    @property
    def failed(self) -> list[RuleVerdict]:
        """The failed verdicts of enabled rules."""
        return [v for v in self.verdicts if not v.passed and v.rule_id not in self.disabled_rules]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {'index': self.index,
                **self.candidate.to_dict(),
                'verdicts': [v.to_dict() for v in self.verdicts],
                'applicable': self.applicable,
                'error': self.error}


@dataclass
class SuggestionDocument:
    """
    The candidates of one method, in stable order.
    """
    file: str
    method: str
    method_type: str
    """A, B or C."""
    algorithms: tuple[str, ...]
    candidates: list[CandidateReport] = field(default_factory=list)
    tool_version: str = TOOL_VERSION

    @property
    def suggestions(self) -> list[CandidateReport]:
        """The applicable candidates."""
        return [c for c in self.candidates if c.applicable]

    def to_dict(self) -> dict:
        return {'tool_version': self.tool_version,
                'file': self.file,
                'method': self.method,
                'method_type': self.method_type,
                'algorithms': list(self.algorithms),
                'candidates': [c.to_dict() for c in self.candidates]}

    def to_table(self) -> str:
        """
        :return: One line per candidate: algorithm, index, variable, output, region, statements and verdict.
        """
        lines = [f'{self.method} (type {self.method_type})']
        for c in self.candidates:
            k = c.candidate
            status = 'ok' if c.applicable else ('rejected ' + ','.join(str(v.rule_id) for v in c.failed)
                                                if c.failed else f'error: {c.error}')
            region = f'B{k.anchor}' if k.anchor is not None else '-'
            output = k.output_stmt if k.output_stmt is not None else '-'
            lines.append(f'  {k.algorithm:<21} #{c.index:<3} {k.variable:<12} out {output!s:<4} {region:<4} '
                         f'extract {sorted(k.extracted)} dup {sorted(k.duplicated)}  {status}')
        return '\n'.join(lines)


def select_algorithms(analysis: MethodAnalysis, config: AnalysisConfig) -> tuple[str, ...]:
    """
    :return: The configured algorithms, or output based slicing for methods of type B and C and complete
        computation plus object state slicing for type A.
    """
    if config.algorithms is not None:
        return tuple(config.algorithms)
    if analysis.method_type == 'A':
        return 'complete-computation', 'object-state'
    return ('output-based',)


def generate_candidates(analysis: MethodAnalysis, algorithms: tuple[str, ...]) -> list[ExtractCandidate]:
    """
    :return: The candidates of all algorithms, in algorithm order.
    """
    candidates = []
    if 'output-based' in algorithms and analysis.outputs:
        candidates += output_based_slicing(analysis.method, analysis.pdg, analysis.regions, analysis.outputs)
    if 'complete-computation' in algorithms:
        candidates += complete_computation_slices(analysis.method, analysis.pdg, analysis.regions)
    if 'object-state' in algorithms:
        candidates += object_state_slices(analysis.method, analysis.pdg, analysis.regions)
    return candidates


def suggest_method(analysis: MethodAnalysis, config: AnalysisConfig = AnalysisConfig(),
                   file: str = '') -> SuggestionDocument:
    """
    Runs the whole pipeline on one method.

    :param analysis: The analysis of the method.
    :param config: The analysis settings.
    :param file: The source file, recorded in the document.
    :return: The suggestion document of the method.
    """
    method = analysis.method
    algorithms = select_algorithms(analysis, config)
    generated = generate_candidates(analysis, algorithms)
    kept = [c for c in generated
            if len(c.extracted) >= config.min_extract_size and c.duplication_ratio <= config.allow_duplication]
    logging.debug(f'"{method.qualified_name}": {len(generated)} candidates, {len(kept)} after size and duplication '
                  f'filters.')
    reports = [CandidateReport(i, c, evaluate(c, analysis), disabled_rules=config.disabled_rules)
               for i, c in enumerate(kept)]

    rewritable = []
    for report in reports:
        try:
            report.candidate = infer_signature(report.candidate, analysis)
        except ExtractionError as e:
            report.error = str(e)
            logging.warning(f'Candidate {report.index} of "{method.qualified_name}": {e}')
            continue
        if not report.passed:
            logging.info(f'Candidate {report.index} of "{method.qualified_name}" fails rule(s) '
                         f'{", ".join(str(v.rule_id) for v in report.failed)}.')
            continue
        try:
            apply(report.candidate, analysis.program, analysis)
            rewritable.append(report)
        except ExtractionError as e:
            report.error = str(e)
            logging.warning(f'Candidate {report.index} of "{method.qualified_name}": {e}')

    overlaps = slice_overlap(analysis.output_slices) if len(analysis.outputs) > 1 else []
    _, rule6 = check_rule6(overlaps, [r.candidate for r in rewritable], config.max_overlap)
    verdicts = {r.index: v for r, v in zip(rewritable, rule6)}
    for report in reports:
        report.verdicts.insert(5, verdicts.get(report.index, RuleVerdict(6, True)))
    for report in rewritable:
        report.applicable = report.passed
    return SuggestionDocument(file, method.qualified_name, analysis.method_type, algorithms, reports)


def suggest(program: Program, config: AnalysisConfig = AnalysisConfig(), file: str = '',
            methods: list[str] | None = None, workers: int = WORKERS) -> list[SuggestionDocument]:
    """
    Runs the pipeline on the methods of a program.

    :param program: A resolved program.
    :param config: The analysis settings.
    :param file: The source file, recorded in the documents.
    :param methods: Qualified names of the methods to analyse. All methods if None.
    :param workers: The number of worker threads, if this value equals 0 no ThreadPoolExecutor is used.
    :return: One document per method, in declaration order.
    :raises KeyError: If a named method does not exist.
    """
    effects = EffectAnalysis(program)
    targets = [program.method(m) for m in methods] if methods is not None else program.all_methods()

    def run(m):
        return suggest_method(MethodAnalysis(program, m, effects), config, file)

    if workers == 0:
        return [run(m) for m in targets]
    pool = ThreadPoolExecutor(max_workers=workers if workers > 0 else None)
    pool_threads = [pool.submit(run, m) for m in targets]
    pool.shutdown(wait=True)
    return [p.result() for p in pool_threads]


def rejection_summary(documents: list[SuggestionDocument]) -> dict[int, int]:
    """
    :return: Rule id -> number of candidates failing it, over all documents.
    """
    summary = {}
    for d in documents:
        for c in d.candidates:
            for v in c.failed:
                summary[v.rule_id] = summary.get(v.rule_id, 0) + 1
    return dict(sorted(summary.items()))


def apply_candidate(program: Program, method: str, index: int, config: AnalysisConfig = AnalysisConfig(),
                    force: bool = False) -> RefactoredProgram:
    """
    Re-runs the pipeline on a method and applies one of its candidates.

    :param program: A resolved program.
    :param method: The qualified name of the method.
    :param index: The index of the candidate in the suggestion document of the method.
    :param config: The analysis settings.
    :param force: Applies candidates failing rules as well.
    :return: The rewritten program.
    :raises IndexError: If the method has no candidate with this index.
    :raises RuleRejectedError: If the candidate fails a rule and force is not set.
    :raises ExtractionError: If the rewrite fails.
    """
    analysis = MethodAnalysis(program, program.method(method))
    document = suggest_method(analysis, config)
    if not 0 <= index < len(document.candidates):
        raise IndexError(f'"{method}" has {len(document.candidates)} candidates, there is no candidate {index}.')
    report = document.candidates[index]
    if not report.passed and not force:
        raise RuleRejectedError(report.failed)
    if report.error is not None:
        raise ExtractionError(report.error)
    return apply(report.candidate, program, analysis)
