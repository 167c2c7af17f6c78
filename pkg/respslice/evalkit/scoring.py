# evalkit/scoring.py
"""
Matching suggestions against true occurrences and scoring whole runs.
"""
import json
import logging

from ..errors import CorpusMismatchError
from ..lang import Method
from .models import MatchConfig, GroundTruth, MethodScore, EvalReport, DECISIONS


def statement_kinds(method: Method) -> dict[int, str]:
    """
    :return: Statement id -> statement kind, e.g. var-decl or while.
    """
    return {s.id: s.kind for s in method.statements()}


def _difference(suggestion: frozenset[int], occurrence: frozenset[int], kinds: dict[int, str] | None) -> set[int]:
    diff = set(suggestion ^ occurrence)
    if kinds is not None:
        diff = {s for s in diff if kinds.get(s) != 'var-decl'}
    return diff


def match(suggestion: frozenset[int], occurrence: frozenset[int], config: MatchConfig = MatchConfig(),
          kinds: dict[int, str] | None = None) -> bool:
    """
    Accepts a suggestion as a true occurrence when they differ by at most max_diff statements, extra or missing
    declarations aside, and no differing statement is a decision.

    :param suggestion: The suggested statements.
    :param occurrence: The true occurrence.
    :param config: The tolerance.
    :param kinds: Statement id -> kind for the method. Without it, declarations and decisions cannot be told apart
        and only the size of the difference counts.
    """
    diff = _difference(frozenset(suggestion), frozenset(occurrence), kinds)
    if len(diff) > config.max_diff:
        return False
    return kinds is None or not any(kinds.get(s) in DECISIONS for s in diff)


def score_method(method: str, suggestions: list[frozenset[int]], occurrences: tuple[frozenset[int], ...],
                 config: MatchConfig = MatchConfig(), kinds: dict[int, str] | None = None) -> MethodScore:
    """
    Matches suggestions and occurrences one to one, closest pairs first.

    :return: The counts of the method.
    """
    pairs = []
    for i, s in enumerate(suggestions):
        for j, o in enumerate(occurrences):
            if match(s, o, config, kinds):
                pairs.append((len(_difference(frozenset(s), frozenset(o), kinds)), i, j))
    used_s, used_o = set(), set()
    for _, i, j in sorted(pairs):
        if i not in used_s and j not in used_o:
            used_s.add(i)
            used_o.add(j)
    tp = len(used_s)
    return MethodScore(method, tp, len(suggestions) - tp, len(occurrences) - tp)


def score(suggestions: dict[str, list[frozenset[int]]], truths: dict[str, GroundTruth],
          config: MatchConfig = MatchConfig(), kinds: dict[str, dict[int, str]] | None = None) -> EvalReport:
    """
    Scores the suggestions of a run against the ground truth.

    :param suggestions: Method -> suggested statement sets.
    :param truths: Method -> ground truth. Methods without suggestions count all their occurrences as missed.
    :param config: The matching tolerance.
    :param kinds: Method -> statement kinds, see match.
    :return: The report, methods in name order.
    :raises CorpusMismatchError: If a method with suggestions has no ground truth.
    """
    for method in suggestions:
        if method not in truths:
            raise CorpusMismatchError(method)
    kinds = kinds or {}
    scores = [score_method(m, suggestions.get(m, []), truths[m].occurrences, config, kinds.get(m))
              for m in sorted(truths)]
    report = EvalReport(tuple(scores))
    logging.info(f'Scored {len(scores)} methods: TP {report.tp}, FP {report.fp}, FN {report.fn}.')
    return report


def report_from_counts(counts: dict[str, tuple[int, int, int]]) -> EvalReport:
    """
    :param counts: Method -> (tp, fp, fn), e.g. published per method counts.
    :return: The report over the given counts.
    """
    return EvalReport(tuple(MethodScore(m, *c) for m, c in sorted(counts.items())))


def _entries(data) -> list[dict]:
    return data if isinstance(data, list) else [data]


def load_truths(path: str) -> dict[str, GroundTruth]:
    """
    Reads ground truths: one JSON object {"method": ..., "occurrences": [[ids], ...]} or a list of them.

    :param path: The JSON file.
    :return: Method -> ground truth.
    :raises ValueError: If a method occurs twice.
    """
    with open(path, encoding='utf8') as f:
        data = json.load(f)
    truths = {}
    for entry in _entries(data):
        method = entry['method']
        if method in truths:
            raise ValueError(f'Duplicate ground truth for method "{method}" in {path}.')
        truths[method] = GroundTruth(method, tuple(frozenset(o) for o in entry['occurrences']))
    return truths


def load_suggestions(path: str) -> dict[str, list[frozenset[int]]]:
    """
    Reads suggestions, either as {"method": ..., "suggestions": [[ids], ...]} objects or as the suggestion
    documents of respslice suggest. From documents, the statements (extracted and duplicated) of every applicable
    candidate count.

    :param path: The JSON file holding one object or a list.
    :return: Method -> suggested statement sets.
    """
    with open(path, encoding='utf8') as f:
        data = json.load(f)
    suggestions = {}
    for entry in _entries(data):
        found = suggestions.setdefault(entry['method'], [])
        if 'suggestions' in entry:
            found += [frozenset(s) for s in entry['suggestions']]
        for c in entry.get('candidates', []):
            if c.get('applicable', True):
                found.append(frozenset(c['extracted']) | frozenset(c.get('duplicated', [])))
    return suggestions
