import unittest

from hypothesis import given, settings

from respslice import lang, suggest_source
from respslice.analysis import analyze
from respslice.errors import ExtractionError, RuleRejectedError
from respslice.extractor import apply
from respslice.interp import equivalent, random_inputs
from respslice.lang import If, While, For
from respslice.metrics import complexity, method_metrics
from respslice.pipeline import suggest, suggest_method, apply_candidate, rejection_summary, select_algorithms
from respslice.rules import slice_overlap
from respslice.settings import AnalysisConfig
from respslice._testing.corpus import load, fixture_source, all_fixtures
from respslice._testing.strategies import programs


def applied_suggestions(program: lang.Program) -> list[tuple]:
    """
    :return: (method, candidate report, rewritten program) for every applicable candidate of every method.
    """
    applied = []
    for document in suggest(program):
        analysis = analyze(program, document.method)
        for report in document.suggestions:
            applied.append((document.method, report, apply(report.candidate, program, analysis)))
    return applied


def mean_of(values) -> float | None:
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


class PipelineTest(unittest.TestCase):
    """
    Tests the suggestion pipeline from source text to applicable candidates.
    """
    sort_program = load('sort_and_normalize.mj')
    sort_document = suggest_method(analyze(sort_program, 'SortAndNormalize'), file='sort_and_normalize.mj')

    def test_sort_document(self):
        """
        Tests candidates, verdicts and applicability of SortAndNormalize.
        """
        d = self.sort_document
        self.assertEqual('C', d.method_type)
        self.assertEqual(('output-based',), d.algorithms)
        self.assertEqual(list(range(8)), [c.index for c in d.candidates])
        self.assertEqual([0, 1, 5, 6], [c.index for c in d.suggestions])
        self.assertEqual(list(range(1, 10)), [v.rule_id for v in d.candidates[0].verdicts])
        self.assertEqual(('ArrayIn',), d.candidates[0].candidate.params)
        for i in (2, 3, 4, 7):
            self.assertIsNotNone(d.candidates[i].error)
        self.assertIn('#5', d.to_table())

    def test_document_dict(self):
        """
        Tests the dictionary form of a suggestion document.
        """
        data = self.sort_document.to_dict()
        self.assertEqual('SortAndNormalize', data['method'])
        self.assertEqual('sort_and_normalize.mj', data['file'])
        first = data['candidates'][0]
        self.assertEqual([2, 3, 4, 5, 6, 7, 8], first['extracted'])
        self.assertEqual([1], first['duplicated'])
        self.assertEqual(['ArrayIn', 'int[]'], first['returns'])
        self.assertTrue(first['applicable'])

    def test_suggest_source(self):
        """
        Tests the suggestions of source text.
        """
        documents = suggest_source(fixture_source('sort_and_normalize.mj'))
        self.assertEqual(1, len(documents))
        self.assertEqual([2, 3, 4, 5, 6, 7, 8], documents[0]['candidates'][0]['extracted'])

    def test_workers(self):
        """
        Tests that worker threads give the same documents in the same order.
        """
        program = load('cohesion.mj')
        sequential = [d.to_dict() for d in suggest(program)]
        threaded = [d.to_dict() for d in suggest(program, workers=2)]
        self.assertEqual(sequential, threaded)
        self.assertEqual(['inc', 'two'], [d['method'] for d in sequential])
        self.assertRaises(KeyError, suggest, program, methods=['missing'])

    def test_select_algorithms(self):
        """
        Tests the algorithms chosen per method type and by configuration.
        """
        program = load('cohesion.mj')
        self.assertEqual(('complete-computation', 'object-state'),
                         select_algorithms(analyze(program, 'inc'), AnalysisConfig()))
        self.assertEqual(('output-based',), select_algorithms(analyze(program, 'two'), AnalysisConfig()))
        self.assertEqual(('object-state',),
                         select_algorithms(analyze(program, 'two'), AnalysisConfig(algorithms=('object-state',))))
        self.assertRaises(ValueError, AnalysisConfig, algorithms=('unknown',))
        self.assertRaises(ValueError, AnalysisConfig, max_overlap=2.0)

    def test_filters(self):
        """
        Tests the size filter and disabled rules.
        """
        program = load('get_maximum_or_minimum.mj')
        document = suggest_method(analyze(program, 'getMaximumOrMinimum'))
        self.assertEqual([1, 2], [c.candidate.anchor for c in document.candidates])
        self.assertEqual([], document.suggestions)
        self.assertEqual({2: 1, 3: 2}, rejection_summary([document]))
        analysis = analyze(program, 'getMaximumOrMinimum')
        relaxed = suggest_method(analysis, AnalysisConfig(disabled_rules=frozenset({3})))
        self.assertEqual([0], [c.index for c in relaxed.suggestions])
        self.assertEqual(4, len(suggest_method(analysis, AnalysisConfig(min_extract_size=0)).candidates))

    def test_apply_candidate(self):
        """
        Tests applying candidates by index, rejected ones only when forced.
        """
        result = apply_candidate(self.sort_program, 'SortAndNormalize', 5)
        self.assertEqual('extracted_ArrayIn_18', result.new_method_name)
        self.assertRaises(IndexError, apply_candidate, self.sort_program, 'SortAndNormalize', 8)
        program = load('get_maximum_or_minimum.mj')
        with self.assertRaises(RuleRejectedError) as e:
            apply_candidate(program, 'getMaximumOrMinimum', 0)
        self.assertEqual([3], [v.rule_id for v in e.exception.verdicts])
        forced = apply_candidate(program, 'getMaximumOrMinimum', 0, force=True)
        inputs = random_inputs(program.method('getMaximumOrMinimum'), 0, 20, program)
        self.assertTrue(equivalent(program, forced.program, 'getMaximumOrMinimum', inputs))

    def test_rule_violations_forced(self):
        """
        Tests that candidates failing exactly one rule change the behavior or break the program once applied.
        """
        cases = [('tally.mj', 'tally', {4, 5, 6}, {2, 3}, 2, AnalysisConfig()),
                 ('final_branches.mj', 'clamp', {3, 5, 6}, {1, 2, 4}, 3, AnalysisConfig()),
                 ('calculate.mj', 'calculate', {1, 3, 4, 5}, set(), 4, AnalysisConfig()),
                 ('side_effects.mj', 'useBump', {2, 3}, {1}, 7, AnalysisConfig(min_extract_size=2)),
                 ('object_creation.mj', 'boxed', {2, 3, 4}, {1}, 8, AnalysisConfig()),
                 ('interleave.mj', 'interleave', {1, 2, 4}, set(), 9, AnalysisConfig())]
        for name, method, extracted, duplicated, rule, config in cases:
            with self.subTest(rule=rule):
                program = load(name)
                document = suggest_method(analyze(program, method), config)
                report = next(r for r in document.candidates
                              if r.candidate.extracted == extracted and r.candidate.duplicated == duplicated)
                self.assertEqual([rule], [v.rule_id for v in report.failed])
                self.assertFalse(report.applicable)
                self.assertRaises(RuleRejectedError, apply_candidate, program, method, report.index, config)
                try:
                    result = apply_candidate(program, method, report.index, config, force=True)
                except ExtractionError:
                    self.assertIn(rule, (3, 4))
                    continue
                inputs = random_inputs(program.method(method), 0, 20, program)
                self.assertFalse(equivalent(program, result.program, method, inputs))

    def test_overlap_threshold(self):
        """
        Tests that of two prints whose slices overlap by 16 of 21 statements only the first keeps a suggestion at a
        threshold of 0.75, while both keep theirs at 0.8.
        """
        program = load('shape.mj')
        report = slice_overlap(analyze(program, 'shape').output_slices)[0]
        self.assertEqual((17, 23), report.pair)
        self.assertAlmostEqual(16 / 21, report.slice_overlap)
        strict = suggest(program, AnalysisConfig(max_overlap=0.75))[0]
        self.assertEqual([17], [c.candidate.output_stmt for c in strict.suggestions])
        loser = next(c for c in strict.candidates if c.candidate.output_stmt == 23)
        self.assertEqual([6], [v.rule_id for v in loser.failed])
        loose = suggest(program, AnalysisConfig(max_overlap=0.8))[0]
        self.assertEqual([17, 23], [c.candidate.output_stmt for c in loose.suggestions])
        inputs = random_inputs(program.method('shape'), 0, 20, program)
        for c in loose.suggestions:
            with self.subTest(candidate=c.index):
                result = apply_candidate(program, 'shape', c.index, AnalysisConfig(max_overlap=0.8))
                self.assertTrue(equivalent(program, result.program, 'shape', inputs))

    def test_suggestions_equivalent(self):
        """
        Tests that every applicable candidate of the fixtures and of generated methods preserves the traces of its
        method on 20 random inputs, over at least 30 applied refactorings.
        """
        checked = []
        for name in all_fixtures():
            program = load(name)
            for method, report, result in applied_suggestions(program):
                with self.subTest(fixture=name, method=method, candidate=report.index):
                    inputs = random_inputs(program.method(method), 0, 20, program)
                    self.assertTrue(equivalent(program, result.program, method, inputs))
                checked.append((name, method, report.index))

        @settings(max_examples=150, deadline=None, derandomize=True, database=None)
        @given(programs(20))
        def generated_equivalent(source):
            program = lang.parse(source)
            inputs = random_inputs(program.method('gen'), 0, 20, program)
            for method, report, result in applied_suggestions(program):
                self.assertTrue(equivalent(program, result.program, method, inputs), result.source())
                checked.append((source, method, report.index))

        generated_equivalent()
        self.assertGreaterEqual(len(checked), 30)

    def test_applied_metrics(self):
        """
        Tests that applying the suggestions of the fixtures keeps the cyclomatic complexity, up to the new method
        and duplicated decisions, does not nest deeper and does not lower the mean tightness and overlap.
        """
        for name in all_fixtures():
            program = load(name)
            for method, report, result in applied_suggestions(program):
                with self.subTest(fixture=name, method=method, candidate=report.index):
                    original = program.method(method)
                    duplicated = sum(isinstance(original.statement(s), (If, While, For))
                                     for s in report.candidate.duplicated)
                    before = complexity(original)
                    remaining = complexity(result.remaining_method)
                    extracted = complexity(result.new_method)
                    self.assertEqual(before.cyclomatic + 1 + duplicated, remaining.cyclomatic + extracted.cyclomatic)
                    self.assertLessEqual(remaining.max_nesting, before.max_nesting)
                    self.assertLessEqual(extracted.max_nesting, before.max_nesting)

                    cohesion = method_metrics(original, program).cohesion
                    after = [method_metrics(m, result.program).cohesion
                             for m in (result.remaining_method, result.new_method)]
                    for metric in ('tightness', 'overlap'):
                        old = getattr(cohesion, metric)
                        new = mean_of(getattr(c, metric) for c in after)
                        if old is not None and new is not None:
                            self.assertGreaterEqual(new, old - 1e-9)


if __name__ == '__main__':
    unittest.main()
