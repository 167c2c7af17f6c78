import unittest

from respslice import lang
from respslice.graphs import build_pdg
from respslice.metrics import (Census, cohesion, complexity, method_metrics, delta_report, metrics_csv, delta_csv,
                               census, out_values)
from respslice._testing.corpus import load


class MetricsTest(unittest.TestCase):
    """
    Tests cohesion, complexity, their deltas and the output class census.
    """
    program = load('cohesion.mj')

    def test_cohesion_single_output(self):
        """
        Tests a method whose whole body computes its return value.
        """
        method = self.program.method('inc')
        report = cohesion(method, build_pdg(method, program=self.program), program=self.program)
        self.assertEqual(('c',), report.out_set)
        self.assertEqual((1.0, 1.0, 1.0), (report.tightness, report.overlap, report.coverage))

    def test_cohesion_two_tasks(self):
        """
        Tests a method printing two unrelated results.
        """
        method = self.program.method('two')
        pdg = build_pdg(method, program=self.program)
        report = cohesion(method, pdg, program=self.program)
        self.assertEqual(('x', 'y'), report.out_set)
        self.assertEqual({1, 2, 3, 4}, report.slices['x'])
        self.assertEqual(0.0, report.tightness)
        self.assertEqual(0.0, report.overlap)
        self.assertAlmostEqual(0.5, report.coverage)
        self.assertEqual(['x', 'y'], out_values(method, pdg, self.program, 'all'))
        self.assertRaises(ValueError, out_values, method, pdg, self.program, 'some')

    def test_complexity(self):
        """
        Tests statement count, cyclomatic complexity and nesting.
        """
        report = complexity(load('sort_and_normalize.mj').method('SortAndNormalize'))
        self.assertEqual((18, 6, 3), (report.loc, report.cyclomatic, report.max_nesting))
        self.assertEqual(0, complexity(self.program.method('inc')).max_nesting)

    def test_not_applicable(self):
        """
        Tests that a method without out values has undefined cohesion.
        """
        program = lang.parse('void nothing(int a) { int b = a; }')
        row = method_metrics(program.method('nothing'), program)
        self.assertFalse(row.cohesion.applicable)
        self.assertEqual('method,tightness,overlap,coverage,loc,cc,max_nesting\nnothing,n/a,n/a,n/a,1,1,0\n',
                         metrics_csv([row]))

    def test_delta(self):
        """
        Tests the deltas between an original, a remaining and an extracted method.
        """
        before = method_metrics(self.program.method('two'), self.program)
        after = method_metrics(self.program.method('inc'), self.program)
        rows = {r.metric: r for r in delta_report(before, after, after)}
        self.assertEqual(1.0, rows['tightness'].remain_minus_original)
        self.assertEqual(-7, rows['loc'].remain_minus_original)
        self.assertEqual(-7, rows['loc'].average_minus_original)
        self.assertTrue(delta_csv(list(rows.values())).startswith('method,metric,original'))
        other = method_metrics(self.program.method('inc'), self.program, 'all')
        self.assertRaises(ValueError, delta_report, before, after, other)

    def test_census(self):
        """
        Tests the count of methods per output class.
        """
        self.assertEqual(Census(1, 0, 1, 1, 2), census(self.program))
        self.assertEqual({'A': 0, 'B': 0, 'C': 1, 'multiple_outputs': 1, 'methods': 1},
                         census(load('multi_tasks.mj')).to_dict())


if __name__ == '__main__':
    unittest.main()
