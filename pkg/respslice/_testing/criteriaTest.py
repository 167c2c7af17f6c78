import unittest

from respslice.analysis import MethodAnalysis
from respslice.criteria import (SlicingCriterion, OutputInstruction, classify_outputs, output_criteria, node_criteria,
                                other_criteria, method_type)
from respslice._testing.corpus import load


class CriteriaTest(unittest.TestCase):
    """
    Tests the detection of output instructions and the derivation of slicing criteria.
    """
    multi = load('multi_tasks.mj')
    sort = MethodAnalysis(p := load('sort_and_normalize.mj'), p.method('SortAndNormalize'))

    def test_output_criteria(self):
        """
        Tests the criteria of a method printing two variables and returning a third.
        """
        method = self.multi.method('multiTasks')
        outputs = classify_outputs(method, self.multi)
        self.assertEqual([15, 25], [o.stmt_id for o in outputs])
        self.assertEqual([(15, 'name'), (15, 'GPA'), (25, 'rank')],
                         [(c.stmt_id, c.variable) for c in output_criteria(method, outputs)])
        self.assertEqual('C', method_type(outputs))

    def test_categories(self):
        """
        Tests the categories of output instructions.
        """
        program = load('delete_parent.mj')
        outputs = classify_outputs(program.method('deleteParent'), program)
        self.assertEqual([OutputInstruction(11, 'print-stream', ('iparent',)),
                          OutputInstruction(12, 'global-or-field-modify', ('count',)),
                          OutputInstruction(13, 'return-stmt', ('iparent2',))], outputs)

    def test_call_without_result(self):
        """
        Tests that only calls without side effects on their arguments count as output instructions.
        """
        program_text = ('class Box { int v; }\n'
                        'void show(Box b) { print(b.v); }\n'
                        'void fill(Box b, int a) { b.v = a; }\n'
                        'void run(Box b, int a) { fill(b, a); show(b); }\n')
        from respslice import lang
        program = lang.parse(program_text)
        outputs = classify_outputs(program.method('run'), program)
        self.assertEqual([OutputInstruction(2, 'call-no-result', ('b',))], outputs)

    def test_method_type(self):
        """
        Tests the classification by outputs.
        """
        self.assertEqual('A', method_type([]))
        self.assertEqual('A', method_type([OutputInstruction(3, 'return-stmt', ('c',))]))
        self.assertEqual('B', method_type([OutputInstruction(3, 'print-stream', ('c', 'd'))]))
        self.assertEqual('C', self.sort.method_type)

    def test_node_criteria(self):
        """
        Tests node criteria and boundary intersections of an array printed twice.
        """
        computation = node_criteria(self.sort.method, self.sort.pdg, self.sort.regions, 'ArrayIn', self.sort.outputs)
        self.assertEqual((8, 18), computation.outputs)
        self.assertEqual((frozenset({6, 7}), frozenset({13, 14, 15, 16})), computation.node_criteria)
        self.assertEqual((frozenset({1, 2, 3, 4, 5}), frozenset({1, 2, 6, 7, 8})), computation.boundary_intersection)
        self.assertRaises(ValueError, node_criteria, self.sort.method, self.sort.pdg, self.sort.regions, 'n',
                          self.sort.outputs)

    def test_other_criteria(self):
        """
        Tests the criteria of complete computation and object state slicing.
        """
        program = load('reordering.mj')
        analysis = MethodAnalysis(program, program.method('reuse'))
        self.assertEqual([SlicingCriterion(2, 'y', 'complete-computation'),
                          SlicingCriterion(4, 'x', 'complete-computation')],
                         other_criteria(analysis.method, analysis.pdg))
        program = load('pan_range_axes.mj')
        analysis = MethodAnalysis(program, program.method('panRangeAxes'))
        self.assertIn(SlicingCriterion(4, 'chart', 'object-state'), other_criteria(analysis.method, analysis.pdg))

    def test_criterion_origin(self):
        """
        Tests the validation of criterion origins.
        """
        self.assertRaises(ValueError, SlicingCriterion, 1, 'x', 'unknown')
        self.assertEqual('(8, ArrayIn)', str(SlicingCriterion(8, 'ArrayIn')))


if __name__ == '__main__':
    unittest.main()
