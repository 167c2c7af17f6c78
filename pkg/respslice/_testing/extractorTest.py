from dataclasses import replace
import unittest

from respslice import lang
from respslice.analysis import analyze
from respslice.errors import ExtractionError
from respslice.extractor import apply, infer_signature, name_method
from respslice.interp import equivalent, random_inputs
from respslice.slicing import output_based_slicing, object_state_slices, complete_computation_slices
from respslice._testing.corpus import load


def inputs_of(program, method: str) -> list[tuple]:
    return random_inputs(program.method(method), 0, 20, program)


class ExtractorTest(unittest.TestCase):
    """
    Tests signature inference and the extract method rewrite.
    """
    sort_program = load('sort_and_normalize.mj')
    sort = analyze(sort_program, 'SortAndNormalize')
    sort_candidates = output_based_slicing(sort.method, sort.pdg, sort.regions, sort.outputs)

    def test_name_method(self):
        """
        Tests method names and the suffix avoiding taken names.
        """
        c0 = self.sort_candidates[0]
        self.assertEqual('extracted_ArrayIn_8', name_method(c0))
        result = apply(c0, self.sort_program, self.sort)
        self.assertEqual('extracted_ArrayIn_8_2', name_method(c0, result.program))

    def test_signature(self):
        """
        Tests the parameters and the return value of candidates with and without duplicated statements.
        """
        c0 = infer_signature(self.sort_candidates[0], self.sort)
        self.assertEqual(('ArrayIn',), c0.params)
        self.assertEqual(('ArrayIn', 'int[]'), c0.returns)
        c1 = infer_signature(self.sort_candidates[1], self.sort)
        self.assertEqual(('n', 'ArrayIn'), c1.params)
        c6 = infer_signature(self.sort_candidates[6], self.sort)
        self.assertEqual(('limit', 'ArrayIn'), c6.params)

    def test_placement(self):
        """
        Tests that candidates leaving the block of their first statement are refused.
        """
        for i in (2, 3, 4, 7):
            with self.subTest(candidate=i):
                self.assertRaises(ExtractionError, infer_signature, self.sort_candidates[i], self.sort)

    def test_apply(self):
        """
        Tests the rewritten method and the statement mapping of the first candidate.
        """
        result = apply(self.sort_candidates[0], self.sort_program, self.sort)
        self.assertIn('ArrayIn = extracted_ArrayIn_8(ArrayIn);', result.source())
        self.assertEqual('extracted_ArrayIn_8', result.new_method_name)
        self.assertEqual('both', result.mapping[1])
        self.assertEqual('extracted', result.mapping[5])
        self.assertEqual('remaining', result.mapping[12])
        self.assertIsInstance(result.remaining_method.statement(result.call_site_stmt_id), lang.Assign)
        self.assertIsInstance(result.new_method.body[-1], lang.Return)

    def test_call_statement(self):
        """
        Tests that a candidate changing its array argument only is called as a statement.
        """
        result = apply(self.sort_candidates[5], self.sort_program, self.sort)
        self.assertIn('extracted_ArrayIn_18(n, ArrayIn);', result.source())
        self.assertIsInstance(result.remaining_method.statement(result.call_site_stmt_id), lang.CallStmt)

    def test_applicable_equivalent(self):
        """
        Tests that the applicable candidates of SortAndNormalize preserve its traces.
        """
        inputs = inputs_of(self.sort_program, 'SortAndNormalize')
        for i in (0, 1, 5, 6):
            with self.subTest(candidate=i):
                result = apply(self.sort_candidates[i], self.sort_program, self.sort)
                self.assertTrue(equivalent(self.sort_program, result.program, 'SortAndNormalize', inputs))

    def test_controlling_statement(self):
        """
        Tests that a print moved out of its else branch without the if is refused, while it may be called from
        inside the branch.
        """
        program = load('delete_parent.mj')
        a = analyze(program, 'deleteParent')
        c = next(c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs) if c.output_stmt == 11)
        moved = replace(c, extracted=frozenset({4, 5, 6, 11}), duplicated=frozenset({1, 2, 3}))
        with self.assertRaisesRegex(ExtractionError, 'Statement 7 controls statement 11'):
            infer_signature(moved, a)
        in_branch = replace(c, extracted=frozenset({11}), duplicated=frozenset({1, 2, 3}))
        result = apply(in_branch, program, a)
        self.assertIsInstance(result.remaining_method.statement(7), lang.If)
        self.assertTrue(equivalent(program, result.program, 'deleteParent', inputs_of(program, 'deleteParent')))

    def test_uninitialised_parameter(self):
        """
        Tests that passing a local which is not assigned yet breaks the rewritten program.
        """
        program = load('get_maximum_or_minimum_mutable.mj')
        a = analyze(program, 'getMaximumOrMinimumMutable')
        candidates = output_based_slicing(a.method, a.pdg, a.regions, a.outputs)
        self.assertRaises(ExtractionError, apply, candidates[1], program, a)
        result = apply(candidates[0], program, a)
        self.assertTrue(equivalent(program, result.program, a.method.qualified_name,
                                   inputs_of(program, 'getMaximumOrMinimumMutable')))

    def test_redeclaration(self):
        """
        Tests that declaring the returned local at the top level collides with a later declaration.
        """
        program = load('calculate.mj')
        a = analyze(program, 'calculate')
        c = next(c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs)
                 if c.output_stmt == 5 and c.extracted == {1, 3, 4, 5})
        self.assertRaises(ExtractionError, apply, c, program, a)

    def test_object_state(self):
        """
        Tests that extracting all changes of an object keeps the behavior.
        """
        program = load('pan_range_axes.mj')
        a = analyze(program, 'panRangeAxes')
        c = object_state_slices(a.method, a.pdg, a.regions)[0]
        result = apply(c, program, a)
        self.assertEqual('extracted_chart_4', result.new_method_name)
        self.assertIsInstance(result.remaining_method.body[0], lang.CallStmt)
        self.assertTrue(equivalent(program, result.program, 'panRangeAxes', inputs_of(program, 'panRangeAxes')))

    def test_duplicated_side_effect(self):
        """
        Tests that duplicating a call changing its argument changes the behavior.
        """
        program = load('side_effects.mj')
        a = analyze(program, 'useBump')
        c = next(c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs)
                 if c.output_stmt == 3 and c.extracted == {2, 3})
        result = apply(c, program, a)
        self.assertFalse(equivalent(program, result.program, 'useBump', inputs_of(program, 'useBump')))

    def test_duplicated_allocation(self):
        """
        Tests that duplicating an allocation changes the behavior.
        """
        program = load('object_creation.mj')
        a = analyze(program, 'boxed')
        c = next(c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs)
                 if c.output_stmt == 4 and c.extracted == {2, 3, 4})
        result = apply(c, program, a)
        self.assertFalse(equivalent(program, result.program, 'boxed', inputs_of(program, 'boxed')))

    def test_reordering(self):
        """
        Tests that moving a redefinition above a read changes the behavior.
        """
        program = load('reordering.mj')
        a = analyze(program, 'reuse')
        c = next(c for c in complete_computation_slices(a.method, a.pdg, a.regions) if c.variable == 'x')
        result = apply(c, program, a)
        self.assertIn('int x = extracted_x_4(a);', result.source())
        outcome = equivalent(program, result.program, 'reuse', inputs_of(program, 'reuse'))
        self.assertFalse(outcome)
        self.assertEqual(0, outcome.position)


if __name__ == '__main__':
    unittest.main()
