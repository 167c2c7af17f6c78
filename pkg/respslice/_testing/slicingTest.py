import unittest

from hypothesis import HealthCheck, given, settings, strategies as st
import networkx as nx

from respslice import lang
from respslice.analysis import MethodAnalysis, analyze
from respslice.criteria import SlicingCriterion
from respslice.graphs import ENTRY
from respslice.slicing import (backward_slice, block_based_slices, output_based_slicing, complete_computation_slices,
                               object_state_slices, partition_duplicated, variable_union_slice)
from respslice._testing.corpus import load
from respslice._testing.strategies import programs


def generated(source: str) -> MethodAnalysis:
    program = lang.parse(source)
    return MethodAnalysis(program, program.method('gen'))


def closure_by_fixpoint(pdg, x: int) -> set[int]:
    """
    :return: x and every statement with a path of dependence edges to x, found by sweeping all edges until nothing
        changes.
    """
    result = {x}
    changed = True
    while changed:
        changed = False
        for d, u in pdg.graph.edges():
            if u in result and d != ENTRY and d not in result:
                result.add(d)
                changed = True
    return result


def duplicated_by_pairs(a: MethodAnalysis, inside: set[int], variable: str | None) -> set[int]:
    """
    :return: The statements of inside with a dependence path to some statement outside, checked pair by pair. Data
        edges leaving inside for the returned variable are not followed.
    """
    pdg = a.pdg
    graph = nx.DiGraph()
    for d, u, attr in pdg.graph.edges(data=True):
        returned = attr['kind'] == 'data' and attr['variable'] == variable and d in inside and u not in inside
        if d != ENTRY and not returned:
            graph.add_edge(d, u)
    outside = {s.id for s in a.method.statements()} - inside
    duplicated = set()
    for s in inside:
        for t in outside:
            if s in graph and t in graph and nx.has_path(graph, s, t):
                duplicated.add(s)
                break
    return duplicated


class SlicingTest(unittest.TestCase):
    """
    Tests backward slices, block based slices and the candidate generating algorithms.
    """
    delete_parent = analyze(load('delete_parent.mj'), 'deleteParent')
    sort = analyze(load('sort_and_normalize.mj'), 'SortAndNormalize')

    def test_backward_slice(self):
        """
        Tests the unrestricted slice of the returned variable.
        """
        s = backward_slice(self.delete_parent.pdg, SlicingCriterion(13, 'iparent2'))
        self.assertEqual({1, 2, 3, 4, 5, 6}, s.statements - {13})
        self.assertIn(13, s.statements)
        self.assertIsNone(s.anchor)
        self.assertRaises(KeyError, backward_slice, self.delete_parent.pdg, SlicingCriterion(40, 'iparent2'))
        self.assertRaises(ValueError, backward_slice, self.delete_parent.pdg, SlicingCriterion(6, 'iparent2'),
                          {7, 8})

    def test_block_based_slices(self):
        """
        Tests that each boundary block of a criterion yields one slice bounded by its region.
        """
        ra = self.delete_parent
        slices = block_based_slices(ra.pdg, ra.regions, SlicingCriterion(6, 'iparent2'))
        self.assertEqual([1, 2, 4, 5], [s.anchor for s in slices])
        self.assertEqual([{1, 2, 3, 4, 5, 6}, {2, 3, 4, 5, 6}, {4, 5, 6}, {6}], [set(s.statements) for s in slices])

    def test_output_slices(self):
        """
        Tests the slices of all output instructions of SortAndNormalize.
        """
        self.assertEqual(set(range(1, 8)), self.sort.output_slices[8])
        self.assertEqual(set(range(1, 18)) - {8}, self.sort.output_slices[18])

    def test_output_based_slicing(self):
        """
        Tests the candidates of an array printed before and after normalization.
        """
        a = self.sort
        candidates = output_based_slicing(a.method, a.pdg, a.regions, a.outputs)
        self.assertEqual([8, 8, 8, 8, 8, 18, 18, 18], [c.output_stmt for c in candidates])
        self.assertEqual([1, 2, 3, 4, 5, 6, 7, 8], [c.anchor for c in candidates])
        expected = [set(range(2, 9)), set(range(2, 9)), set(range(3, 9)), set(range(4, 9)), set(range(5, 9)),
                    set(range(9, 19)), set(range(10, 19)), set(range(11, 17)) | {18}]
        self.assertEqual(expected, [set(c.extracted) for c in candidates])
        self.assertEqual([{1}] + [set()] * 7, [set(c.duplicated) for c in candidates])
        self.assertTrue(all(c.variable == 'ArrayIn' and c.algorithm == 'output-based' for c in candidates))

    def test_partition_duplicated(self):
        """
        Tests that statements needed by the remaining method are duplicated.
        """
        a = self.sort
        self.assertEqual((frozenset(range(2, 9)), frozenset({1})),
                         partition_duplicated(a.method, a.pdg, set(range(1, 9)), 'ArrayIn'))
        self.assertEqual((frozenset(), frozenset({1})), partition_duplicated(a.method, a.pdg, {1}))

    def test_complete_computation(self):
        """
        Tests the candidates seeded at the last definition of each local.
        """
        a = analyze(load('reordering.mj'), 'reuse')
        candidates = complete_computation_slices(a.method, a.pdg, a.regions)
        self.assertTrue(candidates)
        self.assertTrue(all(c.algorithm == 'complete-computation' for c in candidates))
        x = [c for c in candidates if c.variable == 'x']
        self.assertEqual({1, 2, 4}, set(x[0].extracted))

    def test_object_state(self):
        """
        Tests the candidate of an object changed in two statements.
        """
        a = analyze(load('pan_range_axes.mj'), 'panRangeAxes')
        candidates = object_state_slices(a.method, a.pdg, a.regions)
        self.assertEqual(1, len(candidates))
        self.assertEqual({1, 2, 3, 4}, set(candidates[0].extracted))
        self.assertEqual({5}, set(candidates[0].remaining))
        self.assertEqual('chart', candidates[0].variable)

    def test_variable_union_slice(self):
        """
        Tests the union of the slices of all definitions of a variable in the method region.
        """
        a = self.sort
        s = variable_union_slice(a.method, a.pdg, a.regions, 'ArrayIn', 1, a.outputs)
        self.assertEqual(1, s.anchor)
        self.assertEqual([6, 7, 13, 14, 15, 16], [c.stmt_id for c in s.criteria])
        self.assertTrue({6, 7, 13, 14, 15, 16} <= s.statements)

    def test_output_statement_closure(self):
        """
        Tests that a print under an else branch joins its candidates together with the if controlling it.
        """
        a = self.delete_parent
        printing = [c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs) if c.output_stmt == 11]
        self.assertTrue(printing)
        for c in printing:
            self.assertIn(7, c.statements)
            self.assertIn(7, c.duplicated)
            self.assertEqual({11}, set(c.extracted))
        self.assertIn(frozenset({1, 2, 3, 7, 11}), [c.statements for c in printing])

    def test_same_statements_once(self):
        """
        Tests that the variables of one print computing the same statements give a single candidate.
        """
        a = analyze(load('interleave.mj'), 'interleave')
        self.assertEqual(['x', 'y'], sorted(v.split('@')[0] for v in a.outputs[1].variables))
        printing = [c for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs) if c.output_stmt == 4]
        self.assertEqual(1, len(printing))
        self.assertEqual({1, 2, 4}, set(printing[0].statements))
        self.assertEqual(frozenset(), printing[0].duplicated)

    @settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(programs())
    def test_entry_slice_generated(self, source):
        """
        Tests that within the region of the first block the slice of every definition is the closure of its
        dependences in generated methods.
        """
        a = generated(source)
        first = a.cfg.blocks[0].id
        region_ = a.regions.region_of(first)
        self.assertEqual({s.id for s in a.method.statements()}, region_)
        for s in a.method.statements():
            expected = closure_by_fixpoint(a.pdg, s.id)
            for v in sorted(a.pdg.defs(s.id)):
                computed = backward_slice(a.pdg, SlicingCriterion(s.id, v), region_, anchor=first)
                self.assertEqual(expected, set(computed.statements))

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(programs(15), st.data())
    def test_partition_generated(self, source, data):
        """
        Tests the split into extracted and duplicated statements of arbitrary statement sets of generated methods.
        """
        a = generated(source)
        inside = data.draw(st.sets(st.sampled_from(sorted(s.id for s in a.method.statements()))))
        variable = data.draw(st.sampled_from([None] + sorted(k for k, s in a.pdg.symbols.items()
                                                               if s.kind == 'local')))
        extracted, duplicated = partition_duplicated(a.method, a.pdg, inside, variable)
        expected = duplicated_by_pairs(a, inside, variable)
        self.assertEqual(expected, set(duplicated))
        self.assertEqual(inside - expected, set(extracted))

    @settings(max_examples=30, deadline=None)
    @given(programs())
    def test_candidate_partition(self, source):
        """
        Tests that extracted and duplicated statements are disjoint and the remaining statements complement the
        extracted ones in generated methods.
        """
        a = generated(source)
        everything = {s.id for s in a.method.statements()}
        for c in output_based_slicing(a.method, a.pdg, a.regions, a.outputs):
            self.assertFalse(c.extracted & c.duplicated)
            self.assertEqual(everything - c.extracted, c.remaining)
            self.assertTrue({d.stmt_id for d in c.slice.criteria} <= c.slice.statements)


if __name__ == '__main__':
    unittest.main()
