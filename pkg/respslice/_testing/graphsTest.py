import os
import tempfile
import unittest

from hypothesis import HealthCheck, given, settings

from respslice import graphs, lang
from respslice.graphs import ENTRY, EXIT, DataEdge
from respslice._testing.corpus import load
from respslice._testing.strategies import programs


def reached_before_redefinition(flow, pdg, d: int, variable: str) -> set[int]:
    """
    :return: The nodes some path leaving d enters while no node on it after d overwrites the variable.
    """
    reached = set()
    stack = list(flow.successors(d))
    while stack:
        n = stack.pop()
        if n in reached:
            continue
        reached.add(n)
        if n in pdg.defuse and variable in pdg.defuse[n].kills:
            continue
        stack.extend(flow.successors(n))
    return reached


class GraphsTest(unittest.TestCase):
    """
    Tests the control flow graph, the program dependence graph and the control dependence graph.
    """
    delete_parent = load('delete_parent.mj')
    sort = load('sort_and_normalize.mj')

    def test_blocks_delete_parent(self):
        """
        Tests the basic block partition of deleteParent.
        """
        cfg = graphs.build_cfg(self.delete_parent.method('deleteParent'))
        self.assertEqual([(1,), (2,), (3,), (4, 5), (6,), (7,), (8, 9), (10,), (11,), (12, 13)],
                         [b.stmts for b in cfg.blocks])
        self.assertEqual(5, cfg.block_of(6))
        self.assertRaises(KeyError, cfg.block, 11)

    def test_blocks_sort(self):
        """
        Tests the basic block partition of SortAndNormalize.
        """
        cfg = graphs.build_cfg(self.sort.method('SortAndNormalize'))
        self.assertEqual([(1,), (2,), (3,), (4,), (5, 6, 7), (8, 9), (10,), (11,), (12, 13), (14, 15, 16), (17,),
                          (18,)], [b.stmts for b in cfg.blocks])

    def test_loopback_edges(self):
        """
        Tests that exactly the edges closing a loop are loopback edges.
        """
        cfg = graphs.build_cfg(self.sort.method('SortAndNormalize'))
        loopback = {(u, v) for u, v, back in cfg.graph.edges(data='loopback') if back}
        self.assertEqual({(3, 2), (4, 3), (5, 3), (11, 7)}, loopback)

    def test_statement_flow(self):
        """
        Tests the statement level flow of a loop and a return.
        """
        flow = graphs.statement_flow(self.delete_parent.method('deleteParent'))
        self.assertEqual({3, 4}, set(flow.successors(2)))
        self.assertEqual({2}, set(flow.successors(3)))
        self.assertEqual({EXIT}, set(flow.successors(13)))
        self.assertEqual({1}, set(flow.successors(ENTRY)))

    def test_defuse(self):
        """
        Tests definitions and uses, element assignments and globals included.
        """
        pdg = graphs.build_pdg(self.delete_parent.method('deleteParent'), program=self.delete_parent)
        self.assertEqual({'iparent'}, pdg.defs(1))
        self.assertEqual({'start'}, pdg.uses(1))
        self.assertEqual({'parent'}, pdg.defs(10))
        self.assertIn('parent', pdg.uses(10))
        self.assertEqual({'parent'}, pdg.mutated(10))
        self.assertEqual({'count'}, pdg.defs(12))
        self.assertEqual({'count'}, pdg.uses(12))

    def test_data_edges(self):
        """
        Tests data edges through a loop.
        """
        pdg = graphs.build_pdg(self.delete_parent.method('deleteParent'), program=self.delete_parent)
        self.assertIn(DataEdge(1, 2, 'iparent'), pdg.data_edges)
        self.assertIn(DataEdge(3, 2, 'iparent'), pdg.data_edges)
        self.assertIn(DataEdge(6, 13, 'iparent2'), pdg.data_edges)
        self.assertIn(DataEdge(4, 13, 'iparent2'), pdg.data_edges)
        self.assertNotIn(DataEdge(1, 13, 'iparent2'), pdg.data_edges)

    def test_control_dependence(self):
        """
        Tests the control dependence graph of deleteParent.
        """
        pdg = graphs.build_pdg(self.delete_parent.method('deleteParent'), program=self.delete_parent)
        cdg = graphs.build_cdg(pdg)
        self.assertEqual(ENTRY, cdg.parent(1))
        self.assertEqual(2, cdg.parent(3))
        self.assertEqual(7, cdg.parent(11))
        self.assertEqual({8, 9, 10, 11}, cdg.descendants(7))
        self.assertRaises(KeyError, cdg.parent, 14)

    def test_declaration_edges(self):
        """
        Tests that a declaration is linked to the other statements defining its variable.
        """
        method = load('get_maximum_or_minimum.mj').method('getMaximumOrMinimum')
        pdg = graphs.build_pdg(method)
        self.assertEqual({(1, 6, 'result'), (1, 8, 'result')}, {e for e in pdg.decl_edges if e[2] == 'result'})
        self.assertIn((3, 5, 'hi'), pdg.decl_edges)

    def test_call_effects(self):
        """
        Tests that a callee changing a field of its argument mutates the argument.
        """
        program = load('side_effects.mj')
        effects = graphs.EffectAnalysis(program)
        bump = effects.of_method('bump')
        self.assertEqual(frozenset({0}), bump.mutated_args)
        self.assertTrue(bump.side_effecting)
        self.assertRaises(KeyError, effects.of_method, 'missing')
        pdg = graphs.build_pdg(program.method('useBump'), program=program)
        self.assertEqual({'m', 'c'}, pdg.defs(1))
        self.assertEqual({'c'}, pdg.mutated(1))

    @settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(programs())
    def test_data_edges_generated(self, source):
        """
        Tests that generated methods have a data edge exactly where a definition reaches a use along some path of the
        flow graph.
        """
        program = lang.parse(source)
        method = program.method('gen')
        cfg = graphs.build_cfg(method)
        pdg = graphs.build_pdg(method, cfg, program)
        expected = set()
        for d, du in pdg.defuse.items():
            for v in du.defs:
                for u in reached_before_redefinition(cfg.flow, pdg, d, v):
                    if u != d and u in pdg.defuse and v in pdg.uses(u):
                        expected.add(DataEdge(d, u, v))
        self.assertEqual(expected, set(pdg.data_edges))

    def test_dot(self):
        """
        Tests the DOT output of the graphs.
        """
        method = self.delete_parent.method('deleteParent')
        cfg = graphs.build_cfg(method)
        pdg = graphs.build_pdg(method, cfg, self.delete_parent)
        self.assertTrue(graphs.cfg_to_dot(cfg).startswith('digraph'))
        self.assertIn('iparent2', graphs.pdg_to_dot(pdg))
        self.assertIn('->', graphs.cdg_to_dot(graphs.build_cdg(pdg)))

    def test_draw_graph(self):
        """
        Tests saving the drawings of the graphs to image files.
        """
        method = self.delete_parent.method('deleteParent')
        cfg = graphs.build_cfg(method)
        pdg = graphs.build_pdg(method, cfg, self.delete_parent)
        with tempfile.TemporaryDirectory() as tmp:
            for name, graph in (('cfg', cfg), ('pdg', pdg), ('cdg', graphs.build_cdg(pdg))):
                path = os.path.join(tmp, f'{name}.png')
                graphs.draw_graph(graph, show=False, path=path)
                self.assertTrue(os.path.getsize(path) > 0)


if __name__ == '__main__':
    unittest.main()
