import unittest

from respslice import lang
from respslice.interp import (Interpreter, TraceEvent, MimplObject, run, equivalent, random_inputs, render)
from respslice._testing.corpus import load


class InterpTest(unittest.TestCase):
    """
    Tests the reference interpreter and the trace comparison.
    """
    sort = load('sort_and_normalize.mj')
    arithmetic = lang.parse('int divide(int a, int b) { return a / b; }\n'
                            'int rest(int a, int b) { return a % b; }\n'
                            'void third(int[] xs) { print(xs[3]); }\n'
                            'bool guarded(int[] xs) { return length(xs) > 0 && xs[0] > 0; }\n')

    def test_trace(self):
        """
        Tests the prints and the final state of an array sorted and normalized in place.
        """
        trace = run(self.sort, 'SortAndNormalize', ([3, 1, 2],))
        self.assertEqual(['[1, 2, 3]', '[1, 2, 3]'], trace.printed())
        self.assertEqual(TraceEvent('param-final-state', ('ArrayIn', '[1, 2, 3]')), trace.events[-1])
        trace = run(self.sort, 'SortAndNormalize', ([-4, 2],))
        self.assertEqual(['[-4, 2]', '[4, 2]'], trace.printed())

    def test_globals_and_return(self):
        """
        Tests the order of final state events and the return value.
        """
        trace = run(load('delete_parent.mj'), 'deleteParent', ([-1], 0))
        self.assertEqual([TraceEvent('global-final-state', ('count', '1')),
                          TraceEvent('param-final-state', ('parent', '[-1]')),
                          TraceEvent('return-value', '0')], list(trace.events))

    def test_division(self):
        """
        Tests that division truncates toward zero and division by zero ends the run with an error.
        """
        self.assertEqual('-3', run(self.arithmetic, 'divide', (7, -2)).events[-1].payload)
        self.assertEqual('-1', run(self.arithmetic, 'rest', (-7, 2)).events[-1].payload)
        trace = run(self.arithmetic, 'divide', (1, 0))
        self.assertTrue(trace.failed)
        self.assertEqual(TraceEvent('error', 'division by zero'), trace.events[-1])

    def test_errors(self):
        """
        Tests out of bounds access, operands evaluated on both sides and wrong argument counts.
        """
        trace = run(self.arithmetic, 'third', ([1, 2],))
        self.assertEqual('error', trace.events[-1].kind)
        self.assertIn('out of bounds', trace.events[-1].payload)
        self.assertEqual('error', run(self.arithmetic, 'guarded', ([],)).events[-1].kind)
        self.assertEqual('true', run(self.arithmetic, 'guarded', ([4],)).events[-1].payload)
        self.assertRaises(ValueError, run, self.arithmetic, 'divide', (1,))
        self.assertRaises(KeyError, run, self.arithmetic, 'missing', ())
        self.assertRaises(ValueError, Interpreter, self.arithmetic, 0)

    def test_timeout(self):
        """
        Tests that a run out of fuel ends with a timeout event.
        """
        trace = run(self.sort, 'SortAndNormalize', ([5, 4, 3, 2, 1],), fuel=10)
        self.assertTrue(trace.timed_out)
        self.assertEqual([], trace.printed())

    def test_random_inputs(self):
        """
        Tests that random inputs depend on the seed only.
        """
        method = self.sort.method('SortAndNormalize')
        self.assertEqual(random_inputs(method, 3, 5), random_inputs(method, 3, 5))
        self.assertEqual(5, len(random_inputs(method, 3, 5)))
        self.assertTrue(all(isinstance(args[0], list) for args in random_inputs(method, 3, 5)))

    def test_equivalent(self):
        """
        Tests the comparison of a program with itself and with a changed copy.
        """
        method = self.sort.method('SortAndNormalize')
        inputs = random_inputs(method, 0, 10)
        self.assertTrue(equivalent(self.sort, self.sort, 'SortAndNormalize', inputs))
        changed = lang.parse(lang.unparse(self.sort).replace('* 10', '* 20'))
        result = equivalent(self.sort, changed, 'SortAndNormalize', [([1],)])
        self.assertFalse(result)
        self.assertEqual(1, result.position)
        self.assertEqual(TraceEvent('print', '[1]'), result.expected)
        self.assertIn('at event 1', result.report())

    def test_render(self):
        """
        Tests the text of printed values.
        """
        self.assertEqual('true', render(True))
        self.assertEqual('null', render(None))
        self.assertEqual('Box{v=[1, 2]}', render(MimplObject('Box', {'v': [1, 2]})))


if __name__ == '__main__':
    unittest.main()
