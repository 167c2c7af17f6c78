import json
import os
import shutil
import tempfile
import unittest

from respslice.cli import main, EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_REJECTED
from respslice._testing.corpus import fixture_path


class CliTest(unittest.TestCase):
    """
    Tests the commands of the command line interface and their exit codes.
    """

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.sort = os.path.join(self.tmp, 'sort.mj')
        self.final = os.path.join(self.tmp, 'final.mj')
        shutil.copy(fixture_path('sort_and_normalize.mj'), self.sort)
        shutil.copy(fixture_path('get_maximum_or_minimum.mj'), self.final)

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def out(self, name: str) -> str:
        return os.path.join(self.tmp, name)

    def read(self, name: str) -> str:
        with open(self.out(name), encoding='utf8') as f:
            return f.read()

    def test_suggest(self):
        """
        Tests suggestions as JSON and as a table.
        """
        self.assertEqual(EXIT_OK, main(['suggest', self.sort, '--out', self.out('s.json')]))
        documents = json.loads(self.read('s.json'))
        self.assertEqual('SortAndNormalize', documents[0]['method'])
        self.assertEqual(8, len(documents[0]['candidates']))
        self.assertEqual(EXIT_OK, main(['suggest', self.tmp, '--format', 'table', '--out', self.out('s.txt')]))
        self.assertIn('rejections per rule', self.read('s.txt'))

    def test_apply(self):
        """
        Tests applying a candidate with the behavior check.
        """
        code = main(['apply', self.sort, '--method', 'SortAndNormalize', '--candidate', '0', '--verify',
                     '--out', self.out('applied.mj')])
        self.assertEqual(EXIT_OK, code)
        self.assertIn('extracted_ArrayIn_8', self.read('applied.mj'))

    def test_rejected(self):
        """
        Tests that a rejected candidate is applied only when forced.
        """
        args = ['apply', self.final, '--method', 'getMaximumOrMinimum', '--candidate', '0', '--out',
                self.out('f.mj')]
        self.assertEqual(EXIT_REJECTED, main(args))
        self.assertFalse(os.path.exists(self.out('f.mj')))
        self.assertEqual(EXIT_OK, main(args + ['--force']))
        self.assertEqual(EXIT_OK, main(args + ['--disable-rule', '3']))

    def test_usage_errors(self):
        """
        Tests missing files, unknown commands and candidates.
        """
        self.assertEqual(EXIT_USAGE, main([]))
        self.assertEqual(EXIT_USAGE, main(['refactor', self.sort]))
        self.assertEqual(EXIT_USAGE, main(['suggest', self.out('missing.mj')]))
        self.assertEqual(EXIT_USAGE, main(['apply', self.sort, '--method', 'SortAndNormalize', '--candidate', '8']))
        self.assertEqual(EXIT_USAGE, main(['run', self.sort, '--method', 'missing']))
        self.assertEqual(EXIT_USAGE, main(['suggest', self.sort, '--max-overlap', '3']))

    def test_parse_errors(self):
        """
        Tests that invalid programs give exit code 2.
        """
        broken = self.out('broken.mj')
        with open(broken, 'w', encoding='utf8') as f:
            f.write('void f( {\n')
        self.assertEqual(EXIT_PARSE, main(['suggest', broken, self.sort, '--out', self.out('s.json')]))
        self.assertEqual(1, len(json.loads(self.read('s.json'))))
        self.assertEqual(EXIT_PARSE, main(['run', broken, '--method', 'f']))

    def test_run(self):
        """
        Tests printing the output trace of a run.
        """
        code = main(['run', self.sort, '--method', 'SortAndNormalize', '--args', '[3, 1, 2]', '--out',
                     self.out('trace.jsonl')])
        self.assertEqual(EXIT_OK, code)
        events = [json.loads(line) for line in self.read('trace.jsonl').splitlines()]
        self.assertEqual({'kind': 'print', 'value': '[1, 2, 3]'}, events[0])
        self.assertEqual('param-final-state', events[-1]['kind'])

    def test_reports(self):
        """
        Tests metrics, census, regions and criteria output.
        """
        self.assertEqual(EXIT_OK, main(['metrics', self.sort, '--csv', self.out('m.csv')]))
        self.assertTrue(self.read('m.csv').startswith('method,tightness'))
        self.assertEqual(EXIT_OK, main(['census', self.tmp, '--out', self.out('c.json')]))
        self.assertEqual(2, len(json.loads(self.read('c.json'))))
        self.assertEqual(EXIT_OK, main(['dump-regions', self.sort, '--method', 'SortAndNormalize', '--out',
                                        self.out('r.json')]))
        self.assertIn('boundary', json.loads(self.read('r.json')))
        self.assertEqual(EXIT_OK, main(['dump-criteria', self.sort, '--method', 'SortAndNormalize', '--out',
                                        self.out('k.json')]))
        self.assertEqual('C', json.loads(self.read('k.json'))['method_type'])
        self.assertEqual(EXIT_OK, main(['dump-graphs', self.sort, '--method', 'SortAndNormalize', '--out',
                                        self.out('g.dot')]))
        self.assertIn('digraph', self.read('g.dot'))

    def test_eval(self):
        """
        Tests scoring suggestion documents against a ground truth.
        """
        main(['suggest', self.sort, '--out', self.out('s.json')])
        with open(self.out('truth.json'), 'w', encoding='utf8') as f:
            json.dump({'method': 'SortAndNormalize', 'occurrences': [[9, 10, 11, 12, 13, 14, 15, 16, 17, 18]]}, f)
        code = main(['eval', '--truth', self.out('truth.json'), '--suggestions', self.out('s.json'), '--out',
                     self.out('e.txt')])
        self.assertEqual(EXIT_OK, code)
        self.assertIn('overall', self.read('e.txt'))


if __name__ == '__main__':
    unittest.main()
