import json
import tempfile
from dataclasses import replace
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from logmodapp.commands import COMMANDS, ORACLES
from logmodapp.documents import parse_document
from logmodapp.lattice import Lattice
from logmodapp.monoids import classify_hom, sharpen

HERE = Path(__file__).resolve().parent
FIXTURES = HERE / 'fixtures'
GOLDEN = HERE / 'golden'

GOLDEN_RUNS = [
    ('blowup', 'nakayama_blowup.json', 'nakayama_blowup.out'),
    ('qccheck', 'n2.json', 'n2_qccheck.out'),
    ('logdim', 'standard_log_point.json', 'standard_log_point.out'),
    ('logdim', 'toric_plane.json', 'toric_plane.out'),
]


def fixture(name):
    return (FIXTURES / name).read_text(encoding='utf-8')


class CommandTestCase(SimpleTestCase):

    def run_command(self, name, text, *args):
        out = StringIO()
        call_command('logmodkit', name, *args, stdin=StringIO(text), stdout=out)
        return out.getvalue()

    def run_failing(self, name, text, *args):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command('logmodkit', name, *args, stdin=StringIO(text), stdout=out)
        return caught.exception.returncode, out.getvalue()


class GoldenOutputTests(CommandTestCase):

    def test_golden_files(self):
        for name, source, expected in GOLDEN_RUNS:
            with self.subTest(source):
                output = self.run_command(name, fixture(source))
                self.assertEqual(output, (GOLDEN / expected).read_text(encoding='utf-8'))

    def test_plane_log_point(self):
        output = self.run_command('logdim', fixture('n2_log_point.json'))
        self.assertEqual(json.loads(output), {'log_dim': 1})

    def test_tower(self):
        result = json.loads(self.run_command('zrstage', fixture('blowup_tower.json')))
        self.assertEqual([len(s['maximal_cones']) for s in result['stages']], [1, 2, 3])
        self.assertEqual([s['poset_dim'] for s in result['stages']], [2, 2, 2])


class ExitCodeTests(CommandTestCase):

    def test_domain_error(self):
        code, output = self.run_failing('factorize', fixture('not_an_extension.json'))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(output)['error'], 'NotAnExtension')

    def test_malformed_json(self):
        code, output = self.run_failing('saturate', '{"type": ')
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(output)['error'], 'ParseError')

    def test_wrong_document_type(self):
        code, output = self.run_failing('blowup', fixture('n2.json'))
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(output)['error'], 'ValidationError')

    def test_invalid_values_exit_with_two(self):
        stratum = {'name': 'p', 'closure_dim': -1,
                   'char_monoid': {'ambient_rank': 1, 'generators': [[1]]}}
        documents = [
            ('logdim', json.dumps({'type': 'stratification', 'strata': [stratum]})),
            ('saturate', json.dumps({'type': 'monoid', 'ambient_rank': 1,
                                     'generators': [['\u00b2']]})),
        ]
        for name, text in documents:
            with self.subTest(name):
                code, output = self.run_failing(name, text)
                self.assertEqual(code, 2)
                self.assertEqual(json.loads(output)['error'], 'ValidationError')

    def test_unknown_command(self):
        code, output = self.run_failing('explode', fixture('n2.json'))
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(output)['error'], 'UnknownCommand')


class BatchTests(CommandTestCase):

    def test_order_is_kept(self):
        lines = [json.dumps({'type': 'monoid', 'ambient_rank': 1, 'generators': [[k]]})
                 for k in range(1, 9)]
        output = self.run_command('saturate', '\n'.join(lines), '--batch')
        results = [json.loads(line) for line in output.splitlines()]
        self.assertEqual([r['generators'] for r in results], [[[k]] for k in range(1, 9)])
        self.assertEqual(len(results), 8)

    def test_one_failure_sets_the_exit_code(self):
        lines = [fixture('n2.json').strip(), '{"type": "monoid"', fixture('n2.json').strip()]
        code, output = self.run_failing('qccheck', '\n'.join(lines), '--batch')
        self.assertEqual(code, 2)
        results = [json.loads(line) for line in output.splitlines()]
        self.assertEqual(results[0], {'quasi_compact_shadow': False})
        self.assertEqual(results[1]['error'], 'ParseError')
        self.assertEqual(results[2], {'quasi_compact_shadow': False})

    def test_every_line_is_answered(self):
        lines = [fixture('n2.json').strip(), json.dumps(json.loads(fixture('n2.json')))]
        output = self.run_command('dualrays', '\n'.join(lines), '--batch')
        self.assertEqual(len(output.splitlines()), 2)


class OracleTests(CommandTestCase):

    def test_corpus_agrees_with_oracles(self):
        entries = json.loads(fixture('corpus.json'))
        self.assertGreaterEqual(len(entries), 60)
        self.assertEqual({e['command'] for e in entries}, set(COMMANDS))
        self.assertEqual(set(ORACLES), set(COMMANDS))
        for index, entry in enumerate(entries):
            with self.subTest(index=index, command=entry['command']):
                output = self.run_command(entry['command'], json.dumps(entry['document']),
                                          '--oracle')
                self.assertNotIn('OracleMismatch', output)
                self.assertNotIn('"error"', output)


class OracleCheckTests(SimpleTestCase):

    def test_wrong_exactness_is_caught(self):
        document = parse_document(json.dumps({
            'type': 'hom', 'matrix': [[1]],
            'source': {'ambient_rank': 1, 'generators': [[2], [3]]},
            'target': {'ambient_rank': 1, 'generators': [[1]]},
        }))
        flags = classify_hom(document['hom'])
        self.assertIsNone(ORACLES['classify'](document, flags))
        self.assertIn('[1]', ORACLES['classify'](document, replace(flags, exact=True)))
        self.assertIsNotNone(ORACLES['classify'](document, replace(flags, local=False)))

    def test_wrong_units_are_caught(self):
        document = parse_document(json.dumps({
            'type': 'monoid', 'ambient_rank': 2, 'generators': [[1, 0], [-1, 0], [0, 1]],
        }))
        units, sharp = sharpen(document['monoid'])
        self.assertIsNone(ORACLES['sharpen'](document, (units, sharp)))
        self.assertIsNotNone(ORACLES['sharpen'](document, (Lattice([], 2), sharp)))


class FileOptionTests(CommandTestCase):

    def test_input_out_and_dot(self):
        with tempfile.TemporaryDirectory() as tmp:
            tmp = Path(tmp)
            out, dot = tmp / 'charts.json', tmp / 'tower.dot'
            stdout = StringIO()
            call_command('logmodkit', 'zrstage', '--input', str(FIXTURES / 'blowup_tower.json'),
                         '--out', str(out), '--dot', str(dot), stdout=stdout)
            self.assertEqual(stdout.getvalue(), '')
            self.assertEqual(len(json.loads(out.read_text(encoding='utf-8'))['stages']), 3)
            self.assertTrue(dot.read_text(encoding='utf-8').startswith('digraph'))

    def test_input_must_be_utf8(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'bad.json'
            path.write_bytes(b'\xff\xfe{}')
            with self.assertRaises(CommandError) as caught:
                call_command('logmodkit', 'saturate', '--input', str(path), stdout=StringIO())
            self.assertEqual(caught.exception.returncode, 2)
