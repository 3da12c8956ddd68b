import json
from pathlib import Path

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from logmodapp.documents import (
    ParseError, encode, monoid_data, parse_document, serialize_document,
)
from logmodapp.monoids import LatticeMonoid

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def corpus():
    return json.loads((FIXTURES / 'corpus.json').read_text(encoding='utf-8'))


class ParseDocumentTests(SimpleTestCase):

    def test_monoid(self):
        document = parse_document((FIXTURES / 'n2.json').read_text(encoding='utf-8'))
        self.assertEqual(document.type, 'monoid')
        self.assertEqual(document['monoid'], LatticeMonoid([(1, 0), (0, 1)], 2))

    def test_string_integers(self):
        document = parse_document(
            '{"type": "monoid", "ambient_rank": "1", "generators": [["-3"], [5]]}')
        self.assertEqual(document['monoid'].generators, ((-3,), (5,)))

    def test_bytes(self):
        document = parse_document(b'{"type": "monoid", "ambient_rank": 1, "generators": [[1]]}')
        self.assertEqual(document['monoid'].rank, 1)

    def test_malformed_json(self):
        with self.assertRaises(ParseError) as caught:
            parse_document('{"type": "monoid",\n  "ambient_rank": }')
        self.assertEqual(caught.exception.line, 2)
        self.assertEqual(caught.exception.as_document()['error'], 'ParseError')

    def test_not_utf8(self):
        with self.assertRaises(ParseError):
            parse_document(b'\xff\xfe')

    def test_unknown_type(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "sheaf"}')
        with self.assertRaises(ValidationError):
            parse_document('[1, 2]')

    def test_unknown_and_missing_fields(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 1, "generators": [], "x": 1}')
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 1}')

    def test_wrong_length(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 2, "generators": [[1]]}')

    def test_booleans_are_not_integers(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 1, "generators": [[true]]}')

    def test_only_ascii_digits(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 1, "generators": [["\u00b2"]]}')
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 1, "generators": [["-"]]}')

    @override_settings(LOGMODKIT_MAX_RANK=2)
    def test_rank_limit(self):
        with self.assertRaises(ValidationError):
            parse_document('{"type": "monoid", "ambient_rank": 3, "generators": []}')

    def test_ill_formed_hom(self):
        text = json.dumps({
            'type': 'hom',
            'source': {'ambient_rank': 1, 'generators': [[1]]},
            'target': {'ambient_rank': 1, 'generators': [[1]]},
            'matrix': [[-1]],
        })
        with self.assertRaises(ValidationError) as caught:
            parse_document(text)
        self.assertEqual(caught.exception.code, 'IllFormedHom')

    def test_duplicate_strata(self):
        stratum = {'name': 'p', 'closure_dim': 0,
                   'char_monoid': {'ambient_rank': 1, 'generators': [[1]]}}
        with self.assertRaises(ValidationError):
            parse_document(json.dumps({'type': 'stratification', 'strata': [stratum, stratum]}))

    def test_negative_closure_dimension(self):
        stratum = {'name': 'p', 'closure_dim': -1,
                   'char_monoid': {'ambient_rank': 1, 'generators': [[1]]}}
        with self.assertRaises(ValidationError) as caught:
            parse_document(json.dumps({'type': 'stratification', 'strata': [stratum]}))
        self.assertEqual(caught.exception.code, 'range')

    def test_tower_stages(self):
        document = parse_document((FIXTURES / 'blowup_tower.json').read_text(encoding='utf-8'))
        self.assertEqual(document['stages'], [([(1, 0), (0, 1)], None), ([(-1, 1), (1, 0)], 0)])

    def test_every_fixture_parses(self):
        for path in sorted(FIXTURES.glob('*.json')):
            if path.name == 'corpus.json':
                continue
            with self.subTest(path.name):
                parse_document(path.read_text(encoding='utf-8'))
        for entry in corpus():
            with self.subTest(entry['command']):
                parse_document(json.dumps(entry['document']))


class SerializeTests(SimpleTestCase):

    def test_big_integers_become_strings(self):
        self.assertEqual(encode([2 ** 53, 2 ** 53 + 1, -(2 ** 60)]),
                         [2 ** 53, str(2 ** 53 + 1), str(-(2 ** 60))])

    def test_tuples_and_flags(self):
        self.assertEqual(serialize_document({'a': (1, 2), 'b': True, 'c': None}),
                         '{"a":[1,2],"b":true,"c":null}')

    def test_unknown_values(self):
        with self.assertRaises(TypeError):
            encode({'x': object()})

    def test_document_round_trip(self):
        for entry in corpus():
            document = parse_document(json.dumps(entry['document']))
            again = parse_document(serialize_document(document))
            self.assertEqual(again, document)
            self.assertEqual(again.objects.keys(), document.objects.keys())

    def test_big_generators_round_trip(self):
        big = 2 ** 70
        text = serialize_document(monoid_data(LatticeMonoid([(big,)], 1), tagged=True))
        self.assertIn(f'"{big}"', text)
        self.assertEqual(parse_document(text)['monoid'].generators, ((big,),))
