"""JSON documents read and written by the logmodkit command.

Every input document is a JSON object with a ``"type"`` tag. Parsing is
strict: unknown or missing fields are rejected, integers may be given as JSON
numbers or as decimal strings, and the objects a document describes are built
(and so validated) while parsing. Integers above 2**53 are written back as
decimal strings.
"""
import json
import logging
from dataclasses import dataclass, field

from django.conf import settings
from django.core.exceptions import ValidationError

from .exceptions import LogModError
from .ideals import MonoidIdeal
from .lattice import Lattice
from .logdim import Stratification, Stratum
from .monoids import LatticeMonoid, MonoidHom

logger = logging.getLogger(__name__)

SAFE_INTEGER = 2 ** 53


class ParseError(Exception):
    """Malformed input text, with the position of the problem."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f'{message} (line {line}, column {column})')
        self.message = message
        self.line = line
        self.column = column

    def as_document(self):
        return {'error': 'ParseError', 'message': self.message,
                'line': self.line, 'column': self.column}


@dataclass(frozen=True)
class Document:
    """A parsed document: its raw JSON data and the objects built from it."""
    type: str
    data: dict = field(compare=True, hash=False)
    objects: dict = field(default_factory=dict, compare=False, hash=False)

    def __getitem__(self, name):
        return self.objects[name]


SCHEMAS = {
    'monoid': ('ambient_rank', 'generators'),
    'hom': ('source', 'target', 'matrix'),
    'ideal': ('base', 'generators'),
    'cone': ('ambient_rank', 'rays', 'lattice'),
    'face_pair': ('monoid', 'face'),
    'subgroup': ('monoid', 'lattice'),
    'extension': ('source', 'target'),
    'lift': ('base', 'generators', 'valuation'),
    'family': ('monoid', 'functionals'),
    'cover': ('ambient_rank', 'sigma_rays', 'subcones'),
    'fan': ('ambient_rank', 'cones'),
    'stratification': ('strata',),
    'tower': ('base', 'stages'),
    'element': ('monoid', 'element'),
}

MONOID_FIELDS = ('ambient_rank', 'generators')
STRATUM_FIELDS = ('name', 'closure_dim', 'char_monoid')
STAGE_FIELDS = ('generators',)


def _integer(value, where):
    if isinstance(value, bool):
        raise ValidationError(f'{where}: expected an integer, got a boolean', code='type')
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value[1:] if value.startswith('-') else value
        if text.isascii() and text.isdigit():
            return int(value)
    raise ValidationError(f'{where}: expected an integer, got {value!r}', code='type')


def _list(value, where):
    if not isinstance(value, list):
        raise ValidationError(f'{where}: expected a list', code='type')
    return value


def _vector(value, where, length=None):
    coords = tuple(_integer(c, f'{where}[{i}]') for i, c in enumerate(_list(value, where)))
    if length is not None and len(coords) != length:
        raise ValidationError(f'{where}: expected {length} coordinates, got {len(coords)}',
                              code='length')
    return coords


def _vectors(value, where, length=None):
    return [_vector(v, f'{where}[{i}]', length) for i, v in enumerate(_list(value, where))]


def _object(value, where, required, optional=()):
    if not isinstance(value, dict):
        raise ValidationError(f'{where}: expected an object', code='type')
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        raise ValidationError(f'{where}: unknown fields {unknown}', code='unknown_field')
    missing = [name for name in required if name not in value]
    if missing:
        raise ValidationError(f'{where}: missing fields {missing}', code='missing_field')
    return value


def _rank(value, where):
    rank = _integer(value, where)
    if rank < 0:
        raise ValidationError(f'{where}: rank must be nonnegative', code='rank')
    if rank > settings.LOGMODKIT_MAX_RANK:
        raise ValidationError(
            f'{where}: rank {rank} exceeds LOGMODKIT_MAX_RANK={settings.LOGMODKIT_MAX_RANK}',
            code='rank')
    return rank


def _built(factory, where):
    """Run a constructor, turning domain errors into validation errors."""
    try:
        return factory()
    except LogModError as exc:
        raise ValidationError(f'{where}: {exc.message}', code=exc.code)


def _monoid(value, where):
    body = _object(value, where, MONOID_FIELDS)
    rank = _rank(body['ambient_rank'], f'{where}.ambient_rank')
    generators = _vectors(body['generators'], f'{where}.generators', rank)
    return _built(lambda: LatticeMonoid(generators, rank), where)


def _cones(value, where, rank):
    return [_vectors(rays, f'{where}[{i}]', rank) for i, rays in enumerate(_list(value, where))]


def _build(kind, data):
    objects = {}
    if 'ambient_rank' in data:
        objects['ambient_rank'] = _rank(data['ambient_rank'], 'ambient_rank')
    for name in ('monoid', 'face', 'source', 'target', 'base'):
        if name in data:
            objects[name] = _monoid(data[name], name)
    rank = objects.get('ambient_rank')

    if kind == 'monoid':
        body = {name: data[name] for name in MONOID_FIELDS}
        objects['monoid'] = _monoid(body, 'document')
    elif kind == 'hom':
        source, target = objects['source'], objects['target']
        matrix = _vectors(data['matrix'], 'matrix', source.ambient_rank)
        objects['hom'] = _built(lambda: MonoidHom(source, target, matrix), 'hom')
    elif kind in ('ideal', 'lift'):
        base = objects['base']
        generators = _vectors(data['generators'], 'generators', base.ambient_rank)
        objects['ideal'] = _built(lambda: MonoidIdeal(base, generators), 'ideal')
        if kind == 'lift':
            objects['valuation'] = _vector(data['valuation'], 'valuation', base.ambient_rank)
    elif kind == 'cone':
        objects['rays'] = _vectors(data['rays'], 'rays', rank)
        basis = _vectors(data['lattice'], 'lattice', rank)
        objects['lattice'] = Lattice(basis, rank)
    elif kind == 'subgroup':
        monoid = objects['monoid']
        basis = _vectors(data['lattice'], 'lattice', monoid.ambient_rank)
        objects['lattice'] = Lattice(basis, monoid.ambient_rank)
    elif kind == 'family':
        monoid = objects['monoid']
        objects['functionals'] = _vectors(data['functionals'], 'functionals', monoid.ambient_rank)
    elif kind == 'cover':
        objects['sigma_rays'] = _vectors(data['sigma_rays'], 'sigma_rays', rank)
        objects['subcones'] = _cones(data['subcones'], 'subcones', rank)
    elif kind == 'fan':
        objects['cones'] = _cones(data['cones'], 'cones', rank)
    elif kind == 'stratification':
        strata = []
        for i, item in enumerate(_list(data['strata'], 'strata')):
            where = f'strata[{i}]'
            item = _object(item, where, STRATUM_FIELDS)
            if not isinstance(item['name'], str):
                raise ValidationError(f'{where}.name: expected a string', code='type')
            dim = _integer(item['closure_dim'], f'{where}.closure_dim')
            if dim < 0:
                raise ValidationError(f'{where}.closure_dim: expected a nonnegative integer',
                                      code='range')
            char = _monoid(item['char_monoid'], f'{where}.char_monoid')
            strata.append(_built(lambda: Stratum(item['name'], dim, char), where))
        try:
            objects['stratification'] = Stratification(strata)
        except ValueError as exc:
            raise ValidationError(str(exc), code='duplicate')
    elif kind == 'tower':
        base = objects['base']
        stages = []
        for i, item in enumerate(_list(data['stages'], 'stages')):
            where = f'stages[{i}]'
            item = _object(item, where, STAGE_FIELDS, optional=('chart',))
            chart = item.get('chart')
            if chart is not None:
                chart = _integer(chart, f'{where}.chart')
            stages.append((_vectors(item['generators'], f'{where}.generators', base.ambient_rank),
                           chart))
        objects['stages'] = stages
    elif kind == 'element':
        objects['element'] = _vector(data['element'], 'element', objects['monoid'].ambient_rank)
    return objects


def parse_document(text):
    """Parse one JSON document into a :class:`Document`."""
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ParseError(f'input is not UTF-8: {exc.reason}')
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno)
    if not isinstance(data, dict):
        raise ValidationError('a document must be a JSON object', code='type')
    kind = data.get('type')
    if kind not in SCHEMAS:
        raise ValidationError(f'unknown document type {kind!r}', code='unknown_type')
    _object(data, kind, ('type',) + tuple(SCHEMAS[kind]))
    document = Document(kind, encode(data), _build(kind, data))
    logger.debug('parsed %s document', kind)
    return document


def encode(value):
    """Make a result JSON-safe: tuples become lists, big integers strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > SAFE_INTEGER else value
    if isinstance(value, dict):
        return {key: encode(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(item) for item in value]
    raise TypeError(f'cannot encode {type(value).__name__}')


def serialize_document(value):
    """One line of JSON for a document or result."""
    if isinstance(value, Document):
        value = value.data
    return json.dumps(encode(value), separators=(',', ':'))


def monoid_data(monoid, tagged=False):
    data = {'ambient_rank': monoid.ambient_rank,
            'generators': [list(g) for g in monoid.generators]}
    if tagged:
        data = {'type': 'monoid', **data}
    return data
