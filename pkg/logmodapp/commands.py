"""The operations behind ``manage.py logmodkit <command>``.

Each command takes a parsed :class:`~logmodapp.documents.Document` and
returns a :class:`CommandResult`. Every command registers an oracle check,
a slower computation that ``--oracle`` compares with the fast path.
"""
import logging
from dataclasses import dataclass

from django.core.exceptions import ValidationError
from sympy import Matrix

from . import oracles
from .cones import Cone
from .documents import monoid_data
from .exceptions import OracleMismatch, UnknownCommand
from .fans import RationalFan, SubdivisionTower, chart_monoid_of, poset_krull_dim, subdivision_stage
from .ideals import (
    MonoidIdeal, blowup_charts, chart_at, factor_gp_iso_extension, ideal_product,
    lift_valuative_through_blowup, separating_ideal,
)
from .lattice import add, dot, neg, scale
from .logdim import log_dim, toric_stratification
from .monoids import (
    classify_hom, hilbert_basis, intersect_with_subgroup, localize_at_face, saturate, sharpen,
)
from .valuative import (
    COVERED, covers_monomial_points, dual_cone_rays, qc_finite_subcover_check,
    valuative_extension, valuative_submonoid, witness_uncovered_valuation,
)

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    document: dict
    value: object = None
    dot: str = None


COMMANDS = {}
ORACLES = {}


def command(name, *types):
    def register(handler):
        COMMANDS[name] = (types, handler)
        return handler
    return register


def oracle(name):
    def register(check):
        ORACLES[name] = check
        return check
    return register


def get_command(name):
    if name not in COMMANDS:
        raise UnknownCommand(f'unknown command {name!r}; expected one of {sorted(COMMANDS)}')
    return COMMANDS[name]


def run_command(name, document, oracle=False):
    """Run a command on a document, checking it against its oracle if asked."""
    types, handler = get_command(name)
    if document.type not in types:
        expected = ' or '.join(types)
        raise ValidationError(f'{name} expects a {expected} document, got {document.type}',
                              code='wrong_type')
    logger.info('running %s on a %s document', name, document.type)
    result = handler(document)
    if oracle and name in ORACLES:
        problem = ORACLES[name](document, result.value)
        if problem:
            logger.error('oracle mismatch in %s: %s', name, problem)
            raise OracleMismatch(f'{name}: {problem}')
    return result


def rows(vectors):
    return [list(v) for v in vectors]


def rank_of(vectors):
    return Matrix([list(v) for v in vectors]).rank() if vectors else 0


def chart_data(chart):
    return {
        'generator': list(chart.generator),
        'monoid': monoid_data(chart.chart_monoid),
        'cone_rays': rows(chart.chart_cone.rays),
        'inequalities': rows(chart.inequalities),
        'redundant': chart.redundant,
    }


@command('saturate', 'monoid')
def run_saturate(document):
    result = saturate(document['monoid'])
    return CommandResult(monoid_data(result, tagged=True), result)


@oracle('saturate')
def check_saturate(document, result):
    monoid = document['monoid']
    if monoid.is_sharp and result != oracles.box_saturation(monoid):
        return 'saturation differs from box enumeration'


@command('hilbert', 'cone')
def run_hilbert(document):
    result = hilbert_basis(document['rays'], document['lattice'])
    return CommandResult({'hilbert_basis': rows(result)}, result)


@oracle('hilbert')
def check_hilbert(document, result):
    if result != oracles.box_hilbert_basis(document['rays'], document['lattice']):
        return 'hilbert basis differs from box enumeration'


@command('sharpen', 'monoid')
def run_sharpen(document):
    result = sharpen(document['monoid'])
    units, sharp = result
    return CommandResult({'units': rows(units.basis), 'sharp': monoid_data(sharp)}, result)


@oracle('sharpen')
def check_sharpen(document, result):
    monoid = document['monoid']
    units, sharp = result
    for g in monoid.generators:
        if monoid.contains(neg(g)) != units.contains(g):
            return f'{list(g)} is misplaced between the units and the sharp part'
    if not sharp.is_sharp or sharp.rank != monoid.rank - units.rank:
        return 'sharp part has the wrong rank or still has units'


@command('localize', 'face_pair')
def run_localize(document):
    result = localize_at_face(document['monoid'], document['face'])
    return CommandResult(monoid_data(result, tagged=True), result)


@oracle('localize')
def check_localize(document, result):
    monoid, face = document['monoid'], document['face']
    for g in result.generators:
        if not oracles.localizes(monoid, face, g, 1):
            return f'generator {list(g)} is not a fraction over the face'
    for x in oracles.box(3, monoid.ambient_rank):
        if oracles.localizes(monoid, face, x, 6) and not result.contains(x):
            return f'{list(x)} is a fraction over the face but outside the localization'


@command('intersect', 'subgroup')
def run_intersect(document):
    result = intersect_with_subgroup(document['monoid'], document['lattice'])
    return CommandResult(monoid_data(result, tagged=True), result)


@oracle('intersect')
def check_intersect(document, result):
    monoid = document['monoid']
    if monoid.is_sharp and document['lattice'].rank == monoid.rank:
        expected = oracles.box_hilbert_basis(monoid.cone.rays, document['lattice'])
        if sorted(result.generators) != expected:
            return 'intersection differs from box enumeration'


@command('classify', 'hom')
def run_classify(document):
    flags = classify_hom(document['hom'])
    data = flags.as_dict()
    data.update(m_type=flags.m_type, strict=flags.strict,
                log_modification_chart=flags.log_modification_chart)
    return CommandResult(data, flags)


@oracle('classify')
def check_classify(document, flags):
    hom = document['hom']
    if flags.exact:
        gap = oracles.exactness_gap(hom, 3)
        if gap is not None:
            return f'{list(gap)} maps into the target but lies outside the source'
    if flags.local == bool(oracles.unit_images(hom)):
        return 'locality differs from the unit search'
    if flags.gp_injective:
        for x in oracles.box(3, hom.source.ambient_rank):
            if any(x) and hom.source.gp_lattice.contains(x) and not any(hom(x)):
                return f'{list(x)} is in the kernel of an injective map'


@command('blowup', 'ideal')
def run_blowup(document):
    ideal = document['ideal']
    charts = blowup_charts(ideal)
    fan = RationalFan([c.chart_cone for c in charts if not c.redundant],
                      support=ideal.base.cone.dual())
    return CommandResult({'charts': [chart_data(c) for c in charts]}, (ideal, charts), fan.to_dot())


@oracle('blowup')
def check_blowup(document, result):
    ideal, charts = result
    dual = ideal.base.cone.dual()
    if oracles.sampled_gap(dual, [c.chart_cone for c in charts], 4) is not None:
        return 'chart cones leave a sampled point of the dual cone uncovered'
    for chart in charts:
        for x in oracles.box(4, dual.ambient_dim):
            if chart.chart_cone.contains(x):
                lowest = min(dot(g, x) for g in ideal.generators)
                if dot(chart.generator, x) != lowest:
                    where = list(chart.generator)
                    return f'{list(x)} is in the chart of {where} but not minimal there'


@command('factorize', 'extension')
def run_factorize(document):
    ideal, s = factor_gp_iso_extension(document['source'], document['target'])
    return CommandResult({'ideal': rows(ideal.generators), 's': list(s)}, (ideal, s))


@oracle('factorize')
def check_factorize(document, result):
    ideal, s = result
    large = document['target']
    if not all(ideal.contains(add(p, s)) for p in large.generators):
        return 'a generator of the extension is not a fraction over s'
    square = ideal_product(ideal, ideal)
    for x in oracles.box(3, large.ambient_rank):
        reached = ideal.contains(add(x, s)) or square.contains(add(x, scale(2, s)))
        if reached and not large.contains(x):
            return f'{list(x)} is on the chart at s but outside the extension'


@command('lift', 'lift')
def run_lift(document):
    chart = lift_valuative_through_blowup(document['ideal'], document['valuation'])
    return CommandResult({'chart': chart_data(chart)}, chart)


@oracle('lift')
def check_lift(document, chart):
    v = document['valuation']
    values = [dot(v, g) for g in document['ideal'].generators]
    if dot(v, chart.generator) != min(values):
        return 'lifted chart does not minimize the valuation'


@command('dualrays', 'monoid')
def run_dualrays(document):
    result = dual_cone_rays(document['monoid'])
    return CommandResult({'dual_rays': rows(result)}, result)


@oracle('dualrays')
def check_dualrays(document, result):
    monoid = document['monoid']
    n = monoid.ambient_rank
    if any(dot(r, g) < 0 for r in result for g in monoid.generators):
        return 'a dual ray is negative on the monoid'
    spanned = Cone.from_rays(result, n)
    for v in oracles.box(3, n):
        if (all(dot(e, v) == 0 for e in monoid.cone.equations)
                and all(dot(v, g) >= 0 for g in monoid.generators)
                and not spanned.contains(v)):
            return f'{list(v)} is in the dual cone but not spanned by the rays'


@command('valextend', 'monoid')
def run_valextend(document):
    result = valuative_extension(document['monoid'])
    data = {'valuation': list(result.functional), 'monoid': monoid_data(result.monoid),
            'trivial': result.is_trivial}
    return CommandResult(data, result)


@oracle('valextend')
def check_valextend(document, result):
    monoid, valuative = document['monoid'], result.monoid
    if not all(valuative.contains(g) for g in monoid.generators):
        return 'extension misses a generator of the monoid'
    if any(valuative.contains(neg(g)) for g in monoid.nonunit_generators):
        return 'extension inverts a non-unit of the monoid'
    for x in oracles.box(3, monoid.ambient_rank):
        if monoid.gp_lattice.contains(x) and not (valuative.contains(x)
                                                   or valuative.contains(neg(x))):
            return f'neither {list(x)} nor its negative is in the extension'


@command('qccheck', 'monoid')
def run_qccheck(document):
    result = qc_finite_subcover_check(document['monoid'])
    return CommandResult({'quasi_compact_shadow': result}, result)


@oracle('qccheck')
def check_qccheck(document, result):
    monoid = document['monoid']
    expected = rank_of(monoid.generators) - rank_of(monoid.unit_lattice.basis) <= 1
    if result != expected:
        return 'finite subcover answer differs from the rank count'


@command('witness', 'family')
def run_witness(document):
    monoid = document['monoid']
    family = [valuative_submonoid(monoid, f) for f in document['functionals']]
    result = witness_uncovered_valuation(monoid, family)
    if result is COVERED:
        return CommandResult({'covered': True}, result)
    return CommandResult({'covered': False, 'witness': list(result.functional)}, result)


@oracle('witness')
def check_witness(document, result):
    monoid = document['monoid']
    if result is COVERED:
        if qc_finite_subcover_check(monoid):
            return None
        return 'family reported as covering a monoid of sharp rank at least 2'
    v = result.functional
    if any(dot(v, g) < 0 for g in monoid.generators):
        return 'witness is negative on the monoid'
    if oracles.factors_through(v, document['functionals'], monoid.gp_lattice):
        return 'witness factors through a member of the family'


@command('covercheck', 'cover')
def run_covercheck(document):
    result = covers_monomial_points(document['sigma_rays'], document['subcones'],
                                    document['ambient_rank'])
    if result is True:
        return CommandResult({'covers': True}, result)
    return CommandResult({'covers': False, 'witness': list(result)}, result)


@oracle('covercheck')
def check_covercheck(document, result):
    n = document['ambient_rank']
    sigma = Cone.from_rays(document['sigma_rays'], n)
    cones = [Cone.from_rays(rays, n) for rays in document['subcones']]
    if result is True:
        gap = oracles.sampled_gap(sigma, cones, 4)
        if gap is not None:
            return f'{list(gap)} is not covered'
    elif not sigma.contains(result) or any(c.contains(result) for c in cones):
        return 'witness is not an uncovered point of sigma'


def _tower(document):
    base = document['base']
    tower = SubdivisionTower(base)
    for generators, chart in document['stages']:
        if chart is None:
            ideal = MonoidIdeal(base, generators)
        else:
            cones = tower.current.maximal_cones
            if not 0 <= chart < len(cones):
                raise ValidationError(f'chart {chart} out of range for {len(cones)} cones',
                                      code='chart')
            ideal = MonoidIdeal(chart_monoid_of(cones[chart], base.gp_lattice), generators)
        tower = subdivision_stage(tower, ideal, chart)
    return tower


@command('zrstage', 'tower')
def run_zrstage(document):
    tower = _tower(document)
    stages = [{'maximal_cones': [rows(c.rays) for c in stage.fan.maximal_cones],
               'transition': list(stage.transition),
               'poset_dim': poset_krull_dim(stage.fan)}
              for stage in tower.stages]
    return CommandResult({'stages': stages}, tower, tower.to_dot())


@oracle('zrstage')
def check_zrstage(document, tower):
    for depth, stage in enumerate(tower.stages):
        if poset_krull_dim(stage.fan) != oracles.chain_dimension(stage.fan):
            return f'stage {depth} poset dimension differs from chain enumeration'


@command('posetdim', 'fan')
def run_posetdim(document):
    n = document['ambient_rank']
    fan = RationalFan([Cone.from_rays(rays, n) for rays in document['cones']])
    return CommandResult({'poset_dim': poset_krull_dim(fan)}, fan, fan.to_dot())


@oracle('posetdim')
def check_posetdim(document, fan):
    if poset_krull_dim(fan) != oracles.chain_dimension(fan):
        return 'poset dimension differs from chain enumeration'


@command('logdim', 'stratification', 'monoid')
def run_logdim(document):
    if document.type == 'monoid':
        stratification = toric_stratification(document['monoid'])
    else:
        stratification = document['stratification']
    result = log_dim(stratification)
    return CommandResult({'log_dim': result}, result)


@oracle('logdim')
def check_logdim(document, result):
    if document.type == 'monoid':
        expected = document['monoid'].rank
    else:
        expected = max(s.closure_dim + max(rank_of(s.char_monoid.generators) - 1, 0)
                       for s in document['stratification'])
    if result != expected:
        return f'log dimension {result} differs from the direct count {expected}'


@command('separate', 'element')
def run_separate(document):
    ideal = separating_ideal(document['monoid'], document['element'])
    return CommandResult({'ideal': rows(ideal.generators)}, ideal)


@oracle('separate')
def check_separate(document, ideal):
    m = document['element']
    for g in ideal.generators:
        chart = chart_at(ideal, g).chart_monoid
        if not (chart.contains(m) or chart.contains(neg(m))):
            return f'chart at {list(g)} contains neither the element nor its negative'
