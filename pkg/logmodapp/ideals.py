"""Monoid ideals and their log blow-ups.

The blow-up of a monoid P at an ideal I is described chart by chart: the chart
at a in I is the saturation of P + {b - a : b in I}, and its cone in the dual
of P is where a attains min over I. Together the chart cones form a fan
subdividing the dual cone of P.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .cones import Cone
from .exceptions import (
    BaseMismatch, DimensionMismatch, EmptyIdeal, GeneratorOutsideMonoid, GroupMismatch,
    InvalidValuation, NotAFan, NotAnExtension, NotSaturated,
)
from .fans import RationalFan
from .lattice import add, dot, neg, sub, vector
from .monoids import LatticeMonoid, saturate

logger = logging.getLogger(__name__)


class MonoidIdeal:
    """A finitely generated ideal of a monoid.

    Generators that lie in the ideal generated by the others are dropped.
    """

    def __init__(self, base, generators):
        self.base = base
        gens = []
        for g in generators:
            g = vector(g)
            if len(g) != base.ambient_rank:
                raise DimensionMismatch(
                    f'ideal generator {list(g)} does not have length {base.ambient_rank}')
            if not base.contains(g):
                raise GeneratorOutsideMonoid(f'{list(g)} is not in {base!r}')
            if g not in gens:
                gens.append(g)
        kept = sorted(gens)
        for g in sorted(gens):
            others = [h for h in kept if h != g]
            if any(base.contains(sub(g, h)) for h in others):
                kept = others
        self.generators = tuple(kept)

    @classmethod
    def unit(cls, base):
        return cls(base, [(0,) * base.ambient_rank])

    def __eq__(self, other):
        if not isinstance(other, MonoidIdeal):
            return NotImplemented
        return (self.base == other.base
                and all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        return f'MonoidIdeal({[list(g) for g in self.generators]} over {self.base!r})'

    def __len__(self):
        return len(self.generators)

    def contains(self, x):
        return any(self.base.contains(sub(x, g)) for g in self.generators)

    def __contains__(self, x):
        return self.contains(x)


@dataclass(frozen=True)
class BlowupChart:
    generator: tuple
    chart_monoid: LatticeMonoid
    chart_cone: Cone
    inequalities: tuple
    redundant: bool = False

    def admits(self, functional):
        """Whether the valuation given by ``functional`` lies in this chart."""
        return all(dot(functional, g) >= 0 for g in self.inequalities)


def ideal_product(first, second):
    if first.base != second.base:
        raise BaseMismatch('ideals live in different monoids')
    return MonoidIdeal(first.base, [add(a, b) for a in first.generators for b in second.generators])


def chart_at(ideal, a):
    """The chart of the blow-up of ``ideal`` at an element ``a`` of the ideal."""
    a = vector(a)
    base = ideal.base
    if not ideal.contains(a):
        raise GeneratorOutsideMonoid(f'{list(a)} is not in {ideal!r}')
    differences = [sub(b, a) for b in ideal.generators]
    monoid = saturate(LatticeMonoid(list(base.generators) + differences, base.ambient_rank))
    inequalities = tuple(base.generators) + tuple(d for d in differences if any(d))
    cone = Cone.from_inequalities(inequalities, base.ambient_rank, equations=base.cone.equations)
    redundant = cone.dimension < base.cone.dual().dimension
    return BlowupChart(a, monoid, cone, inequalities, redundant)


def blowup_charts(ideal):
    """One chart per ideal generator, in generator order."""
    if not ideal.generators:
        raise EmptyIdeal('cannot blow up the empty ideal')
    charts = [chart_at(ideal, a) for a in ideal.generators]
    fan = RationalFan([c.chart_cone for c in charts if not c.redundant],
                      support=ideal.base.cone.dual())
    if not fan.covers_support():
        raise NotAFan(f'charts of {ideal!r} do not cover the dual cone')
    logger.debug('blow-up of %r: %d charts, %d redundant', ideal, len(charts),
                 sum(c.redundant for c in charts))
    return charts


def blowup_fan(ideal):
    charts = blowup_charts(ideal)
    return RationalFan([c.chart_cone for c in charts if not c.redundant],
                       support=ideal.base.cone.dual())


def _shells(n):
    """All of Z^n, one l1-sphere at a time, each in lexicographic order."""
    radius = 0
    while True:
        for point in product(range(-radius, radius + 1), repeat=n):
            if sum(abs(c) for c in point) == radius:
                yield point
        radius += 1


def _denominator(monoid, element):
    """The first b of monoid, by l1 norm then lex order, with element + b in monoid."""
    for b in _shells(monoid.ambient_rank):
        if monoid.contains(b) and monoid.contains(add(element, b)):
            return b


class Factorization(NamedTuple):
    ideal: MonoidIdeal
    denominator: tuple


def factor_gp_iso_extension(small, large):
    """Write the extension small -> large as a blow-up followed by one chart.

    Returns an ideal I of ``small`` and an element s so that the chart of the
    blow-up at I over s equals ``large``.
    """
    if small.ambient_rank != large.ambient_rank:
        raise DimensionMismatch('monoids live in different lattices')
    if not all(large.contains(g) for g in small.generators):
        raise NotAnExtension(f'{small!r} is not contained in {large!r}')
    if small.gp_lattice != large.gp_lattice:
        raise GroupMismatch('the extension changes the group')
    if not (small.is_saturated and large.is_saturated):
        raise NotSaturated('both monoids must be saturated')
    denominators = [_denominator(small, p) for p in large.generators]
    s = (0,) * small.ambient_rank
    for b in denominators:
        s = add(s, b)
    ideal = MonoidIdeal(small, [add(p, s) for p in large.generators] + [s])
    chart = chart_at(ideal, s)
    if chart.chart_monoid != large:
        raise AssertionError(f'chart at {list(s)} does not reconstruct {large!r}')
    logger.debug('factored %r -> %r through %r at %s', small, large, ideal, s)
    return Factorization(ideal, s)


def lift_valuative_through_blowup(ideal, valuation):
    """The chart of the generator where the valuation is smallest."""
    functional = vector(getattr(valuation, 'functional', valuation))
    base = ideal.base
    if len(functional) != base.ambient_rank:
        raise DimensionMismatch('valuation does not pair with the base monoid')
    if any(dot(functional, g) < 0 for g in base.generators):
        raise InvalidValuation(f'{list(functional)} is negative on {base!r}')
    if not ideal.generators:
        raise EmptyIdeal('cannot lift through the blow-up of the empty ideal')
    a = min(ideal.generators, key=lambda g: (dot(functional, g), g))
    chart = chart_at(ideal, a)
    if not chart.admits(functional):
        raise AssertionError(f'chart at {list(a)} does not admit {list(functional)}')
    if any(dot(functional, g) < 0 for g in chart.chart_monoid.generators):
        raise AssertionError(f'{list(functional)} is negative on the chart at {list(a)}')
    return chart


def separating_ideal(monoid, element):
    """An ideal (a, b) with a - b = element.

    Each chart of its blow-up contains element or its negative.
    """
    element = vector(element)
    if len(element) != monoid.ambient_rank:
        raise DimensionMismatch('element does not live in the monoid lattice')
    if not monoid.gp_lattice.contains(element):
        raise GroupMismatch(f'{list(element)} is not in the group of {monoid!r}')
    b = _denominator(monoid, element)
    ideal = MonoidIdeal(monoid, [add(element, b), b])
    for chart in blowup_charts(ideal):
        if not (chart.chart_monoid.contains(element) or chart.chart_monoid.contains(neg(element))):
            raise AssertionError(f'chart at {list(chart.generator)} separates nothing')
    return ideal
