"""Monomial valuations, valuative submonoids and the finite-subcover criterion.

A monomial valuation is an integer functional that is nonnegative on a monoid.
It factors through the half-space monoid of another functional w exactly when
it is a nonnegative multiple of w, since the dual of a half-space is one ray.
"""
import logging
from dataclasses import dataclass

from .cones import Cone, lattice_points, uncovered_point
from .exceptions import (
    BaseMismatch, DimensionMismatch, InvalidSubcone, InvalidValuation, NotSaturated,
)
from .lattice import add, content, dot, neg, primitive, proportional, scale, vector
from .monoids import LatticeMonoid, sharpen

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialValuation:
    functional: tuple
    primitive_flag: bool = True

    @classmethod
    def on(cls, monoid, functional):
        """Validate ``functional`` against ``monoid`` and wrap it."""
        functional = vector(functional)
        if len(functional) != monoid.ambient_rank:
            raise DimensionMismatch(
                f'valuation {list(functional)} does not pair with rank {monoid.ambient_rank}')
        if any(dot(functional, g) < 0 for g in monoid.generators):
            raise InvalidValuation(f'{list(functional)} is negative on {monoid!r}')
        return cls(functional, content(functional) <= 1)

    def __call__(self, x):
        return dot(self.functional, x)

    @property
    def is_trivial(self):
        return not any(self.functional)


@dataclass(frozen=True)
class ValuativeSubmonoid:
    ambient: LatticeMonoid
    valuation: MonomialValuation
    monoid: LatticeMonoid

    @property
    def functional(self):
        return self.valuation.functional

    @property
    def is_trivial(self):
        return self.valuation.is_trivial


class Covered:
    """Returned when a valuative family leaves no monomial valuation uncovered."""

    def __repr__(self):
        return 'Covered'

    def __bool__(self):
        return False


COVERED = Covered()


def dual_cone_rays(monoid):
    """Primitive extreme rays of the dual cone, taken inside the span of the monoid."""
    return sorted(monoid.cone.facets)


def is_valuative(monoid):
    """True when every x of the group has x or -x in the monoid."""
    return monoid.is_saturated and sharpen(monoid).sharp.rank <= 1


def half_space_monoid(monoid, functional):
    """The saturated monoid {x in gp(monoid) : functional . x >= 0}."""
    cone = Cone.from_inequalities([functional], monoid.ambient_rank,
                                  equations=monoid.cone.equations)
    units, lifts = lattice_points(cone, monoid.gp_lattice)
    return LatticeMonoid(units + [neg(u) for u in units] + lifts, monoid.ambient_rank,
                         normalize=False, saturated=True)


def valuative_submonoid(monoid, functional):
    valuation = MonomialValuation.on(monoid, functional)
    return ValuativeSubmonoid(monoid, valuation, half_space_monoid(monoid, valuation.functional))


def valuative_extension(monoid):
    """A valuative V with P inside V inside gp(P) and V units meeting P in P units."""
    if not monoid.is_saturated:
        raise NotSaturated(f'{monoid!r} is not saturated')
    rays = dual_cone_rays(monoid)
    nonunits = monoid.nonunit_generators
    if not nonunits:
        valuation = MonomialValuation((0,) * monoid.ambient_rank)
        return ValuativeSubmonoid(monoid, valuation, monoid)
    v = (0,) * monoid.ambient_rank
    for r in rays:
        v = add(v, r)
    v = primitive(v)
    while any(dot(v, g) <= 0 for g in nonunits):
        v = primitive(add(v, rays[0]))
    extension = valuative_submonoid(monoid, v)
    _verify_extension(extension)
    logger.debug('valuative extension of %r along %s', monoid, v)
    return extension


def _verify_extension(extension):
    ambient, valuative = extension.ambient, extension.monoid
    if not all(valuative.contains(g) for g in ambient.generators):
        raise InvalidValuation('extension does not contain the base monoid')
    if valuative.gp_lattice != ambient.gp_lattice:
        raise InvalidValuation('extension changed the group')
    if not is_valuative(valuative):
        raise InvalidValuation('extension is not valuative')
    if any(valuative.unit_lattice.contains(g) for g in ambient.nonunit_generators):
        raise InvalidValuation('extension inverts a non-unit of the base monoid')


def qc_finite_subcover_check(monoid):
    """Whether finitely many valuative submonoids can cover every monomial valuation."""
    return sharpen(monoid).sharp.rank <= 1


def _signature(monoid, functional):
    return tuple(dot(functional, b) for b in monoid.gp_lattice.basis)


def _factors_through(monoid, functional, member):
    v = _signature(monoid, functional)
    w = _signature(monoid, member.functional)
    if not any(v):
        return True
    return any(w) and proportional(v, w)


def witness_uncovered_valuation(monoid, family):
    """A monomial valuation factoring through no member of ``family``, or COVERED.

    Candidates run over base + k * r for the sum ``base`` of the dual rays,
    k = 0, 1, 2, ... and the dual rays r in lexicographic order.
    """
    for member in family:
        if member.ambient != monoid:
            raise BaseMismatch('family member is built over a different monoid')
    rays = dual_cone_rays(monoid)
    base = (0,) * monoid.ambient_rank
    for r in rays:
        base = add(base, r)
    base = primitive(base)

    def uncovered(v):
        return not any(_factors_through(monoid, v, member) for member in family)

    if sharpen(monoid).sharp.rank <= 1:
        if uncovered(base):
            return MonomialValuation(base)
        return COVERED
    k = 0
    while True:
        for r in rays:
            v = primitive(add(base, scale(k, r)))
            if uncovered(v):
                _verify_witness(monoid, v, family)
                logger.debug('uncovered valuation %s after %d rounds', v, k)
                return MonomialValuation(v)
        k += 1


def _verify_witness(monoid, v, family):
    if any(dot(v, g) <= 0 for g in monoid.nonunit_generators):
        raise InvalidValuation(f'witness {list(v)} is not strictly positive')
    if any(dot(v, g) != 0 for g in monoid.unit_lattice.basis):
        raise InvalidValuation(f'witness {list(v)} is not a valuation')
    if any(_factors_through(monoid, v, member) for member in family):
        raise InvalidValuation(f'witness {list(v)} factors through the family')


def covers_monomial_points(sigma_rays, subcones, ambient_rank=None):
    """True when the subcones cover sigma, otherwise a witness ray outside all of them."""
    sigma_rays = [vector(r) for r in sigma_rays]
    n = ambient_rank
    if n is None:
        n = len(sigma_rays[0]) if sigma_rays else 0
    sigma = Cone.from_rays(sigma_rays, n)
    cones = []
    for cone in subcones:
        if not isinstance(cone, Cone):
            cone = Cone.from_rays(cone, n)
        if cone.ambient_dim != n:
            raise DimensionMismatch('subcone lives in a different lattice')
        if not sigma.contains_cone(cone):
            raise InvalidSubcone(f'{cone!r} is not inside {sigma!r}')
        cones.append(cone)
    witness = uncovered_point(sigma, cones)
    return True if witness is None else witness
