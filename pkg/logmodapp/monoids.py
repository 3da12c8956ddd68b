"""Fine monoids inside integer lattices and homomorphisms between them.

Monoids are given by generators in an ambient lattice Z^n. Sharpness and
saturation are derived from the generators, never assumed.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .cones import Cone, lattice_points
from .exceptions import (
    DimensionMismatch, IllFormedHom, NotAFace, NotPointed, NotSaturated,
    SubgroupNotContained,
)
from .lattice import (
    Lattice, QuotientMap, apply, combine, dot, integer_kernel, neg, scale, sub, vector,
)

logger = logging.getLogger(__name__)


def _check_length(x, n):
    if len(x) != n:
        raise DimensionMismatch(f'vector {list(x)} has length {len(x)}, expected {n}')


class LatticeMonoid:
    """A finitely generated submonoid of Z^n.

    Redundant generators (nonnegative combinations of the others) are removed
    on construction and the rest are kept in lexicographic order. The cone,
    the group lattice and the unit lattice are computed up front.
    """

    def __init__(self, generators, ambient_rank, *, normalize=True, saturated=None):
        self.ambient_rank = ambient_rank
        gens = set()
        for g in generators:
            g = vector(g)
            _check_length(g, ambient_rank)
            if any(g):
                gens.add(g)
        gens = sorted(gens)
        self.cone = Cone.from_rays(gens, ambient_rank)
        self.gp_lattice = Lattice(gens, ambient_rank)
        self.unit_lattice = Lattice([g for g in gens if self._in_lineality(g)], ambient_rank)
        self.generators = tuple(gens)
        if normalize:
            self.generators = tuple(self._minimal_generators(gens))
        self._saturated = saturated

    @classmethod
    def trivial(cls, ambient_rank):
        return cls([], ambient_rank, saturated=True)

    def _in_lineality(self, g):
        return all(dot(f, g) == 0 for f in self.cone.facets)

    def _minimal_generators(self, gens):
        kept = list(gens)
        for g in gens:
            others = [h for h in kept if h != g]
            if LatticeMonoid(others, self.ambient_rank, normalize=False).contains(g):
                kept = others
        return kept

    def __eq__(self, other):
        if not isinstance(other, LatticeMonoid):
            return NotImplemented
        if self.ambient_rank != other.ambient_rank or self.cone != other.cone:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def __hash__(self):
        return hash((self.ambient_rank, self.cone, self.gp_lattice))

    def __repr__(self):
        return f'LatticeMonoid({[list(g) for g in self.generators]}, {self.ambient_rank})'

    @property
    def rank(self):
        """Rank of the group completion."""
        return self.gp_lattice.rank

    @property
    def is_sharp(self):
        return self.unit_lattice.rank == 0

    @property
    def is_group(self):
        return self.unit_lattice.rank == self.gp_lattice.rank

    @property
    def saturated_flag(self):
        return {True: 'yes', False: 'no', None: 'unknown'}[self._saturated]

    @property
    def is_saturated(self):
        if self._saturated is None:
            closure = saturate(self)
            self._saturated = all(self.contains(g) for g in closure.generators)
        return self._saturated

    @cached_property
    def nonunit_generators(self):
        return [g for g in self.generators if not self._in_lineality(g)]

    @cached_property
    def grading(self):
        """Integer functional vanishing on units and at least 1 on every other generator."""
        total = (0,) * self.ambient_rank
        for f in self.cone.facets:
            total = tuple(a + b for a, b in zip(total, f))
        return total

    @cached_property
    def _suffix_cones(self):
        units = list(self.unit_lattice.basis) + [neg(u) for u in self.unit_lattice.basis]
        nonunits = self.nonunit_generators
        return [Cone.from_rays(nonunits[i:] + units, self.ambient_rank)
                for i in range(len(nonunits))]

    @cached_property
    def sharp_projection(self):
        """Projection of the group onto the group of the sharpening."""
        return QuotientMap(self.gp_lattice, self.unit_lattice)

    def contains(self, x):
        """Decide exactly whether x is a nonnegative integer combination of the generators."""
        x = vector(x)
        _check_length(x, self.ambient_rank)
        if not self.gp_lattice.contains(x) or not self.cone.contains(x):
            return False
        if not self.nonunit_generators:
            return True
        return self._search(x, 0, set())

    def __contains__(self, x):
        return self.contains(x)

    def _search(self, residual, index, failed):
        nonunits = self.nonunit_generators
        if index == len(nonunits):
            return self.unit_lattice.contains(residual)
        if (index, residual) in failed:
            return False
        if self._suffix_cones[index].contains(residual):
            step = nonunits[index]
            budget = dot(self.grading, residual) // dot(self.grading, step)
            for count in range(budget, -1, -1):
                if self._search(sub(residual, scale(count, step)), index + 1, failed):
                    return True
        failed.add((index, residual))
        return False


def contains(monoid, x):
    return monoid.contains(x)


def saturate(monoid):
    """All x of the group lattice with a positive multiple in the monoid."""
    if monoid._saturated:
        return monoid
    units, hilbert = lattice_points(monoid.cone, monoid.gp_lattice)
    generators = units + [neg(u) for u in units] + hilbert
    logger.debug('saturated %r: %d generators', monoid, len(generators))
    return LatticeMonoid(generators, monoid.ambient_rank, normalize=False, saturated=True)


def hilbert_basis(rays, lattice):
    """Minimal generating set of cone(rays) intersected with the lattice."""
    if not isinstance(lattice, Lattice):
        basis = [vector(b) for b in lattice]
        n = len(basis[0]) if basis else (len(rays[0]) if rays else 0)
        lattice = Lattice(basis, n)
    n = lattice.ambient_rank
    for r in rays:
        _check_length(r, n)
    cone = Cone.from_rays(rays, n)
    if not cone.is_pointed:
        raise NotPointed(f'cone spanned by {[list(r) for r in rays]} contains a line')
    _, hilbert = lattice_points(cone, lattice)
    return sorted(hilbert)


class Sharpening(NamedTuple):
    units: Lattice
    sharp: LatticeMonoid


def sharpen(monoid):
    """Split off the units and re-embed the quotient in a lattice of smaller rank."""
    projection = monoid.sharp_projection
    images = [projection(g) for g in monoid.nonunit_generators]
    sharp = LatticeMonoid(images, projection.rank,
                          saturated=True if monoid._saturated else None)
    return Sharpening(monoid.unit_lattice, sharp)


def localize_at_face(monoid, face):
    """The localization M + (-F) at a face F of M."""
    if face.ambient_rank != monoid.ambient_rank:
        raise DimensionMismatch('face and monoid live in different lattices')
    if not all(monoid.contains(g) for g in face.generators):
        raise NotAFace(f'{face!r} is not contained in {monoid!r}')
    vanishing = [f for f in monoid.cone.facets
                 if all(dot(f, g) == 0 for g in face.generators)]
    for g in monoid.generators:
        if all(dot(f, g) == 0 for f in vanishing) and not face.contains(g):
            raise NotAFace(f'{face!r} misses the generator {list(g)} of its face')
    return LatticeMonoid(list(monoid.generators) + [neg(g) for g in face.generators],
                         monoid.ambient_rank)


def intersect_with_subgroup(monoid, lattice):
    """The saturated monoid M intersected with a subgroup L of its group."""
    if lattice.ambient_rank != monoid.ambient_rank:
        raise DimensionMismatch('subgroup and monoid live in different lattices')
    if not monoid.is_saturated:
        raise NotSaturated(f'{monoid!r} is not saturated')
    if not lattice.is_sublattice_of(monoid.gp_lattice):
        raise SubgroupNotContained(f'{lattice!r} is not inside the group of {monoid!r}')
    units, hilbert = lattice_points(monoid.cone, lattice)
    return LatticeMonoid(units + [neg(u) for u in units] + hilbert, monoid.ambient_rank,
                         normalize=False, saturated=True)


def monoid_faces(monoid):
    """Faces of M: the submonoids generated by the generators on a face of its cone."""
    faces = []
    for cone in monoid.cone.faces():
        gens = [g for g in monoid.generators if cone.contains(g)]
        faces.append(LatticeMonoid(gens, monoid.ambient_rank, normalize=False,
                                   saturated=True if monoid._saturated else None))
    return faces


class MonoidHom:
    """An integer matrix mapping the source monoid into the target monoid."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = tuple(vector(row) for row in matrix)
        if len(self.matrix) != target.ambient_rank or any(
                len(row) != source.ambient_rank for row in self.matrix):
            raise DimensionMismatch(
                f'matrix must be {target.ambient_rank} x {source.ambient_rank}')
        for g in source.generators:
            if not target.contains(self(g)):
                raise IllFormedHom(f'generator {list(g)} maps outside the target monoid')

    @classmethod
    def identity(cls, monoid):
        n = monoid.ambient_rank
        return cls(monoid, monoid, [[int(i == j) for j in range(n)] for i in range(n)])

    def __call__(self, x):
        return apply(self.matrix, x)

    def __eq__(self, other):
        if not isinstance(other, MonoidHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def pull_back(self, functional):
        """The functional f composed with the matrix."""
        return tuple(dot(functional, [row[j] for row in self.matrix])
                     for j in range(self.source.ambient_rank))


@dataclass(frozen=True)
class HomClassification:
    injective: bool
    gp_injective: bool
    gp_surjective: bool
    gp_iso: bool
    local: bool
    exact: bool
    kummer: bool
    sharp_iso: bool

    @property
    def m_type(self):
        return self.gp_iso

    @property
    def strict(self):
        return self.sharp_iso

    @property
    def log_modification_chart(self):
        return self.injective and self.gp_iso

    def as_dict(self):
        return {
            'injective': self.injective,
            'gp_injective': self.gp_injective,
            'gp_surjective': self.gp_surjective,
            'gp_iso': self.gp_iso,
            'local': self.local,
            'exact': self.exact,
            'kummer': self.kummer,
            'sharp_iso': self.sharp_iso,
        }


def _preimage_generators(hom):
    """Generators of {x in P^gp : h(x) in Q}.

    They are the projections of the generators of the fiber monoid of pairs
    (x, c) with h(x) = sum c_i q_i over the target generators q_i and c >= 0.
    """
    source, target = hom.source, hom.target
    n, m = source.ambient_rank, len(target.generators)
    basis = source.gp_lattice.basis
    r = len(basis)
    images = [hom(b) for b in basis]
    relations = [[image[k] for image in images] + [-q[k] for q in target.generators]
                 for k in range(target.ambient_rank)]
    pairs = [combine(z[:r], basis, n) + tuple(z[r:]) for z in integer_kernel(relations, r + m)]
    fiber = Lattice(pairs, n + m)
    halfspaces = [tuple(int(i == n + j) for i in range(n + m)) for j in range(m)]
    units, hilbert = lattice_points(Cone.from_inequalities(halfspaces, n + m), fiber)
    return [z[:n] for z in units + [neg(u) for u in units] + hilbert]


def _is_exact(hom):
    if not hom.target.is_saturated:
        return all(hom.source.contains(x) for x in _preimage_generators(hom))
    # A saturated target is its cone cut with its group, so the preimage is
    # the pulled-back cone cut with the source group.
    target = hom.target.cone
    preimage = Cone.from_inequalities(
        [hom.pull_back(f) for f in target.facets], hom.source.ambient_rank,
        equations=[hom.pull_back(e) for e in target.equations])
    units, hilbert = lattice_points(preimage, hom.source.gp_lattice)
    return all(hom.source.contains(v) for v in units + [neg(u) for u in units] + hilbert)


def _is_sharp_iso(hom):
    source, target = hom.source.sharp_projection, hom.target.sharp_projection
    if source.rank != target.rank:
        return False
    images = [target(hom(source.lift(e))) for e in Lattice.full(source.rank).basis]
    if Lattice(images, target.rank) != Lattice.full(target.rank):
        return False
    image = LatticeMonoid([target(hom(g)) for g in hom.source.nonunit_generators],
                          target.rank, normalize=False)
    return image == sharpen(hom.target).sharp


def classify_hom(hom):
    """Compute every classification flag of a monoid homomorphism exactly."""
    image = hom.source.gp_lattice.image(hom.matrix, hom.target.ambient_rank)
    gp_injective = image.rank == hom.source.rank
    gp_surjective = image == hom.target.gp_lattice
    # For integral monoids every kernel element of the group map is a
    # difference x - y of monoid elements with equal images.
    injective = gp_injective
    local = not any(hom.target.unit_lattice.contains(hom(g))
                    for g in hom.source.nonunit_generators)
    image_cone = Cone.from_rays([hom(g) for g in hom.source.generators],
                                hom.target.ambient_rank)
    kummer = injective and all(image_cone.contains(t) for t in hom.target.generators)
    flags = HomClassification(
        injective=injective,
        gp_injective=gp_injective,
        gp_surjective=gp_surjective,
        gp_iso=gp_injective and gp_surjective,
        local=local,
        exact=_is_exact(hom),
        kummer=kummer,
        sharp_iso=_is_sharp_iso(hom),
    )
    logger.debug('classified %r -> %r: %s', hom.source, hom.target, flags)
    return flags
