"""Brute-force reference computations.

These enumerate lattice points in bounding boxes or coefficient vectors
directly. They are slow and only meant for small inputs: the test suite and
the ``--oracle`` mode of the command compare them with the fast algorithms.
"""
import logging
from itertools import product

from .cones import Cone
from .exceptions import NotPointed
from .lattice import add, dot, neg, primitive, proportional, scale, sub
from .monoids import LatticeMonoid

logger = logging.getLogger(__name__)


def box(bound, n):
    return product(range(-bound, bound + 1), repeat=n)


def _on_lattice(ray, lattice, limit=10 ** 4):
    """The smallest positive multiple of ray lying in the lattice."""
    for k in range(1, limit):
        if lattice.contains(scale(k, ray)):
            return scale(k, ray)
    raise ValueError(f'{list(ray)} has no small multiple in {lattice!r}')


def box_hilbert_basis(rays, lattice):
    """Hilbert basis of cone(rays) on the lattice by enumerating a bounding box.

    Every Hilbert basis element lies in the zonotope spanned by the lattice
    multiples of the rays, so the box with half-width the sum of their largest
    coordinates suffices.
    """
    n = lattice.ambient_rank
    cone = Cone.from_rays(rays, n)
    if not cone.is_pointed:
        raise NotPointed('box enumeration needs a pointed cone')
    bound = sum(max(abs(c) for c in _on_lattice(r, lattice)) for r in cone.rays)
    grading = [sum(col) for col in zip(*cone.facets)] if cone.facets else [0] * n
    points = [x for x in box(bound, n)
              if any(x) and cone.contains(x) and lattice.contains(x)]
    points.sort(key=lambda x: (dot(grading, x), x))
    irreducible = []
    for x in points:
        if not any(cone.contains(sub(x, h)) for h in irreducible):
            irreducible.append(x)
    logger.debug('box hilbert basis: %d points, %d irreducible', len(points), len(irreducible))
    return sorted(irreducible)


def box_saturation(monoid):
    """Generators of the saturation of a sharp monoid by box enumeration."""
    hilbert = box_hilbert_basis(monoid.generators, monoid.gp_lattice)
    return LatticeMonoid(hilbert, monoid.ambient_rank)


def brute_contains(monoid, x):
    """Search nonnegative coefficient vectors, bounded through a grading, for x.

    Only sharp monoids are supported.
    """
    if not monoid.is_sharp:
        raise NotPointed('coefficient search needs a sharp monoid')
    gens = list(monoid.generators)
    grading = monoid.grading
    target = dot(grading, x)
    if target < 0:
        return False

    def search(index, residual):
        if index == len(gens):
            return not any(residual)
        step = gens[index]
        for count in range(dot(grading, residual) // dot(grading, step) + 1):
            if search(index + 1, sub(residual, scale(count, step))):
                return True
        return False

    return search(0, tuple(x))


def chains(faces):
    """Every maximal strict chain of the face poset, bottom to top."""
    above = {f.key: [g for g in faces if g.dimension > f.dimension and g.contains_cone(f)]
             for f in faces}
    bottoms = [f for f in faces if not any(f.dimension > g.dimension and f.contains_cone(g)
                                           for g in faces)]
    found = []

    def extend(chain):
        longer = above[chain[-1].key]
        if not longer:
            found.append(chain)
        for g in longer:
            extend(chain + [g])

    for bottom in bottoms:
        extend([bottom])
    return found


def chain_dimension(fan):
    faces = fan.faces()
    return max((len(c) for c in chains(faces)), default=1) - 1


def sampled_gap(sigma, cones, bound):
    """A lattice point of sigma in the box outside every cone, if there is one."""
    for x in box(bound, sigma.ambient_dim):
        if any(x) and sigma.contains(x) and not any(c.contains(x) for c in cones):
            return primitive(x)
    return None


def factors_through(functional, others, lattice):
    """Whether the valuation is a nonnegative multiple of one of ``others`` on the lattice."""
    def pairing(v):
        return tuple(dot(v, b) for b in lattice.basis)

    v = pairing(functional)
    return any(proportional(v, pairing(w)) and (any(pairing(w)) or not any(v)) for w in others)


def reconstructs(chart_monoid, monoid, bound=4):
    """Box comparison of two monoids with the same lattice."""
    n = monoid.ambient_rank
    return all(chart_monoid.contains(x) == monoid.contains(x)
               for x in box(bound, n) if monoid.gp_lattice.contains(x))


def graded_points(monoid, degree):
    """Lattice points of a sharp monoid of grading at most ``degree``."""
    frontier = {tuple([0] * monoid.ambient_rank)}
    found = set(frontier)
    while frontier:
        frontier = {add(x, g) for x in frontier for g in monoid.generators
                    if dot(monoid.grading, add(x, g)) <= degree} - found
        found |= frontier
    return found



def _member(monoid, x):
    if monoid.is_sharp:
        return brute_contains(monoid, x)
    return monoid.contains(x)


def exactness_gap(hom, bound):
    """A point of the source group in the box mapped into the target but outside the source."""
    source = hom.source
    for x in box(bound, source.ambient_rank):
        if (source.gp_lattice.contains(x) and _member(hom.target, hom(x))
                and not _member(source, x)):
            return x
    return None


def unit_images(hom):
    """Non-unit generators of the source whose image is a unit of the target."""
    return [g for g in hom.source.generators
            if not _member(hom.source, neg(g)) and _member(hom.target, neg(hom(g)))]


def localizes(monoid, face, x, steps):
    """Whether x plus some multiple of the face's interior sum lies in the monoid."""
    shift = tuple(map(sum, zip(*face.generators))) if face.generators else (0,) * len(x)
    return any(monoid.contains(add(x, scale(k, shift))) for k in range(steps + 1))
