"""Rational polyhedral cones and their lattice points.

A :class:`Cone` keeps both descriptions of a cone in Q^n: extreme rays plus a
lineality lattice, and facet normals plus equations of its linear span. All
data are integer vectors, so every containment test is exact.
"""
import logging
from functools import cached_property
from itertools import combinations, product

from .lattice import (
    Lattice, adjugate_and_determinant, apply, combine, cross_kernel, dot, identity, integer_kernel,
    neg, primitive, right_inverse, vector,
)

logger = logging.getLogger(__name__)


def extreme_rays(inequalities, n):
    """Primitive extreme rays of the pointed cone {y in Q^n : a . y >= 0}.

    A ray is extreme exactly when the inequalities tight on it have rank n - 1,
    so it suffices to try the one-dimensional kernels of (n - 1)-subsets.
    """
    if n == 0:
        return []
    rows = sorted({primitive(vector(a)) for a in inequalities if any(a)})
    found = set()
    for subset in combinations(rows, n - 1):
        w = cross_kernel(list(subset), n)
        if not any(w):
            continue
        for candidate in (w, neg(w)):
            if all(dot(a, candidate) >= 0 for a in rows):
                found.add(primitive(candidate))
                break
    return sorted(found)


class Cone:
    """A rational polyhedral cone, immutable once built.

    Use :meth:`from_rays` or :meth:`from_inequalities`; both normalize to the
    same canonical data, so equal cones compare equal.
    """

    def __init__(self, ambient_dim, rays, lineality, facets, equations):
        self.ambient_dim = ambient_dim
        self.rays = tuple(rays)
        self.lineality = tuple(lineality)
        self.facets = tuple(facets)
        self.equations = tuple(equations)

    @classmethod
    def from_rays(cls, generators, ambient_dim):
        n = ambient_dim
        gens = [vector(g) for g in generators if any(g)]
        equations = Lattice(integer_kernel(gens, n), n).basis if gens else tuple(identity(n))
        span = integer_kernel(equations, n) if equations else identity(n)
        restricted = [[dot(g, s) for s in span] for g in gens]
        facets = sorted(primitive(combine(y, span, n)) for y in extreme_rays(restricted, len(span)))
        lineality = Lattice(integer_kernel(list(facets) + list(equations), n), n).basis
        if lineality:
            complement = integer_kernel(list(lineality) + list(equations), n)
        else:
            complement = span
        restricted = [[dot(f, t) for t in complement] for f in facets]
        rays = sorted(primitive(combine(y, complement, n))
                      for y in extreme_rays(restricted, len(complement)))
        return cls(n, rays, lineality, facets, equations)

    @classmethod
    def from_inequalities(cls, inequalities, ambient_dim, equations=()):
        """The cone {x : a . x >= 0 for a in inequalities, e . x = 0 for e in equations}."""
        n = ambient_dim
        ineqs = [vector(a) for a in inequalities if any(a)]
        eqs = [vector(e) for e in equations if any(e)]
        rows = ineqs + eqs + [neg(e) for e in eqs]
        lineality = Lattice(integer_kernel(rows, n), n).basis if rows else tuple(identity(n))
        complement = integer_kernel(lineality, n) if lineality else identity(n)
        restricted = [[dot(a, t) for t in complement] for a in rows]
        rays = [combine(y, complement, n) for y in extreme_rays(restricted, len(complement))]
        return cls.from_rays(rays + list(lineality) + [neg(v) for v in lineality], n)

    @classmethod
    def zero(cls, ambient_dim):
        return cls.from_rays([], ambient_dim)

    @property
    def dimension(self):
        return self.ambient_dim - len(self.equations)

    @property
    def is_pointed(self):
        return not self.lineality

    @cached_property
    def key(self):
        return (self.ambient_dim, self.rays, self.lineality)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        rays = [list(r) for r in self.rays]
        if self.lineality:
            return f'Cone(rays={rays}, lineality={[list(v) for v in self.lineality]})'
        return f'Cone(rays={rays})'

    def generators(self):
        return list(self.rays) + list(self.lineality) + [neg(v) for v in self.lineality]

    def contains(self, x):
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(f, x) >= 0 for f in self.facets))

    def strictly_contains(self, x):
        """x lies in the relative interior."""
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(f, x) > 0 for f in self.facets))

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators())

    def interior_point(self):
        """An integer point of the relative interior."""
        point = [0] * self.ambient_dim
        for r in self.rays:
            point = [a + b for a, b in zip(point, r)]
        return tuple(point)

    def intersection(self, other):
        return Cone.from_inequalities(
            self.facets + other.facets, self.ambient_dim,
            equations=self.equations + other.equations)

    def face(self, normals):
        """The face cut out by setting the given facet normals to zero."""
        return Cone.from_inequalities(
            self.facets, self.ambient_dim, equations=tuple(self.equations) + tuple(normals))

    def facet_cones(self):
        return [self.face([f]) for f in self.facets]

    def faces(self):
        """All faces, including the cone itself and its lineality space."""
        seen = {self.key: self}
        pending = [self]
        while pending:
            cone = pending.pop()
            for facet in cone.facet_cones():
                if facet.key not in seen:
                    seen[facet.key] = facet
                    pending.append(facet)
        return sorted(seen.values(), key=lambda c: (c.dimension, c.key))

    def is_face_of(self, other):
        if not other.contains_cone(self):
            return False
        gens = self.generators()
        vanishing = [f for f in other.facets if all(dot(f, g) == 0 for g in gens)]
        return other.face(vanishing) == self

    def dual(self):
        """The dual cone inside the linear span of this cone."""
        return Cone.from_inequalities(self.generators(), self.ambient_dim, equations=self.equations)


def pointed_hilbert_basis(inequalities, n):
    """Hilbert basis of {y in Z^n : a . y >= 0}, a pointed cone.

    Candidates are the rays and the lattice points of the half-open
    parallelepipeds spanned by linearly independent n-sets of rays; an element
    is irreducible iff no smaller irreducible can be subtracted from it.
    """
    rows = [vector(a) for a in inequalities if any(a)]
    rays = extreme_rays(rows, n)
    if not rays:
        return []
    span = Lattice(rays, n).saturation()
    if span.rank < n:
        basis = span.basis
        restricted = [[dot(a, b) for b in basis] for a in rows]
        return sorted(combine(u, basis, n) for u in pointed_hilbert_basis(restricted, len(basis)))

    candidates = set(rays)
    for subset in combinations(rays, n):
        adjugate, det = adjugate_and_determinant([[r[i] for r in subset] for i in range(n)])
        if det == 0:
            continue
        echelon = Lattice(subset, n)
        bounds = [echelon.basis[j][j] for j in range(n)]
        for x in product(*(range(b) for b in bounds)):
            floors = [dot(row, x) // det for row in adjugate]
            point = tuple(xi - c for xi, c in zip(x, combine(floors, subset, n)))
            if any(point):
                candidates.add(point)

    grading = [sum(col) for col in zip(*rows)]
    ordered = sorted(candidates, key=lambda c: (dot(grading, c), c))
    irreducible = []
    for c in ordered:
        values = apply(rows, c)
        degree = dot(grading, c)
        if any(d < degree and all(v >= w for v, w in zip(values, hv))
               for h, d, hv in irreducible):
            continue
        irreducible.append((c, degree, values))
    logger.debug('hilbert basis: %d candidates, %d irreducible', len(candidates), len(irreducible))
    return sorted(h for h, _, _ in irreducible)


def lattice_points(cone, lattice):
    """Generators of the monoid cone intersected with lattice.

    Returns ``(units, hilbert)``: a basis of the unit lattice and lifts of the
    Hilbert basis of the pointed quotient. The monoid is generated by
    ``units``, their negatives and ``hilbert``.
    """
    n = cone.ambient_dim
    basis = lattice.basis
    r = len(basis)
    if r == 0:
        return [], []
    eqs = [[dot(e, b) for b in basis] for e in cone.equations]
    ineqs = [[dot(f, b) for b in basis] for f in cone.facets]
    inner = integer_kernel(eqs, r) if eqs else identity(r)
    ambient_inner = [combine(k, basis, n) for k in inner]
    rows = [[dot(a, k) for k in inner] for a in ineqs]
    lineality = integer_kernel(rows, len(inner)) if rows else identity(len(inner))
    if lineality:
        forms = integer_kernel(lineality, len(inner))
    else:
        forms = identity(len(inner))
    section = right_inverse(forms, len(inner))
    projected = [[dot(a, t) for t in section] for a in rows]
    hilbert = pointed_hilbert_basis(projected, len(forms))
    units = [combine(v, ambient_inner, n) for v in lineality]
    lifts = [combine(combine(y, section, len(inner)), ambient_inner, n) for y in hilbert]
    return units, lifts


def _subtract(piece, cone):
    """Full-dimensional pieces covering the closure of ``piece`` minus ``cone``."""
    parts = []
    kept = []
    for f in cone.facets:
        part = Cone.from_inequalities(
            piece.facets + tuple(kept) + (neg(f),), piece.ambient_dim, equations=piece.equations)
        if part.dimension == piece.dimension:
            parts.append(part)
        kept.append(f)
    return parts


def uncovered_point(sigma, cones):
    """A primitive point of sigma outside every cone, or None if they cover sigma.

    Full-dimensional cones are subtracted one at a time by halfspace splitting;
    lower-dimensional ones cannot cover anything but are avoided by the witness.
    """
    if sigma.dimension == 0:
        return None
    pieces = [sigma]
    for cone in cones:
        if cone.dimension < sigma.dimension:
            continue
        pieces = [part for piece in pieces for part in _subtract(piece, cone)]
        if not pieces:
            return None
    piece = pieces[0]
    directions = piece.generators()
    center = piece.interior_point()
    if not any(center):
        center = directions[0]
    scale_factor = 1
    while True:
        for d in directions:
            candidate = primitive(tuple(scale_factor * c + a for c, a in zip(center, d)))
            if any(candidate) and not any(cone.contains(candidate) for cone in cones):
                logger.debug('uncovered point %s found in %r', candidate, piece)
                return candidate
        scale_factor += 1
