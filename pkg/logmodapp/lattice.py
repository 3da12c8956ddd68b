"""Integer lattices and exact integer linear algebra.

Vectors are tuples of Python integers. Matrix work (determinants, Hermite
normal forms, kernels) goes through sympy's ``DomainMatrix`` over ZZ.
Lattices are stored by their column Hermite normal form, which is
canonical, so two lattices are equal exactly when their bases are.
"""
import logging
from math import gcd

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .exceptions import DimensionMismatch, GroupMismatch, SubgroupNotContained

logger = logging.getLogger(__name__)


def vector(values):
    return tuple(int(v) for v in values)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def scale(c, u):
    return tuple(c * a for a in u)


def zero(n):
    return (0,) * n


def is_zero(u):
    return not any(u)


def combine(coefficients, vectors, n):
    """Return sum(c * v) over paired coefficients and vectors in Z^n."""
    total = [0] * n
    for c, v in zip(coefficients, vectors):
        if c:
            for i, a in enumerate(v):
                total[i] += c * a
    return tuple(total)


def apply(matrix, u):
    """Apply a matrix given as a list of rows."""
    return tuple(dot(row, u) for row in matrix)


def content(u):
    g = 0
    for a in u:
        g = gcd(g, a)
    return g


def primitive(u):
    """Divide a vector by the gcd of its coordinates (the zero vector is fixed)."""
    g = content(u)
    if g <= 1:
        return tuple(u)
    return tuple(a // g for a in u)


def proportional(u, v):
    """True when u is a nonnegative multiple of v or v a nonnegative multiple of u."""
    if is_zero(u) or is_zero(v):
        return True
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return dot(u, v) > 0


def identity(n):
    return [tuple(int(i == j) for i in range(n)) for j in range(n)]


def _matrix(rows, width):
    if not rows:
        return DomainMatrix([], (0, width), ZZ)
    return DomainMatrix.from_list([list(r) for r in rows], ZZ)


def _rows(matrix):
    return [tuple(int(a) for a in row) for row in matrix.to_list()]


def determinant(rows):
    """Determinant of a square integer matrix given as a list of rows."""
    if not rows:
        return 1
    return int(_matrix(rows, len(rows)).det())


def adjugate_and_determinant(rows):
    adjugate, det = _matrix(rows, len(rows)).adj_det()
    return _rows(adjugate), int(det)


def cross_kernel(rows, n):
    """Generalized cross product of n-1 vectors in Z^n.

    The result is orthogonal to every row and vanishes exactly when the rows
    are linearly dependent.
    """
    result = []
    for j in range(n):
        d = determinant([r[:j] + r[j + 1:] for r in rows])
        result.append(-d if j % 2 else d)
    return tuple(result)


def hermite_columns(columns, height):
    """Column Hermite normal form of the lattice spanned by ``columns``.

    Each returned column has a positive pivot at its last nonzero entry, the
    pivot rows increase from left to right and every entry to the right of a
    pivot is reduced modulo it.
    """
    if not columns or not height:
        return []
    reduced = hermite_normal_form(_matrix(columns, height).transpose())
    return _rows(reduced.transpose())


def _stacked(rows, n):
    """Hermite form of the identity stacked over ``rows``, split into (top, bottom) parts.

    The top parts are the unimodular transform applied to Z^n; the columns
    with a zero bottom part are a basis of the integer kernel of ``rows``.
    """
    columns = [tuple(int(i == j) for i in range(n)) + tuple(r[j] for r in rows)
               for j in range(n)]
    return [(c[:n], c[n:]) for c in hermite_columns(columns, n + len(rows))]


def integer_kernel(rows, n):
    """Basis of the saturated lattice {z in Z^n : row . z = 0 for every row}."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return identity(n)
    kernel = [top for top, bottom in _stacked(rows, n) if not any(bottom)]
    return list(Lattice(kernel, n).basis)


def right_inverse(forms, n):
    """Vectors s_j of Z^n with forms . s_j = e_j, for forms mapping Z^n onto Z^k."""
    if not forms:
        return []
    lifted = [(top, bottom) for top, bottom in _stacked(forms, n) if any(bottom)]
    if [bottom for _, bottom in lifted] != identity(len(forms)):
        raise GroupMismatch('linear forms do not map onto the integer lattice')
    return [top for top, _ in lifted]


class Lattice:
    """A subgroup of Z^n held by its canonical basis."""

    def __init__(self, vectors, ambient_rank):
        self.ambient_rank = ambient_rank
        vectors = [vector(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_rank:
                raise DimensionMismatch(
                    f'vector {list(v)} does not have length {ambient_rank}')
        self.basis = tuple(hermite_columns(vectors, ambient_rank))
        self.pivots = tuple(max(i for i, a in enumerate(b) if a) for b in self.basis)

    @classmethod
    def full(cls, n):
        return cls(identity(n), n)

    @property
    def rank(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f'Lattice({[list(b) for b in self.basis]}, {self.ambient_rank})'

    def coordinates(self, x):
        """Integer coordinates of x in the basis, or None if x is not in the lattice."""
        residual = list(x)
        coords = [0] * self.rank
        for j in reversed(range(self.rank)):
            b, row = self.basis[j], self.pivots[j]
            if residual[row] % b[row]:
                return None
            c = residual[row] // b[row]
            if c:
                residual = [r - c * a for r, a in zip(residual, b)]
            coords[j] = c
        if any(residual):
            return None
        return tuple(coords)

    def contains(self, x):
        return self.coordinates(x) is not None

    def __contains__(self, x):
        return self.contains(x)

    def is_sublattice_of(self, other):
        return all(other.contains(b) for b in self.basis)

    def point(self, coords):
        return combine(coords, self.basis, self.ambient_rank)

    def orthogonal(self):
        """The saturated lattice of integer vectors orthogonal to this lattice."""
        return Lattice(integer_kernel(self.basis, self.ambient_rank), self.ambient_rank)

    def saturation(self):
        """span_Q(L) intersected with Z^n."""
        return self.orthogonal().orthogonal() if self.basis else self

    def is_saturated(self):
        return self == self.saturation()

    def image(self, matrix, target_rank):
        return Lattice([apply(matrix, b) for b in self.basis], target_rank)


class QuotientMap:
    """The surjection from a lattice G onto G / (span_Q(U) intersected with G).

    The target is Z^k with k = rank G - rank U; ``lift`` is a fixed section.
    """

    def __init__(self, source, kernel):
        self.source = source
        unit_coords = [source.coordinates(u) for u in kernel.basis]
        if any(c is None for c in unit_coords):
            raise SubgroupNotContained('quotient kernel is not inside the source lattice')
        if unit_coords:
            self.forms = integer_kernel(unit_coords, source.rank)
        else:
            self.forms = identity(source.rank)
        self.rank = len(self.forms)
        self._section = right_inverse(self.forms, source.rank)

    def __call__(self, x):
        coords = self.source.coordinates(x)
        if coords is None:
            raise GroupMismatch(f'{list(x)} is not in the source lattice')
        return tuple(dot(w, coords) for w in self.forms)

    def lift(self, y):
        coords = combine(y, self._section, self.source.rank)
        return self.source.point(coords)
