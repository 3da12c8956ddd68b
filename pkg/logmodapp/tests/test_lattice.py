import random

from django.test import SimpleTestCase
from sympy import Matrix

from logmodapp.exceptions import DimensionMismatch, GroupMismatch, SubgroupNotContained
from logmodapp.lattice import (
    Lattice, QuotientMap, adjugate_and_determinant, apply, cross_kernel, determinant, dot,
    hermite_columns, integer_kernel, primitive, proportional, right_inverse, sub,
)


def random_matrix(rng, rows, columns, bound=5):
    return [[rng.randint(-bound, bound) for _ in range(columns)] for _ in range(rows)]


class DeterminantTests(SimpleTestCase):

    def test_matches_sympy(self):
        rng = random.Random(11)
        for size in range(1, 5):
            for _ in range(25):
                rows = random_matrix(rng, size, size)
                self.assertEqual(determinant(rows), Matrix(rows).det())

    def test_empty_matrix(self):
        self.assertEqual(determinant([]), 1)

    def test_adjugate(self):
        rng = random.Random(17)
        for _ in range(20):
            rows = random_matrix(rng, 3, 3)
            adjugate, det = adjugate_and_determinant(rows)
            self.assertEqual(det, determinant(rows))
            for j in range(3):
                column = tuple(r[j] for r in rows)
                self.assertEqual(apply(adjugate, column), tuple(det * (i == j) for i in range(3)))

    def test_cross_kernel_is_orthogonal(self):
        rng = random.Random(12)
        for _ in range(30):
            rows = random_matrix(rng, 2, 3)
            w = cross_kernel(rows, 3)
            self.assertTrue(all(dot(w, r) == 0 for r in rows))
            self.assertEqual(any(w), Matrix(rows).rank() == 2)


class IntegerKernelTests(SimpleTestCase):

    def test_kernel_of_one_row(self):
        kernel = integer_kernel([(1, 2, 3)], 3)
        self.assertEqual(len(kernel), 2)
        for k in kernel:
            self.assertEqual(dot(k, (1, 2, 3)), 0)

    def test_kernel_is_saturated(self):
        rng = random.Random(13)
        for _ in range(30):
            rows = random_matrix(rng, 2, 4)
            kernel = Lattice(integer_kernel(rows, 4), 4)
            self.assertEqual(kernel.rank, 4 - Matrix(rows).rank())
            self.assertTrue(kernel.is_saturated())

    def test_no_rows_gives_everything(self):
        self.assertEqual(Lattice(integer_kernel([], 2), 2), Lattice.full(2))


class HermiteFormTests(SimpleTestCase):

    def test_small_example(self):
        self.assertEqual(hermite_columns([(1, 1), (1, -1)], 2), [(2, 0), (1, 1)])

    def test_shape(self):
        rng = random.Random(18)
        for _ in range(30):
            columns = hermite_columns(random_matrix(rng, 3, 3, bound=3), 3)
            pivots = [max(i for i, a in enumerate(c) if a) for c in columns]
            self.assertEqual(pivots, sorted(set(pivots)))
            for j, (c, p) in enumerate(zip(columns, pivots)):
                self.assertGreater(c[p], 0)
                for later in columns[j + 1:]:
                    self.assertTrue(0 <= later[p] < c[p])

    def test_dependent_columns(self):
        self.assertEqual(hermite_columns([(2, 4), (1, 2), (0, 0)], 2), [(1, 2)])
        self.assertEqual(hermite_columns([], 2), [])


class RightInverseTests(SimpleTestCase):

    def test_section_of_random_surjections(self):
        rng = random.Random(19)
        checked = 0
        while checked < 15:
            row = tuple(rng.randint(-4, 4) for _ in range(3))
            if primitive(row) != row or not any(row):
                continue
            forms = [row]
            section = right_inverse(forms, 3)
            self.assertEqual([apply(forms, s) for s in section], [(1,)])
            checked += 1

    def test_two_forms(self):
        forms = [(1, 2, 0), (0, 1, 3)]
        section = right_inverse(forms, 3)
        self.assertEqual([apply(forms, s) for s in section], [(1, 0), (0, 1)])

    def test_not_onto(self):
        with self.assertRaises(GroupMismatch):
            right_inverse([(2, 4)], 2)


class LatticeTests(SimpleTestCase):

    def test_basis_is_canonical(self):
        self.assertEqual(Lattice([(2, 0), (1, 1)], 2), Lattice([(1, 1), (1, -1)], 2))
        self.assertEqual(Lattice([(1, 0), (0, 1), (1, 1)], 2), Lattice.full(2))
        self.assertNotEqual(Lattice([(2, 0), (0, 1)], 2), Lattice.full(2))

    def test_membership(self):
        even = Lattice([(2, 0), (1, 1)], 2)
        self.assertIn((0, 2), even)
        self.assertIn((3, -1), even)
        self.assertNotIn((1, 0), even)

    def test_coordinates_reconstruct_the_point(self):
        rng = random.Random(14)
        for _ in range(30):
            lattice = Lattice(random_matrix(rng, 2, 3), 3)
            coords = [rng.randint(-4, 4) for _ in lattice.basis]
            x = lattice.point(coords)
            self.assertEqual(lattice.point(lattice.coordinates(x)), x)

    def test_rank_matches_sympy(self):
        rng = random.Random(15)
        for _ in range(30):
            rows = random_matrix(rng, 3, 3, bound=2)
            self.assertEqual(Lattice(rows, 3).rank, Matrix(rows).rank())

    def test_saturation(self):
        self.assertEqual(Lattice([(2, 0)], 2).saturation(), Lattice([(1, 0)], 2))
        self.assertEqual(Lattice([(2, 4), (0, 3)], 2).saturation(), Lattice.full(2))
        self.assertFalse(Lattice([(2, 4)], 2).is_saturated())

    def test_orthogonal(self):
        self.assertEqual(Lattice([(1, 0)], 2).orthogonal(), Lattice([(0, 1)], 2))

    def test_sublattice(self):
        self.assertTrue(Lattice([(2, 0)], 2).is_sublattice_of(Lattice.full(2)))
        self.assertFalse(Lattice([(1, 0)], 2).is_sublattice_of(Lattice([(2, 0), (0, 1)], 2)))

    def test_wrong_length_is_rejected(self):
        with self.assertRaises(DimensionMismatch):
            Lattice([(1, 0, 0)], 2)


class QuotientMapTests(SimpleTestCase):

    def test_projection_kills_the_kernel(self):
        quotient = QuotientMap(Lattice.full(2), Lattice([(1, 0)], 2))
        self.assertEqual(quotient.rank, 1)
        self.assertEqual(quotient((1, 0)), (0,))
        self.assertEqual(abs(quotient((0, 1))[0]), 1)

    def test_section(self):
        rng = random.Random(16)
        for _ in range(20):
            source = Lattice.full(3)
            kernel = Lattice([random_matrix(rng, 1, 3)[0]], 3).saturation()
            quotient = QuotientMap(source, kernel)
            y = tuple(rng.randint(-3, 3) for _ in range(quotient.rank))
            self.assertEqual(quotient(quotient.lift(y)), y)
            x = tuple(rng.randint(-3, 3) for _ in range(3))
            self.assertIn(sub(quotient.lift(quotient(x)), x), kernel)

    def test_kernel_outside_source(self):
        with self.assertRaises(SubgroupNotContained):
            QuotientMap(Lattice([(2, 0)], 2), Lattice([(1, 0)], 2))

    def test_point_outside_source(self):
        quotient = QuotientMap(Lattice([(2, 0), (0, 1)], 2), Lattice([], 2))
        with self.assertRaises(GroupMismatch):
            quotient((1, 0))


class VectorHelperTests(SimpleTestCase):

    def test_primitive(self):
        self.assertEqual(primitive((4, -6)), (2, -3))
        self.assertEqual(primitive((0, 0)), (0, 0))

    def test_proportional(self):
        self.assertTrue(proportional((1, 2), (2, 4)))
        self.assertFalse(proportional((1, 2), (-1, -2)))
        self.assertFalse(proportional((1, 2), (2, 1)))
