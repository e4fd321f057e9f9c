"""
test_exact_lattice.py

Unit tests for exact_lattice.py: normal forms, kernels and lattice membership.
"""

import random
import unittest

import numpy as np

from core import exact_lattice as el


def random_matrix(rng, rows, cols, low=-6, high=6):
    return el.as_int_matrix([[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng, size, steps=30):
    u = el.identity(size)
    for _ in range(steps):
        i, j = rng.sample(range(size), 2)
        u[i, :] = u[i, :] + rng.randint(-3, 3) * u[j, :]
    return u


def assert_matrix_equal(test, a, b):
    test.assertTrue(np.array_equal(el.as_int_matrix(a), el.as_int_matrix(b)), f"{a} != {b}")


class TestExactLattice(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(20240611)

    def test_extended_gcd(self):
        g, s, t = el.extended_gcd(240, 46)
        self.assertEqual(g, 2)
        self.assertEqual(s * 240 + t * 46, 2)
        self.assertEqual(el.extended_gcd(-4, 6)[0], 2)
        self.assertEqual(el.extended_gcd(0, 0)[0], 0)

    def test_as_int_matrix_rejects_ragged_rows(self):
        with self.assertRaises(ValueError):
            el.as_int_matrix([[1, 2], [3]])

    def test_hnf_identity(self):
        h, u = el.hnf(el.identity(2))
        assert_matrix_equal(self, h, [[1, 0], [0, 1]])
        assert_matrix_equal(self, u, [[1, 0], [0, 1]])

    def test_hnf_already_reduced(self):
        h, u = el.hnf([[2, 0], [0, 3]])
        assert_matrix_equal(self, h, [[2, 0], [0, 3]])
        assert_matrix_equal(self, u, [[1, 0], [0, 1]])

    def test_hnf_empty(self):
        h, u = el.hnf(np.zeros((0, 3), dtype=object))
        self.assertEqual(h.shape, (0, 3))
        self.assertEqual(u.shape, (0, 0))

    def test_hnf_reconstruction_and_shape(self):
        for _ in range(20):
            m = random_matrix(self.rng, 5, 4)
            h, u = el.hnf(m)
            assert_matrix_equal(self, u.dot(m), h)
            self.assertEqual(abs(el.det(u)), 1)
            rows = h.tolist()
            pivots = []
            for r, row in enumerate(rows):
                nonzero = [j for j, v in enumerate(row) if v]
                if not nonzero:
                    self.assertFalse(any(any(rest) for rest in rows[r:]))
                    break
                pivots.append((r, nonzero[0]))
            for (_, c1), (_, c2) in zip(pivots, pivots[1:]):
                self.assertLess(c1, c2)
            for r, c in pivots:
                self.assertGreater(rows[r][c], 0)
                for above in range(r):
                    self.assertTrue(0 <= rows[above][c] < rows[r][c])

    def test_hnf_invariant_under_unimodular_scramble(self):
        base = random_matrix(self.rng, 5, 5)
        expected, _ = el.hnf(base)
        for _ in range(5):
            scrambled = random_unimodular(self.rng, 5).dot(base)
            h, _ = el.hnf(scrambled)
            assert_matrix_equal(self, h, expected)

    def test_hnf_big_entries_are_exact(self):
        big = 10 ** 30
        h, u = el.hnf([[big, 1], [1, 0]])
        assert_matrix_equal(self, u.dot(el.as_int_matrix([[big, 1], [1, 0]])), h)
        assert_matrix_equal(self, h, [[1, 0], [0, 1]])

    def test_snf_small(self):
        s, u, v = el.snf([[2, 0], [0, 3]])
        assert_matrix_equal(self, s, [[1, 0], [0, 6]])
        assert_matrix_equal(self, u.dot(el.as_int_matrix([[2, 0], [0, 3]])).dot(v), s)

    def test_snf_zero_matrix(self):
        s, _, _ = el.snf(np.zeros((2, 3), dtype=object))
        assert_matrix_equal(self, s, [[0, 0, 0], [0, 0, 0]])

    def test_snf_negative_diagonal_inputs(self):
        cases = [
            ([[-2]], [[2]]),
            ([[2, 0], [0, -3]], [[1, 0], [0, 6]]),
            ([[-7], [0]], [[7], [0]]),
            ([[0, 0], [0, -5]], [[5, 0], [0, 0]]),
        ]
        for m, expected in cases:
            s, u, v = el.snf(m)
            assert_matrix_equal(self, s, expected)
            assert_matrix_equal(self, u.dot(el.as_int_matrix(m)).dot(v), s)
            self.assertTrue(el.is_unimodular(u))
            self.assertTrue(el.is_unimodular(v))
            self.assertEqual(el.elementary_divisors(m), [expected[i][i] for i in range(min(len(m), len(m[0])))])

    def test_snf_diagonal_never_negative(self):
        for _ in range(100):
            m = random_matrix(self.rng, self.rng.randint(1, 4), self.rng.randint(1, 4))
            s, _, _ = el.snf(m)
            self.assertTrue(all(s[i, i] >= 0 for i in range(min(s.shape))))
            self.assertTrue(all(d >= 0 for d in el.elementary_divisors(m)))

    def test_snf_random_properties(self):
        for _ in range(15):
            m = random_matrix(self.rng, 4, 5)
            s, u, v = el.snf(m)
            assert_matrix_equal(self, u.dot(m).dot(v), s)
            self.assertTrue(el.is_unimodular(u))
            self.assertTrue(el.is_unimodular(v))
            diag = [s[i, i] for i in range(4)]
            off = [s[i, j] for i in range(4) for j in range(5) if i != j]
            self.assertFalse(any(off))
            self.assertTrue(all(d >= 0 for d in diag))
            for a, b in zip(diag, diag[1:]):
                if a == 0:
                    self.assertEqual(b, 0)
                else:
                    self.assertEqual(b % a, 0)
            self.assertEqual(el.elementary_divisors(m), diag)

    def test_elementary_divisors(self):
        self.assertEqual(el.elementary_divisors([[2, 4], [6, 8]]), [2, 4])
        self.assertEqual(el.elementary_divisors([[1, 1], [1, 1], [1, 1]]), [1, 0])

    def test_kernel_basis_symmetric_column(self):
        assert_matrix_equal(self, el.kernel_basis([[1], [1]]), [[1, -1]])

    def test_kernel_basis_invertible(self):
        self.assertEqual(el.kernel_basis([[2, 1], [1, 1]]).shape, (0, 2))

    def test_kernel_basis_is_saturated(self):
        for _ in range(15):
            m = random_matrix(self.rng, 6, 3)
            m[5, :] = 2 * m[0, :] - 3 * m[1, :]
            k = el.kernel_basis(m)
            self.assertEqual(el.rank(m) + k.shape[0], 6)
            self.assertFalse(any(k.dot(m).flatten()))
            self.assertTrue(all(d == 1 for d in el.elementary_divisors(k)))

    def test_solve_in_lattice(self):
        self.assertEqual(el.solve_in_lattice(el.identity(3), [4, -5, 6]), [4, -5, 6])
        self.assertIsNone(el.solve_in_lattice([[2, 0], [0, 2]], [1, 1]))
        with self.assertRaises(ValueError):
            el.solve_in_lattice(el.identity(2), [1, 2, 3])

    def test_lattice_solver_random(self):
        basis = random_matrix(self.rng, 3, 5)
        solver = el.LatticeSolver(basis)
        for _ in range(10):
            coeffs = [self.rng.randint(-9, 9) for _ in range(3)]
            target = [int(v) for v in np.array(coeffs, dtype=object).dot(basis)]
            found = solver.solve(target)
            self.assertIsNotNone(found)
            self.assertEqual([int(v) for v in np.array(found, dtype=object).dot(basis)], target)

    def test_transition_matrix(self):
        assert_matrix_equal(self, el.transition_matrix([[2, 3]], [[1, 1], [0, 1]]), [[2, 1]])
        with self.assertRaises(ValueError):
            el.transition_matrix([[1, 0]], [[2, 0], [0, 1]])

    def test_det(self):
        self.assertEqual(el.det([[2, 1], [1, 1]]), 1)
        self.assertEqual(el.det([[0, 1], [1, 0]]), -1)
        self.assertEqual(el.det([[2, 0, 1], [1, 3, 2], [1, 1, 2]]), 6)
        self.assertEqual(el.det([[1, 2], [2, 4]]), 0)
        self.assertEqual(el.det(np.zeros((0, 0), dtype=object)), 1)
        with self.assertRaises(ValueError):
            el.det([[1, 2]])

    def test_matrix_power(self):
        assert_matrix_equal(self, el.matrix_power([[1, 1], [0, 1]], 5), [[1, 5], [0, 1]])
        assert_matrix_equal(self, el.matrix_power([[3, 1], [2, 7]], 0), [[1, 0], [0, 1]])

    def test_lattice_equal(self):
        self.assertTrue(el.lattice_equal([[2, 0], [0, 2]], [[2, 2], [0, 2]]))
        self.assertFalse(el.lattice_equal([[2, 0], [0, 2]], [[1, 0], [0, 2]]))


if __name__ == '__main__':
    unittest.main()
