"""
test_manin.py

Unit tests for manin.py: relations, the free presentation, cusps and boundary.
"""

import unittest

import numpy as np

from core import exact_lattice, manin, psl2
from core.manin import CuspClass
from core.psl2 import CosetLabel


def unit(n, label):
    vec = [0] * (n * n + 1)
    vec[manin.free_basis(n).index(label)] = 1
    return vec


class TestManin(unittest.TestCase):

    def test_enumerate_cosets(self):
        self.assertEqual(len(manin.enumerate_cosets(1)), 6)
        self.assertEqual(len(manin.enumerate_cosets(2)), 24)
        self.assertEqual(len(manin.enumerate_cosets(3)), 54)
        self.assertEqual(manin.enumerate_cosets(2)[:3], [CosetLabel(0, 0, 0), CosetLabel(0, 1, 0), CosetLabel(1, 0, 0)])
        with self.assertRaises(ValueError):
            manin.enumerate_cosets(0)

    def test_sigma_tau_images(self):
        n = 5
        for i in range(n):
            for j in range(n):
                sigma_images = {k: manin.sigma_tau_images(CosetLabel(i, j, k), n)[0] for k in range(6)}
                tau_images = {k: manin.sigma_tau_images(CosetLabel(i, j, k), n)[1] for k in range(6)}
                self.assertEqual(sigma_images[0], CosetLabel(i, j, 3))
                self.assertEqual(sigma_images[1], CosetLabel((i - 1) % n, j, 4))
                self.assertEqual(sigma_images[2], CosetLabel(i, j, 5))
                self.assertEqual(tau_images[0], CosetLabel(i, j, 2))
                self.assertEqual(tau_images[1], CosetLabel((i - 1) % n, j, 0))
                self.assertEqual(tau_images[4], CosetLabel((i + 1) % n, (j - 1) % n, 5))

    def test_relation_matrix_shape_and_support(self):
        for n in (1, 2, 3):
            m = manin.relation_matrix(n)
            self.assertEqual(m.shape, (12 * n * n, 6 * n * n))
            for r, row in enumerate(m.tolist()):
                support = sorted(v for v in row if v)
                self.assertEqual(support, [1, 1] if r < 6 * n * n else [1, 1, 1])

    def test_relation_matrix_free_quotient_n3(self):
        divisors = exact_lattice.elementary_divisors(manin.relation_matrix(3))
        self.assertEqual(divisors.count(1), 44)
        self.assertEqual(divisors.count(0), 10)

    def test_presentation_rank_up_to_twelve(self):
        for n in range(1, 13):
            pres = manin.presentation(n)
            self.assertEqual(pres.rank, n * n + 1)
            self.assertEqual(pres.reduction.shape, (6 * n * n, n * n + 1))

    def test_basis_labels(self):
        self.assertEqual(manin.basis_labels(1), ["x[0,0]", "y[0,0]"])
        self.assertEqual(manin.basis_labels(2), ["y[1,0]", "y[1,1]", "x[1,0]", "x[1,1]", "y[0,1]"])
        self.assertEqual(len(manin.basis_labels(3)), 10)

    def test_basis_maps_to_itself(self):
        n = 3
        pres = manin.presentation(n)
        for label in pres.basis:
            self.assertEqual(pres.coords(label), unit(n, label))

    def test_reduction_examples(self):
        n = 3
        pres = manin.presentation(n)
        for i in range(n):
            for j in range(n):
                x = pres.coords(CosetLabel(i, j, 0))
                y = pres.coords(CosetLabel(i, j, 2))
                x_prev = pres.coords(CosetLabel((i - 1) % n, j, 0))
                y_prev = pres.coords(CosetLabel((i - 1) % n, j, 2))
                self.assertEqual(pres.coords(CosetLabel(i, j, 5)), [-v for v in y])
                self.assertEqual(pres.coords(CosetLabel(i, j, 3)), [-v for v in x])
                self.assertEqual(pres.coords(CosetLabel(i, j, 4)), [a + b for a, b in zip(x, y)])
                self.assertEqual(pres.coords(CosetLabel(i, j, 1)), [-a - b for a, b in zip(x_prev, y_prev)])

    def test_reduction_of_x00_for_n2(self):
        self.assertEqual(manin.presentation(2).coords(CosetLabel(0, 0, 0)), [1, 0, 1, 0, -1])

    def test_reduction_is_sound(self):
        for n in (2, 3):
            pres = manin.presentation(n)
            solver = exact_lattice.LatticeSolver(manin.relation_matrix(n))
            for c, label in enumerate(manin.enumerate_cosets(n)):
                diff = [0] * (6 * n * n)
                diff[c] += 1
                for b, basis_label in enumerate(pres.basis):
                    diff[manin.coset_index(basis_label, n)] -= pres.reduction[c, b]
                self.assertIsNotNone(solver.solve(diff), f"{label} for n={n}")

    def test_derived_relation(self):
        n = 4
        for i in range(n):
            for j in range(n):
                lhs = manin.reduce_symbol({CosetLabel(i, j, 0): 1, CosetLabel(i, j, 2): 1}, n)
                rhs = manin.reduce_symbol(
                    {CosetLabel((i + 1) % n, j, 0): 1, CosetLabel((i + 1) % n, (j - 1) % n, 2): 1}, n
                )
                self.assertEqual(lhs, rhs)

    def test_cusp_set(self):
        self.assertEqual(len(manin.cusp_set(1)), 3)
        cusps = manin.cusp_set(3)
        self.assertEqual(len(cusps), 9)
        for base in manin.CUSP_BASES:
            self.assertEqual(sum(1 for c in cusps if c.base == base), 3)

    def test_cusp_class_rules(self):
        n = 5
        for k in range(n):
            self.assertEqual(manin.cusp_class(k, 0, "one", n), manin.cusp_class(0, k, "one", n))
            self.assertEqual(manin.cusp_class(k, 0, "one", n), CuspClass("one", k))
        self.assertEqual(manin.cusp_class(2, 4, "zero", n), CuspClass("zero", 2))
        self.assertEqual(manin.cusp_class(2, 4, "infinity", n), CuspClass("infinity", 4))
        with self.assertRaises(ValueError):
            manin.cusp_class(0, 0, "half", n)

    def test_general_cusp_classify(self):
        self.assertEqual(manin.general_cusp_classify(psl2.ZERO, 3), CuspClass("zero", 0))
        self.assertEqual(manin.general_cusp_classify(psl2.INFINITY, 3), CuspClass("infinity", 0))
        self.assertEqual(manin.general_cusp_classify((3, 1), 3), CuspClass("one", 1))

    def test_general_cusp_classify_agrees_with_rules(self):
        n = 4
        for i in range(n):
            for j in range(n):
                g = psl2.power(psl2.A, i) * psl2.power(psl2.B, j)
                for base, point in (("zero", psl2.ZERO), ("one", psl2.ONE), ("infinity", psl2.INFINITY)):
                    self.assertEqual(
                        manin.general_cusp_classify(psl2.act(g, point), n), manin.cusp_class(i, j, base, n)
                    )

    def test_boundary_of_generators(self):
        n = 3
        self.assertEqual(
            manin.boundary({CosetLabel(0, 0, 0): 1}, n),
            {CuspClass("infinity", 0): 1, CuspClass("zero", 0): -1},
        )
        for i in range(n):
            for j in range(n):
                self.assertEqual(
                    manin.boundary({CosetLabel(i, j, 0): 1}, n),
                    {CuspClass("infinity", j): 1, CuspClass("zero", i): -1},
                )
                self.assertEqual(
                    manin.boundary({CosetLabel(i, j, 2): 1}, n),
                    {CuspClass("zero", i): 1, CuspClass("one", (i + j) % n): -1},
                )

    def test_boundary_accepts_reduced_coords(self):
        n = 3
        label = CosetLabel(1, 2, 5)
        coords = manin.presentation(n).coords(label)
        self.assertEqual(manin.boundary(coords, n), manin.boundary({label: 1}, n))
        with self.assertRaises(ValueError):
            manin.boundary([1, 2, 3], n)

    def test_relations_have_zero_boundary(self):
        n = 3
        cosets = manin.enumerate_cosets(n)
        for row in manin.relation_rows(n):
            symbol = {cosets[c]: v for c, v in row.items()}
            self.assertEqual(manin.boundary(symbol, n), {})

    def test_boundary_rank(self):
        for n in range(1, 13):
            d = manin.boundary_matrix(n)
            self.assertEqual(d.shape, (n * n + 1, 3 * n))
            self.assertEqual(exact_lattice.rank(d), 3 * n - 1)
            self.assertEqual(exact_lattice.kernel_basis(d).shape[0], (n - 1) * (n - 2))

    def test_boundary_matrix_is_read_only(self):
        d = manin.boundary_matrix(2)
        with self.assertRaises(ValueError):
            d[0, 0] = 5
        self.assertTrue(np.array_equal(d, manin.boundary_matrix(2)))


if __name__ == '__main__':
    unittest.main()
