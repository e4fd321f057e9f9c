"""
test_verification.py

Unit tests for verification.py.
"""

import unittest
from unittest import mock

from core import manin, verification

_real_relation_matrix = manin.relation_matrix


def corrupted_relation_matrix(n):
    m = _real_relation_matrix(n).copy()
    m[0, 0] += 1
    return m


class TestVerification(unittest.TestCase):

    def test_all_checks_pass(self):
        stats = verification.run_verification(3)
        self.assertEqual(stats['failed'], 0, [r for r in stats['results'] if not r['passed']])
        self.assertEqual(stats['errors'], [])
        checks = {r['check'] for r in stats['results'] if r['n'] == 3}
        self.assertEqual(checks, {name for name, _, _, _ in verification.CHECKS})

    def test_homology_checks_skip_small_levels(self):
        stats = verification.run_verification(2)
        self.assertNotIn("closed_form", {r['check'] for r in stats['results']})
        self.assertEqual(stats['passed'], len(stats['results']))

    def test_corrupted_relations_are_detected(self):
        with mock.patch("core.manin.relation_matrix", side_effect=corrupted_relation_matrix):
            stats = verification.run_verification(2)
        failed = {r['check'] for r in stats['results'] if not r['passed']}
        self.assertIn("relation_supports", failed)
        self.assertIn("relation_boundary", failed)

    def test_check_exceptions_count_as_failures(self):
        with mock.patch("core.manin.relation_matrix", side_effect=RuntimeError("boom")):
            stats = verification.run_verification(1)
        self.assertGreater(stats['failed'], 0)
        self.assertTrue(any("boom" in e for e in stats['errors']))

    def test_checks_respect_level_range(self):
        calls = []

        def record(n):
            calls.append(n)
            return True, "ok"

        with mock.patch.object(verification, "CHECKS", [("bounded", 2, 3, record)]):
            stats = verification.run_verification(5)
        self.assertEqual(calls, [2, 3])
        self.assertEqual([r['n'] for r in stats['results']], [2, 3])

    def test_level_ranges_are_consistent(self):
        for name, min_n, max_n, _ in verification.CHECKS:
            self.assertLessEqual(min_n, max_n, name)
            self.assertGreaterEqual(max_n, 8, name)

    def test_rejects_bad_range(self):
        with self.assertRaises(ValueError):
            verification.run_verification(0)

    def test_individual_checks(self):
        for check in (verification.check_cusps, verification.check_boundary_rank, verification.check_relation_rank):
            passed, detail = check(4)
            self.assertTrue(passed, detail)
        passed, detail = verification.check_lim_basis(5)
        self.assertTrue(passed, detail)


if __name__ == '__main__':
    unittest.main()
