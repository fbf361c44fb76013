"""Unit tests for the acceptance suite runner."""

import random
import unittest
from unittest.mock import patch

from decouple import config

from shadowlab.exceptions import CatalogError, MismatchError, ShadowLabError
from shadowlab.verification import (
    CODE_LENGTHS,
    RANDOM_SEED,
    SUITES,
    Check,
    _random_sum,
    _sum_code,
    _transforms_agree,
    build_checks,
    run_check,
    run_suite,
)


SLOW_TESTS = config("SHADOWLAB_SLOW_TESTS", default=False, cast=bool)


def boom():
    raise ValueError("series too short")


def missing_catalog():
    raise CatalogError("no glue file for E8")


def theta_mismatch():
    raise MismatchError("theta differs at 8", 8, 240, 238)


class TestRunCheck(unittest.TestCase):
    """Test cases for run_check()."""

    def test_passing_check(self):
        """Test that equal values pass and are rendered as strings."""
        check = Check("x/pass", "Eq. (1)", "1/2 = 2/4", "trivial", lambda: (0.5, 0.5))
        record = run_check(check)

        self.assertTrue(record.passed)
        self.assertEqual(record.expected, "0.5")
        self.assertEqual(record.anchor, "Eq. (1)")
        self.assertGreaterEqual(record.runtime_ms, 0)

    def test_failing_check(self):
        """Test that unequal values fail with both sides recorded."""
        check = Check("x/fail", "Eq. (2)", "N1 = 0", "table", lambda: (0, 2))
        record = run_check(check)

        self.assertFalse(record.passed)
        self.assertEqual((record.expected, record.computed), ("0", "2"))

    def test_raising_check(self):
        """Test that an unexpected exception is recorded as a failure."""
        with self.assertLogs("shadowlab.verification", level="ERROR"):
            record = run_check(Check("x/raise", "Eq. (3)", "anything", "derived", boom))

        self.assertFalse(record.passed)
        self.assertEqual(record.computed, "error: series too short")

    def test_mismatch_is_a_failed_check(self):
        """Test that a MismatchError records both sides of the identity."""
        check = Check("x/lift", "Eq. (thetaLC)", "theta", "derived", theta_mismatch)
        record = run_check(check)

        self.assertFalse(record.passed)
        self.assertEqual((record.expected, record.computed), ("240", "238"))

    def test_library_error_propagates(self):
        """Test that a ShadowLabError from a check is raised, not recorded."""
        check = Check("x/data", "Eq. (4)", "anything", "table", missing_catalog)

        with self.assertRaises(CatalogError):
            run_check(check)

    def test_os_error_propagates(self):
        """Test that an OSError from a check is raised, not recorded."""

        def unreadable():
            raise FileNotFoundError("e8.glue")

        with self.assertRaises(OSError):
            run_check(Check("x/io", "Eq. (5)", "anything", "table", unreadable))


class TestRunSuite(unittest.TestCase):
    """Test cases for run_suite() and build_checks()."""

    def test_unknown_suite(self):
        """Test that an unknown suite name raises ShadowLabError."""
        with self.assertRaises(ShadowLabError):
            run_suite("theorem2", 100)

    def test_records_are_sorted(self):
        """Test that the report lists checks by name with the echoed command."""
        checks = [
            Check("b", "Eq. (b)", "", "trivial", lambda: (1, 1)),
            Check("a", "Eq. (a)", "", "trivial", lambda: (1, 2)),
        ]
        with patch("shadowlab.verification.build_checks", return_value=checks):
            report = run_suite("congruence", 20, "verify congruence --prec 20")

        self.assertEqual([r.name for r in report.records], ["a", "b"])
        self.assertEqual([r.anchor for r in report.records], ["Eq. (a)", "Eq. (b)"])
        self.assertEqual(report.command, "verify congruence --prec 20")
        self.assertFalse(report.passed)

    def test_all_collects_every_suite(self):
        """Test that build_checks('all') calls every suite builder."""
        names = [s for s in SUITES if s != "all"]
        patches = {
            "theorem1": "theorem1_checks",
            "theorem1a": "theorem1a_checks",
            "construction-a": "construction_a_checks",
            "congruence": "congruence_checks",
            "reduction": "reduction_checks",
        }
        self.assertEqual(sorted(patches), sorted(names))

        mocks = {}
        for suite, target in patches.items():
            patcher = patch(
                f"shadowlab.verification.{target}",
                return_value=[
                    Check(suite, "Eq. (1)", "", "trivial", lambda: (1, 1))
                ],
            )
            mocks[suite] = patcher.start()
            self.addCleanup(patcher.stop)

        checks = build_checks("all", 40)

        self.assertEqual(sorted(c.name for c in checks), sorted(names))
        mocks["construction-a"].assert_called_once_with(40)

    def test_theorem1_check_names(self):
        """Test that the lattice suite names every catalog lattice and rank."""
        names = {check.name for check in build_checks("theorem1", 100)}

        self.assertIn("theorem1/extremal-theta/23", names)
        self.assertIn("theorem1/O23/shadow-count", names)
        self.assertIn("theorem1/E8^2/shadow-defect", names)


class TestAnchors(unittest.TestCase):
    """Test cases for the reference each check records."""

    def setUp(self):
        """Set up test fixtures."""
        self.anchors = {
            check.name: check.anchor for check in build_checks("all", 40)
        }

    def test_every_check_has_an_anchor(self):
        """Test that no check is built without an anchor."""
        missing = [name for name, anchor in self.anchors.items() if not anchor]

        self.assertEqual(missing, [])

    def test_lattice_anchors(self):
        """Test the anchors of the lattice bound and shadow checks."""
        expected = {
            "theorem1/extremal-theta/12": "Eq. (thetaL)",
            "theorem1/D12/n1": "table after Theorem 1",
            "theorem1/D12/n2": "Theorem 1(i)",
            "theorem1/D12/shadow-min": "Theorem 1(ii)",
            "theorem1/O23/shadow-count": "Theorem 1(iii)",
            "theorem1/E8^2/shadow-defect": "Eq. (n-16)",
            "congruence/E7^2": "Eq. (25-n)",
            "congruence/D16+": "Eq. (25-n)",
        }
        for name, anchor in expected.items():
            with self.subTest(name=name):
                self.assertEqual(self.anchors[name], anchor)

    def test_code_anchors(self):
        """Test the anchors of the code and Construction A checks."""
        expected = {
            "theorem1a/g22/a4": "Theorem 1A(i)",
            "theorem1a/g22/shadow-min": "Theorem 1A(ii)",
            "theorem1a/g22/shadow-count": "Theorem 1A(iii)",
            "theorem1a/coherence/00": "Eq. (W&W')",
            "construction-a/e8/theta": "Eq. (thetaLC)",
            "construction-a/d12/shadow": "Eq. (L'C)",
            "construction-a/direct-sum/e8+d12": "Eq. (oplus)",
            "construction-a/norm1/e8+z": "Eq. (LC)",
        }
        for name, anchor in expected.items():
            with self.subTest(name=name):
                self.assertEqual(self.anchors[name], anchor)


class TestSuitesPass(unittest.TestCase):
    """Test cases that run whole suites over the catalogs."""

    def assertSuitePasses(self, suite, prec=100):
        report = run_suite(suite, prec)

        self.assertTrue(report.records)
        self.assertEqual([record.name for record in report.failures], [])
        self.assertTrue(report.passed)
        return report

    def test_theorem1a(self):
        """Test that every code bound, shadow and coherence check passes."""
        report = self.assertSuitePasses("theorem1a")

        self.assertEqual(len(report.records), 62)

    def test_congruence(self):
        """Test that the N2 congruence holds on the catalog and both even lattices."""
        report = self.assertSuitePasses("congruence")

        self.assertEqual(len(report.records), 30)

    def test_reduction(self):
        """Test that splitting off Z^r and z^r recovers every base."""
        report = self.assertSuitePasses("reduction")

        self.assertEqual(len(report.records), 30)

    def test_construction_a(self):
        """Test that the theta and shadow identities hold on all seven codes."""
        report = self.assertSuitePasses("construction-a", prec=40)

        self.assertEqual(len(report.records), 51)

    @unittest.skipUnless(SLOW_TESTS, "set SHADOWLAB_SLOW_TESTS to run")
    def test_theorem1(self):
        """Test that every lattice bound and shadow check passes, O23 included."""
        report = self.assertSuitePasses("theorem1")

        self.assertEqual(len(report.records), 111)


class TestRandomSums(unittest.TestCase):
    """Test cases for the random direct sums of the coherence checks."""

    def test_random_sums_fit(self):
        """Test that random sums stay within length 24."""
        rng = random.Random(RANDOM_SEED)
        for _ in range(50):
            parts = _random_sum(rng)
            length = sum(2 if p == "z" else CODE_LENGTHS[p] for p in parts)
            self.assertLessEqual(length, 24)
            self.assertTrue(parts)

    def test_random_sums_are_reproducible(self):
        """Test that the fixed seed gives the same sums."""
        first = _random_sum(random.Random(RANDOM_SEED))
        second = _random_sum(random.Random(RANDOM_SEED))

        self.assertEqual(first, second)

    def test_transforms_agree_on_a_sum(self):
        """Test the transform coherence on e8 + z^2."""
        self.assertTrue(_transforms_agree(_sum_code(["e8", "z", "z"])))


if __name__ == "__main__":
    unittest.main()
