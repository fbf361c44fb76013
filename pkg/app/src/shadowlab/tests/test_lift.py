"""Unit tests for Construction A and the code-lattice identities."""

import unittest
from unittest.mock import patch

from shadowlab.catalog import catalog_code
from shadowlab.exceptions import CodeError, MismatchError
from shadowlab.lattice import NormCounts, enumerate_norms, reduce
from shadowlab.lift import (
    construction_a,
    lift_root_types_ok,
    roots_from_construction_a,
    shadow_lift_multiplicity,
    shadow_theta_from_code,
    theta_from_code,
    verify_shadow_identity,
    verify_theta_identity,
)
from shadowlab.scode import make_code, repetition_code


class TestConstructionA(unittest.TestCase):
    """Test cases for construction_a()."""

    def setUp(self):
        """Set up test fixtures."""
        self.z = repetition_code()
        self.e8 = catalog_code("e8")

    def test_lift_of_z_is_z_squared(self):
        """Test that L(z) has four norm-1 vectors and reduces to nothing."""
        lattice = construction_a(self.z)

        self.assertEqual(lattice.det, 1)
        self.assertEqual(enumerate_norms(lattice, 1)[1], 4)
        r, rest = reduce(lattice)
        self.assertEqual((r, rest.n), (2, 0))

    def test_lift_of_e8_has_240_roots(self):
        """Test that N2 = 2n + 16 A4 gives 240 for e8."""
        lattice = construction_a(self.e8)

        self.assertTrue(lattice.is_even)
        self.assertEqual(enumerate_norms(lattice, 2)[2], 240)

    def test_non_self_dual_code_rejected(self):
        """Test that Construction A refuses a code that is not self-dual."""
        with self.assertRaises(CodeError):
            construction_a(make_code(["1100"], 4))

    def test_series_from_code(self):
        """Test that the substituted series of z are theta_Z^2 and its shadow."""
        self.assertEqual(theta_from_code(self.z, 20).coefficients()[:9:4], [1, 4, 4])
        self.assertEqual(shadow_theta_from_code(self.z, 12).valuation(), 2)


class TestThetaIdentity(unittest.TestCase):
    """Test cases for verify_theta_identity()."""

    def test_identity_for_small_codes(self):
        """Test that z and e8 satisfy the theta identity and the N2 relation."""
        for name in ("z", "e8"):
            with self.subTest(name=name):
                report = verify_theta_identity(catalog_code(name), 40)
                self.assertTrue(report.passed)
                self.assertEqual(report.agreement_bound, 40)

    def test_mismatch_reports_first_exponent(self):
        """Test that a wrong enumeration is reported at its quarter-exponent."""
        wrong = NormCounts({0: 1, 1: 3}, 4)

        with patch("shadowlab.lift.enumerate_norms", return_value=wrong):
            with self.assertRaises(MismatchError) as ctx:
                verify_theta_identity(repetition_code(), 20)

        self.assertEqual(ctx.exception.exponent, 4)
        self.assertEqual(ctx.exception.expected, 4)
        self.assertEqual(ctx.exception.computed, 3)


class TestShadowIdentity(unittest.TestCase):
    """Test cases for verify_shadow_identity() and the lift multiplicity."""

    def test_multiplicities(self):
        """Test that N'_min = 2^w A'_w for e8, z and d12."""
        for name, norm, exponent in (("e8", 0, 0), ("z", 2, 1), ("d12", 4, 2)):
            with self.subTest(name=name):
                code = catalog_code(name)
                report = verify_shadow_identity(code)
                self.assertTrue(report.passed)
                self.assertEqual(report.enumerated_norm, norm)
                self.assertEqual(shadow_lift_multiplicity(code), exponent)

    def test_counts_beyond_the_minimum(self):
        """Test that the shadow counts of L(z) match up to norm 10."""
        report = verify_shadow_identity(repetition_code(), 10)

        self.assertEqual(report.agreement_bound, 11)
        self.assertTrue(report.shadow_correspondence)


class TestLiftRoots(unittest.TestCase):
    """Test cases for the roots of Construction A lattices."""

    def test_d12_lift(self):
        """Test that the lift of d12 has root system D12."""
        self.assertEqual(roots_from_construction_a(catalog_code("d12")), "D12")

    def test_root_types(self):
        """Test that only A1, even D, E7 and E8 can occur in a lift."""
        self.assertTrue(lift_root_types_ok("A1^22"))
        self.assertTrue(lift_root_types_ok("D6^3"))
        self.assertTrue(lift_root_types_ok("E7^2"))
        self.assertFalse(lift_root_types_ok("A15"))
        self.assertFalse(lift_root_types_ok("D5"))


if __name__ == "__main__":
    unittest.main()
