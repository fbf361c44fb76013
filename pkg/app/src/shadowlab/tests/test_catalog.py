"""Tests for the lattice and code catalogs."""

import tempfile
import unittest
from pathlib import Path

from decouple import config
from django.test import SimpleTestCase, override_settings

from shadowlab.catalog import (
    CODE_LIFTS,
    CODE_NAMES,
    LATTICE_NAMES,
    catalog,
    catalog_code,
    code_block,
    code_by_name,
    code_catalog,
    lattice_by_name,
    leech,
    validate_catalog_entry,
)
from shadowlab.exceptions import CatalogError, DataFormatError
from shadowlab.lattice import (
    direct_sum,
    enumerate_norms,
    integer_lattice,
    root_system,
    shadow_norm_counts,
    shortest_characteristic,
)
from shadowlab.modular import extremal_n2, extremal_shadow_count
from shadowlab.scode import extremal_a4, is_self_dual, weight_enumerator

SLOW_TESTS = config("SHADOWLAB_SLOW_TESTS", default=False, cast=bool)

# name: (n, N2, shortest characteristic norm, number of them)
CATALOG_TABLE = {
    "E8": (8, 240, 0, 1),
    "D12": (12, 264, 4, 24),
    "E7^2": (14, 252, 6, 112),
    "A15": (15, 240, 7, 240),
    "D8^2": (16, 224, 8, 512),
    "A11E6": (17, 204, 9, 1088),
    "D6^3": (18, 180, 10, 2304),
    "A9^2": (18, 180, 10, 2304),
    "A7^2D5": (19, 152, 11, 4864),
    "D4^5": (20, 120, 12, 10240),
    "A5^4": (20, 120, 12, 10240),
    "A3^7": (21, 84, 13, 21504),
    "A1^22": (22, 44, 14, 45056),
    "O23": (23, 0, 15, 94208),
}


class TestLatticeCatalog(unittest.TestCase):
    """Test cases for the fourteen catalog lattices."""

    def test_catalog_table(self):
        """Test rank, N1, N2, roots and shortest characteristic vectors per entry."""
        self.assertEqual(sorted(CATALOG_TABLE), sorted(LATTICE_NAMES))
        for name, (n, n2, norm, count) in CATALOG_TABLE.items():
            if name == "O23" and not SLOW_TESTS:
                continue
            with self.subTest(name=name):
                lattice = catalog(name)
                counts = enumerate_norms(lattice, 2)
                self.assertEqual(lattice.n, n)
                self.assertTrue(lattice.is_unimodular)
                self.assertEqual(counts[1], 0)
                self.assertEqual(counts[2], n2)
                self.assertEqual(n2, extremal_n2(n))
                self.assertEqual(root_system(lattice), "" if name == "O23" else name)
                self.assertEqual(shortest_characteristic(lattice), (norm, count))
                self.assertEqual((norm, count), (n - 8, extremal_shadow_count(n)))

    def test_root_systems(self):
        """Test that the norm-2 vectors form the root system in the name."""
        for name in ("E8", "D12", "E7^2", "A15"):
            with self.subTest(name=name):
                self.assertEqual(root_system(catalog(name)), name)

    @unittest.skipUnless(SLOW_TESTS, "set SHADOWLAB_SLOW_TESTS to run")
    def test_shorter_leech(self):
        """Test that O23 has no roots and 94208 characteristic vectors of norm 15."""
        o23 = catalog("O23")

        self.assertEqual(o23.n, 23)
        self.assertEqual(root_system(o23), "")
        self.assertEqual(shortest_characteristic(o23), (15, 94208))

    @unittest.skipUnless(SLOW_TESTS, "set SHADOWLAB_SLOW_TESTS to run")
    def test_leech(self):
        """Test that the Leech lattice is even unimodular without roots."""
        lattice = leech()

        self.assertEqual(enumerate_norms(lattice, 2).as_dict(), {0: 1})

    def test_unknown_catalog_name(self):
        """Test that an unknown catalog name raises CatalogError."""
        with self.assertRaises(CatalogError):
            catalog("A2^12")

    def test_validate_catalog_entry(self):
        """Test that D12 validates and Z^8 is refused for having norm-1 vectors."""
        validate_catalog_entry("D12", catalog("D12"))

        with self.assertRaises(CatalogError):
            validate_catalog_entry("E8", integer_lattice(8))


class TestLatticeByName(unittest.TestCase):
    """Test cases for lattice_by_name()."""

    def test_direct_sum(self):
        """Test that E8+Z2 has rank 10 and four norm-1 vectors."""
        lattice = lattice_by_name("E8+Z2")

        self.assertEqual(lattice.n, 10)
        self.assertEqual(enumerate_norms(lattice, 1)[1], 4)

    def test_integer_lattice(self):
        """Test that Z3 is Z^3."""
        self.assertEqual(lattice_by_name("Z3").n, 3)

    def test_even_d16(self):
        """Test that D16+ is even unimodular with 480 roots."""
        lattice = lattice_by_name("D16+")

        self.assertTrue(lattice.is_even)
        self.assertEqual(lattice.det, 1)
        self.assertEqual(enumerate_norms(lattice, 2)[2], 480)

    def test_unknown_name(self):
        """Test that an unknown lattice raises CatalogError."""
        with self.assertRaises(CatalogError):
            lattice_by_name("E9")


def convolve(first: dict[int, int], second: dict[int, int], bound: int) -> dict:
    counts: dict[int, int] = {}
    for a, x in first.items():
        for b, y in second.items():
            if a + b <= bound:
                counts[a + b] = counts.get(a + b, 0) + x * y
    return dict(sorted(counts.items()))


class TestCatalogSums(unittest.TestCase):
    """Test cases for direct sums of catalog lattices."""

    def test_shadow_counts_add_over_direct_sums(self):
        """Test that characteristic norm counts of a sum convolve those of the parts."""
        for first, second, bound in (
            ("Z1", "E8", 9),
            ("Z1", "D12", 13),
            ("E8", "D12", 12),
        ):
            with self.subTest(lattices=(first, second)):
                left, right = lattice_by_name(first), catalog(second)
                expected = convolve(
                    shadow_norm_counts(left, bound).as_dict(),
                    shadow_norm_counts(right, bound).as_dict(),
                    bound,
                )
                total = shadow_norm_counts(direct_sum(left, right), bound)
                self.assertEqual(total.as_dict(), expected)

    def test_e8_plus_z_shadow(self):
        """Test the characteristic norm counts of E8 + Z up to norm 9."""
        counts = shadow_norm_counts(lattice_by_name("E8+Z1"), 9)

        self.assertEqual(counts.as_dict(), {1: 2, 9: 482})

    def test_sums_satisfy_the_n2_bound(self):
        """Test that sums of catalog lattices below rank 24 have N2 >= 2n(23-n)."""
        for first, second in (
            ("E8", "E8"),
            ("E8", "D12"),
            ("E8", "E7^2"),
            ("E8", "A15"),
        ):
            with self.subTest(lattices=(first, second)):
                lattice = direct_sum(catalog(first), catalog(second))
                counts = enumerate_norms(lattice, 2)
                self.assertLess(lattice.n, 24)
                self.assertEqual(counts[1], 0)
                self.assertGreaterEqual(counts[2], extremal_n2(lattice.n))


class TestCodeCatalog(unittest.TestCase):
    """Test cases for the catalog codes."""

    def test_catalog_codes_are_extremal(self):
        """Test that every catalog code is self-dual with A2 = 0 and A4 on the bound."""
        for name in CODE_NAMES:
            with self.subTest(name=name):
                code = catalog_code(name)
                enum = weight_enumerator(code)
                self.assertEqual(2 * code.k, code.n)
                self.assertTrue(is_self_dual(code))
                self.assertEqual(enum[2], 0)
                self.assertEqual(enum[4], extremal_a4(code.n))

    def test_code_catalog_alias(self):
        """Test that code_catalog returns the cached catalog code."""
        self.assertIs(code_catalog("e8"), catalog_code("e8"))

    def test_code_lifts(self):
        """Test that each code names a lattice of the same length."""
        for name, lattice_name in CODE_LIFTS.items():
            with self.subTest(name=name):
                self.assertIn(lattice_name, LATTICE_NAMES)

    def test_code_by_name(self):
        """Test that e8+z3 has length 14 and dimension 7."""
        code = code_by_name("e8+z3")

        self.assertEqual((code.n, code.k), (14, 7))
        self.assertEqual(weight_enumerator(code)[2], 3)

    def test_unknown_code(self):
        """Test that an unknown code raises CatalogError."""
        with self.assertRaises(CatalogError):
            code_by_name("h8")

    def test_code_blocks(self):
        """Test the d8 and e7 component codes and their glue."""
        d8, glue = code_block("d8")
        self.assertEqual(d8.k, 3)
        self.assertEqual(sorted(glue), [1, 2, 3])

        e7, glue = code_block("e7")
        self.assertEqual(weight_enumerator(e7).support(), {0: 1, 4: 7})
        self.assertEqual(glue, {1: 0b1111111})

    def test_odd_block_rejected(self):
        """Test that d7 is not a component code."""
        with self.assertRaises(CatalogError):
            code_block("d7")


class TestCatalogData(SimpleTestCase):
    """Test cases for catalog files read from SHADOWLAB_DATA."""

    def setUp(self):
        """Set up test fixtures."""
        self.tmpdir = tempfile.TemporaryDirectory()
        self.root = Path(self.tmpdir.name)

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_missing_directory(self):
        """Test that a missing data directory raises CatalogError."""
        with override_settings(SHADOWLAB_DATA=str(self.root / "missing")):
            with self.assertRaises(CatalogError):
                catalog("E8")

    def test_glue_row_of_wrong_width(self):
        """Test that a glue row not matching the components is a DataFormatError."""
        (self.root / "lattices").mkdir()
        (self.root / "lattices" / "bad.glue").write_text(
            "NAME D4^2\nROOT D4^2\nGLUE 1\n", encoding="utf-8"
        )

        with override_settings(SHADOWLAB_DATA=str(self.root)):
            with self.assertRaises(DataFormatError):
                catalog("D4^2")

    def test_unknown_keyword(self):
        """Test that an unknown keyword is a DataFormatError."""
        (self.root / "codes").mkdir()
        (self.root / "codes" / "bad.code").write_text(
            "NAME x\nWIDTH 4\n", encoding="utf-8"
        )

        with override_settings(SHADOWLAB_DATA=str(self.root)):
            with self.assertRaises(DataFormatError):
                catalog_code("x")


if __name__ == "__main__":
    unittest.main()
