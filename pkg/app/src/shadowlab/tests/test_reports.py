"""Unit tests for report rendering."""

import json
import unittest
from fractions import Fraction

from rest_framework.exceptions import ValidationError

from shadowlab.reports import (
    CheckRecord,
    Report,
    format_value,
    info_json,
    info_text,
    report_json,
    report_text,
)


class TestFormatValue(unittest.TestCase):
    """Test cases for format_value()."""

    def test_scalars(self):
        """Test that None, booleans and fractions render exactly."""
        self.assertEqual(format_value(None), "none")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(False), "false")
        self.assertEqual(format_value(Fraction(-23, 8)), "-23/8")
        self.assertEqual(format_value(240), "240")

    def test_containers(self):
        """Test that dicts are sorted by key and sequences are parenthesised."""
        self.assertEqual(format_value({2: 4, 0: 1}), "{0: 1, 2: 4}")
        self.assertEqual(format_value((1, Fraction(1, 2))), "(1, 1/2)")
        self.assertEqual(format_value([]), "()")


class TestReportRendering(unittest.TestCase):
    """Test cases for the JSON and text reports."""

    def setUp(self):
        """Set up test fixtures."""
        self.report = Report(
            "verify theorem1 --prec 100",
            [
                CheckRecord(
                    "b/n2",
                    "Theorem 1(i)",
                    "N2 = 2n(23-n)",
                    "264",
                    "closed-form",
                    "264",
                    True,
                    12.34,
                ),
                CheckRecord(
                    "a/n1",
                    "table after Theorem 1",
                    "no vectors of norm 1",
                    "0",
                    "table",
                    "2",
                    False,
                    1.0,
                ),
            ],
        )

    def test_json_sorted_without_timings(self):
        """Test that records are sorted and runtimes are left out by default."""
        data = json.loads(report_json(self.report))

        self.assertEqual(data["command"], "verify theorem1 --prec 100")
        self.assertFalse(data["passed"])
        self.assertEqual([r["name"] for r in data["records"]], ["a/n1", "b/n2"])
        self.assertNotIn("runtime_ms", data["records"][0])
        self.assertEqual(data["records"][1]["anchor"], "Theorem 1(i)")

    def test_json_with_timings(self):
        """Test that runtimes appear rounded when requested."""
        data = json.loads(report_json(self.report, timings=True))

        self.assertEqual(data["records"][1]["runtime_ms"], 12.3)

    def test_json_is_deterministic(self):
        """Test that rendering twice gives the same bytes."""
        self.assertEqual(report_json(self.report), report_json(self.report))

    def test_failures(self):
        """Test that failures lists the failed records."""
        self.assertEqual([r.name for r in self.report.failures], ["a/n1"])

    def test_text_report(self):
        """Test the text layout of a report."""
        lines = report_text(self.report).splitlines()

        self.assertEqual(lines[0], "verify theorem1 --prec 100")
        self.assertEqual(
            lines[1], "FAIL a/n1 [table after Theorem 1]: 2 (expected 0, table)"
        )
        self.assertEqual(lines[-1], "1/2 checks passed")


class TestInfoRendering(unittest.TestCase):
    """Test cases for info_json() and info_text()."""

    def test_info_json(self):
        """Test that info values are rendered as strings."""
        data = json.loads(info_json("lattice_info E8", "E8", {"rank": 8, "even": True}))

        self.assertEqual(data["values"], {"even": "true", "rank": "8"})
        self.assertEqual(data["subject"], "E8")

    def test_info_json_requires_subject(self):
        """Test that a blank subject fails validation."""
        with self.assertRaises(ValidationError):
            info_json("code_info", "", {"length": 8})

    def test_info_text_aligns_keys(self):
        """Test that keys are padded to a common width."""
        text = info_text("E8", {"rank": 8, "unimodular": True})

        self.assertEqual(
            text.splitlines(), ["E8", "  rank        8", "  unimodular  true"]
        )


if __name__ == "__main__":
    unittest.main()
