"""Tests for the variant frieze recurrence."""

import random
import unittest
from fractions import Fraction

from src.exact import LaurentPoly
from src.utils.config import Config
from src.utils.errors import RecurrenceDivisionError
from src.variant import (
    DoubleZigzag,
    VariantTable,
    render_variant,
    variant_csv_rows,
    variant_enumerate,
    variant_enumerate_auto,
    variant_from_double_zigzag,
    variant_symbolic,
    variant_verify,
)


class TestDoubleZigzag(unittest.TestCase):
    """Test cases for double zig-zag validation."""

    def test_straight(self):
        """Test the default straight zig-zag."""
        dz = DoubleZigzag.straight(7)
        self.assertEqual(dz.starts, (0, 0, 0))
        self.assertEqual(dz.cells()[:2], [((1, 0), 1), ((1, 1), 1)])
        self.assertEqual(dz.shifted(2)[0], (1, 2))

    def test_formal(self):
        """Test variable names of a formal zig-zag."""
        dz = DoubleZigzag.formal(6)
        self.assertEqual(str(dz.values[1][0]), "a2")
        self.assertEqual(dz.values[0][1].names, ("a1", "b1", "a2", "b2"))

    def test_validation(self):
        """Test shape checks."""
        with self.assertRaises(ValueError):
            DoubleZigzag.straight(4)
        with self.assertRaises(ValueError):
            DoubleZigzag(6, (0,), ((1, 1),))
        with self.assertRaises(ValueError):
            DoubleZigzag(7, (0, 2, 2), ((1, 1),) * 3)
        with self.assertRaises(ValueError):
            DoubleZigzag(6, (0, 0), ((1, 1), (1, 1, 1)))


class TestVariantTables(unittest.TestCase):
    """Test cases for table construction and verification."""

    def test_all_ones(self):
        """Test the table grown from ones at n = 6."""
        V = variant_from_double_zigzag(DoubleZigzag.straight(6))
        self.assertEqual(V.row(1), [1, 1, 2, 4, 4, 2] * 2)
        self.assertEqual(V.row(2), [1, 1, 2, 4, 4, 2] * 2)
        self.assertEqual(V.row(0), [1] * 12)
        report = variant_verify(V)
        self.assertTrue(report.is_positive_integral)
        self.assertEqual(report.minimal_period, 6)

    def test_all_ones_returns_after_fourteen(self):
        """Test the all-ones table at n = 7."""
        report = variant_verify(variant_from_double_zigzag(DoubleZigzag.straight(7)))
        self.assertTrue(report.is_positive_integral)
        self.assertEqual(14 % report.minimal_period, 0)

    def test_glide(self):
        """Test a table whose two middle rows differ by the glide."""
        V = variant_from_double_zigzag(DoubleZigzag.straight(6, [(1, 2), (1, 1)]))
        self.assertEqual(V.row(1), [1, 2, 3, 3, 3, 2, 1, 1, 3, 6, 3, 1])
        self.assertEqual(V.row(2), [1, 1, 3, 6, 3, 1, 1, 2, 3, 3, 3, 2])
        report = variant_verify(V)
        self.assertTrue(report.ok)
        self.assertTrue(report.glide_ok)
        self.assertEqual(report.minimal_period, 12)
        self.assertEqual(V.largest(), 6)

    def test_staggered_start(self):
        """Test a non-straight double zig-zag at n = 7."""
        V = variant_from_double_zigzag(DoubleZigzag(7, (1, 0, 1), ((1, 1),) * 3))
        self.assertEqual(V.start, 1)
        self.assertTrue(variant_verify(V).is_positive_integral)

    def test_random_rational_tables(self):
        """Test the 2n period and the glide on random positive rational zig-zags, n <= 8."""
        rng = random.Random(Config.RANDOM_SEED)
        for n in range(5, 9):
            for _ in range(3):
                pairs = [
                    tuple(Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(2))
                    for _ in range(n - 4)
                ]
                report = variant_verify(variant_from_double_zigzag(DoubleZigzag.straight(n, pairs)))
                self.assertTrue(report.relation_ok, msg=str(pairs))
                self.assertTrue(report.period_ok, msg=str(pairs))
                self.assertTrue(report.glide_ok, msg=str(pairs))
                self.assertTrue(report.positive, msg=str(pairs))

    def test_broken_entry(self):
        """Test that changing one entry is reported."""
        V = variant_from_double_zigzag(DoubleZigzag.straight(6)).with_entry(1, 3, 5)
        report = variant_verify(V)
        self.assertFalse(report.ok)
        self.assertFalse(report.relation_ok)
        self.assertIn("variant relation at (1, 3)", report.failures)

    def test_division_by_zero(self):
        """Test that a zero divisor raises with its position."""
        with self.assertRaises(RecurrenceDivisionError) as ctx:
            variant_from_double_zigzag(DoubleZigzag.straight(5, [(0, 1)]))
        self.assertEqual(ctx.exception.position, (1, 2))

    def test_entry_access(self):
        """Test boundary rows and missing cells."""
        V = VariantTable(6, {})
        self.assertEqual(V.entry(3, 40), 1)
        with self.assertRaises(ValueError):
            V.entry(4, 0)
        with self.assertRaises(KeyError):
            V.entry(1, 0)

    def test_render_and_csv(self):
        """Test the square layout and csv rows."""
        V = variant_from_double_zigzag(DoubleZigzag.straight(6))
        lines = render_variant(V).splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[1].split()[:6], ["1", "1", "2", "4", "4", "2"])
        self.assertEqual(variant_csv_rows(V)[2][:4], ["2", "1", "1", "2"])


class TestEnumeration(unittest.TestCase):
    """Test cases for bounded enumeration."""

    def test_small_counts(self):
        """Test the translation-class counts at n = 5 and n = 6."""
        self.assertEqual(variant_enumerate(5, 4).count, 1)
        result = variant_enumerate(6, 12)
        self.assertEqual(result.count, 7)
        self.assertGreaterEqual(result.candidates, result.count)
        self.assertFalse(result.metadata["rigorous"])
        for V in result.tables:
            self.assertTrue(variant_verify(V).is_positive_integral)

    def test_mirror_quotient(self):
        """Test that identifying mirror images pairs off the asymmetric tables at n = 6."""
        self.assertEqual(variant_enumerate(6, 12, mirror=True).count, 5)

    def test_mirror_images_are_distinct_translation_classes(self):
        """Test a table whose left-right reflection is not one of its translates."""
        V = variant_from_double_zigzag(DoubleZigzag.straight(6, [(1, 2), (5, 3)]))
        W = variant_from_double_zigzag(DoubleZigzag.straight(6, [(1, 3), (5, 2)]))
        self.assertEqual(V.row(1)[:4], [1, 2, 5, 3])
        self.assertEqual(V.row(2)[:4], [5, 3, 1, 2])
        self.assertEqual(W.row(1)[:4], [1, 3, 5, 2])
        for table in (V, W):
            self.assertTrue(variant_verify(table).is_positive_integral)
        rows = V.rows()
        for shift in range(12):
            self.assertNotEqual([row[shift:] + row[:shift] for row in rows], W.rows())
        self.assertEqual(variant_enumerate(6, 12).count, 7)

    def test_workers(self):
        """Test that the process pool gives the same tables."""
        serial = variant_enumerate(6, 12)
        parallel = variant_enumerate(6, 12, workers=2)
        self.assertEqual([V.rows() for V in parallel.tables], [V.rows() for V in serial.tables])

    def test_auto_bound(self):
        """Test the doubling schedule at n = 7."""
        result = variant_enumerate_auto(7)
        self.assertEqual(result.count, 70)
        self.assertTrue(result.metadata["stable"])
        self.assertGreaterEqual(len(result.metadata["bounds"]), 2)
        self.assertEqual(variant_enumerate(7, result.bound, mirror=True).count, 39)

    @unittest.skipUnless(Config.RUN_SLOW_TESTS, "set FRIEZELAB_SLOW_TESTS=1 to run")
    def test_eight(self):
        """Test that the count at n = 8 settles under the doubling schedule."""
        result = variant_enumerate_auto(8)
        self.assertTrue(result.metadata["stable"])
        mirrored = variant_enumerate(8, result.bound, mirror=True).count
        self.assertLessEqual(mirrored, result.count)
        self.assertGreaterEqual(2 * mirrored, result.count)

    def test_out_of_range(self):
        """Test n and bound checks."""
        with self.assertRaises(ValueError):
            variant_enumerate(4, 5)
        with self.assertRaises(ValueError):
            variant_enumerate(6, 0)


class TestSymbolic(unittest.TestCase):
    """Test cases for formal propagation."""

    def test_pentagon_is_laurent(self):
        """Test the formal table at n = 5."""
        report = variant_symbolic(5)
        self.assertTrue(report.evidence)
        self.assertIsNone(report.failure)
        self.assertTrue(all(isinstance(v, LaurentPoly) for v in report.table.entries.values()))

    def test_hexagon_runs(self):
        """Test that n = 6 produces a report either way."""
        report = variant_symbolic(6)
        self.assertIsInstance(report.laurent, bool)
        if report.laurent:
            self.assertTrue(report.period_ok)

    def test_symbolic_entries_evaluate_to_numeric_tables(self):
        """Test formal entries against numeric propagation at random rational points."""
        rng = random.Random(Config.RANDOM_SEED)
        for n in (5, 6):
            report = variant_symbolic(n)
            if report.table is None:
                self.assertIsNotNone(report.failure)
                continue
            for _ in range(20):
                point = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(2 * n - 8)]
                pairs = list(zip(point[::2], point[1::2]))
                dz = DoubleZigzag.straight(n, pairs)
                numeric = variant_from_double_zigzag(dz, width=2 * n + 2)
                self.assertEqual(set(numeric.entries), set(report.table.entries))
                for cell, value in report.table.entries.items():
                    self.assertEqual(value.evaluate(point), numeric.entries[cell], msg=str(cell))

    def test_limit(self):
        """Test the size limit."""
        with self.assertRaises(ValueError):
            variant_symbolic(Config.SYMBOLIC_VARIANT_MAX_N + 1)


if __name__ == "__main__":
    unittest.main()
