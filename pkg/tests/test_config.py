"""Tests for configuration defaults and validators."""

import unittest

from src.utils.config import Config


class TestConfig(unittest.TestCase):
    """Test cases for Config."""

    def test_formats(self):
        """Test output format validation."""
        for fmt in ("ascii", "json", "csv"):
            self.assertTrue(Config.validate_format(fmt))
        self.assertFalse(Config.validate_format("xml"))
        self.assertIn(Config.DEFAULT_FORMAT, Config.OUTPUT_FORMATS)

    def test_polygon_sizes(self):
        """Test polygon size limits."""
        self.assertFalse(Config.validate_polygon_size(2))
        self.assertTrue(Config.validate_polygon_size(3))
        self.assertFalse(Config.validate_polygon_size(Config.MAX_POLYGON_SIZE + 1))

    def test_variant_sizes(self):
        """Test the variant enumeration range."""
        self.assertFalse(Config.validate_variant_n(4))
        self.assertTrue(Config.validate_variant_n(5))
        self.assertTrue(Config.validate_variant_n(Config.VARIANT_MAX_N))
        self.assertFalse(Config.validate_variant_n(Config.VARIANT_MAX_N + 1))

    def test_seed(self):
        """Test that the randomized suites get an integer seed."""
        self.assertIsInstance(Config.RANDOM_SEED, int)
        self.assertIsInstance(Config.RUN_SLOW_TESTS, bool)


if __name__ == "__main__":
    unittest.main()
