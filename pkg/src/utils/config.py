"""Configuration management for friezelab."""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Configuration settings for the frieze toolkit."""

    # Output settings
    DEFAULT_FORMAT: str = os.getenv("FRIEZELAB_FORMAT", "ascii")
    OUTPUT_FORMATS: list[str] = ["ascii", "json", "csv"]

    # Polygon settings
    MIN_POLYGON_SIZE: int = 3
    MAX_POLYGON_SIZE: int = int(os.getenv("MAX_POLYGON_SIZE", "12"))
    DIRECT_SEARCH_MAX_N: int = int(os.getenv("DIRECT_SEARCH_MAX_N", "9"))

    # Variant enumeration settings
    VARIANT_MIN_N: int = 5
    VARIANT_MAX_N: int = int(os.getenv("VARIANT_MAX_N", "8"))
    VARIANT_START_BOUND: int = int(os.getenv("VARIANT_START_BOUND", "4"))
    SYMBOLIC_VARIANT_MAX_N: int = int(os.getenv("SYMBOLIC_VARIANT_MAX_N", "7"))

    # Randomized property suites
    RANDOM_SEED: int = int(os.getenv("FRIEZELAB_SEED", "20240601"))
    RUN_SLOW_TESTS: bool = os.getenv("FRIEZELAB_SLOW_TESTS", "0") == "1"

    # Logging settings
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    @classmethod
    def validate_format(cls, fmt: str) -> bool:
        """Validate if the output format is supported.

        Args:
            fmt: Output format name

        Returns:
            True if format is valid, False otherwise
        """
        return fmt in cls.OUTPUT_FORMATS

    @classmethod
    def validate_polygon_size(cls, n: int) -> bool:
        """Validate a polygon size against the desk-scale limits."""
        return cls.MIN_POLYGON_SIZE <= n <= cls.MAX_POLYGON_SIZE

    @classmethod
    def validate_variant_n(cls, n: int) -> bool:
        """Validate the period parameter of a variant enumeration."""
        return cls.VARIANT_MIN_N <= n <= cls.VARIANT_MAX_N
