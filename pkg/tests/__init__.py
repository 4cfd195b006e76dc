"""Test suite for friezelab."""
