"""Tests for tropical friezes, laminations and tree metrics."""

import random
import unittest
from fractions import Fraction

import networkx as nx

from src.polygon import Zigzag, enumerate_triangulations
from src.tropical import (
    HEXAGON_LAMINATION,
    Arc,
    Lamination,
    MaxPlus,
    TropicalTable,
    lamination_distance,
    lamination_dual_tree,
    random_lamination,
    restrict,
    tree_leaf_distances,
    tropical_complete,
    tropical_sideways,
    tropical_table,
    verify_tropical,
)
from src.utils.config import Config
from src.utils.errors import GraphError


def same_distances(first, second) -> bool:
    n = first.n
    return all(
        first.entry(i, j) == second.entry(i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
    )


class TestMaxPlus(unittest.TestCase):
    """Test cases for the max-plus semiring."""

    def test_operations(self):
        """Test that + is max, * is addition and / is subtraction."""
        self.assertEqual(MaxPlus(2) + MaxPlus(5), MaxPlus(5))
        self.assertEqual(MaxPlus(2) * MaxPlus(5), MaxPlus(7))
        self.assertEqual(MaxPlus(2) / MaxPlus(5), MaxPlus(-3))

    def test_fractions_collapse(self):
        """Test that integral results come back as int."""
        half = MaxPlus(Fraction(1, 2))
        product = half * half
        self.assertEqual(product, MaxPlus(1))
        self.assertIsInstance(product.value, int)


class TestLamination(unittest.TestCase):
    """Test cases for arcs and lamination distances."""

    def test_arcs(self):
        """Test gap sorting, sides and crossings."""
        arc = Arc((5, 3))
        self.assertEqual(arc.gaps, (3, 5))
        self.assertEqual(arc.side(), frozenset({4, 5}))
        self.assertTrue(arc.separates(4, 6))
        self.assertFalse(arc.separates(1, 6))
        self.assertTrue(Arc((1, 3)).crosses(Arc((2, 4))))
        self.assertFalse(Arc((1, 5)).crosses(Arc((3, 5))))

    def test_invalid_arcs(self):
        """Test arc and gap validation."""
        with self.assertRaises(ValueError):
            Arc((2, 2))
        with self.assertRaises(ValueError):
            Arc((1, 3), 0)
        with self.assertRaises(ValueError):
            Lamination.from_pairs(5, [(1, 6)])

    def test_hexagon_rows(self):
        """Test the distances of the hexagon lamination row by row."""
        table = tropical_table(HEXAGON_LAMINATION)
        self.assertEqual(
            [table.row(r) for r in range(5)],
            [
                [3, 1, 1, 0, 2, 1],
                [2, 2, 1, 2, 3, 2],
                [1, 3, 2, 1, 3, 2],
                [2, 3, 2, 2, 2, 1],
                [1, 3, 1, 1, 0, 2],
            ],
        )
        self.assertEqual(lamination_distance(HEXAGON_LAMINATION, 1, 2), 3)
        self.assertEqual(table.entry(3, 3), 0)
        self.assertTrue(verify_tropical(table).ok)

    def test_scaling(self):
        """Test that halving the weights halves the distances."""
        half = HEXAGON_LAMINATION.scaled(Fraction(1, 2))
        self.assertFalse(half.is_integral())
        self.assertEqual(lamination_distance(half, 1, 2), Fraction(3, 2))
        self.assertTrue(verify_tropical(tropical_table(half)).ok)


class TestPropagation(unittest.TestCase):
    """Test cases for max-plus propagation."""

    def setUp(self):
        self.table = tropical_table(HEXAGON_LAMINATION)

    def test_ptolemy_from_every_triangulation(self):
        """Test rebuilding the table from each triangulation of the hexagon."""
        for T in enumerate_triangulations(6):
            rebuilt = tropical_complete(T, restrict(self.table, T))
            self.assertTrue(same_distances(rebuilt, self.table), msg=repr(T))

    def test_sideways(self):
        """Test rebuilding the table from a straight zig-zag and the sides."""
        d = self.table.entry
        z = Zigzag.straight(6, (d(1, 3), d(1, 4), d(1, 5)))
        rebuilt = tropical_sideways(z, self.table.row(0))
        self.assertTrue(same_distances(rebuilt, self.table))


class TestTreeMetrics(unittest.TestCase):
    """Test cases for dual trees and leaf distances."""

    def test_dual_tree_matches_table(self):
        """Test that the dual tree reproduces the hexagon distances."""
        tree = lamination_dual_tree(HEXAGON_LAMINATION)
        self.assertTrue(nx.is_tree(tree))
        self.assertEqual(
            tree_leaf_distances(tree).entries, tropical_table(HEXAGON_LAMINATION).entries
        )

    def test_random_laminations(self):
        """Test random non-crossing laminations against their trees."""
        rng = random.Random(Config.RANDOM_SEED)
        for _ in range(200):
            n = rng.randint(4, 8)
            L = random_lamination(n, rng.randint(1, 5), rng)
            self.assertTrue(L.is_noncrossing())
            self.assertTrue(L.is_integral())
            table = tropical_table(L)
            self.assertTrue(verify_tropical(table).ok, msg=repr(L))
            tree = tree_leaf_distances(lamination_dual_tree(L))
            self.assertEqual(tree.entries, table.entries)

    def test_crossing_lamination(self):
        """Test that crossing arcs have no dual tree."""
        with self.assertRaises(GraphError):
            lamination_dual_tree(Lamination.from_pairs(5, [(1, 3), (2, 4)]))

    def test_tree_validation(self):
        """Test cycle, missing leaf and negative weight checks."""
        cycle = nx.cycle_graph(3)
        with self.assertRaises(GraphError):
            tree_leaf_distances(cycle, [0, 1])
        path = nx.path_graph(3)
        with self.assertRaises(GraphError):
            tree_leaf_distances(path, [0, 7])
        nx.set_edge_attributes(path, -1, "weight")
        with self.assertRaises(GraphError):
            tree_leaf_distances(path, [0, 2])
        with self.assertRaises(GraphError):
            tree_leaf_distances(nx.path_graph(2), [0])


class TestVerification(unittest.TestCase):
    """Test cases for failed tropical checks."""

    def test_all_ones_is_a_star(self):
        """Test that constant distances pass."""
        entries = {(i, j): 1 for i in range(1, 6) for j in range(1, 6) if i != j}
        self.assertTrue(verify_tropical(TropicalTable(5, entries)).ok)

    def test_asymmetric_table(self):
        """Test that a broken table reports its failures."""
        entries = {(i, j): 1 for i in range(1, 6) for j in range(1, 6) if i != j}
        entries[(1, 3)] = 5
        report = verify_tropical(TropicalTable(5, entries))
        self.assertFalse(report.ok)
        self.assertFalse(report.symmetric)
        self.assertIn("symmetry at (1, 3)", report.failures)


if __name__ == "__main__":
    unittest.main()
