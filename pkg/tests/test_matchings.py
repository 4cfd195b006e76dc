"""Tests for matching graphs, Kuo condensation and the path transforms."""

import random
import unittest
from itertools import combinations

from src.matchings import (
    Dag,
    build_graph,
    contract_all,
    contract_degree2,
    count_disjoint_path_systems,
    dag_to_matching_graph,
    delete_black,
    formal_weights,
    kuo_check,
    kuo_terms,
    lindstrom_determinant,
    matching_count,
    matching_sum,
    unit_graph,
)
from src.polygon import Triangulation, enumerate_triangulations
from src.utils.config import Config
from src.utils.errors import GraphError


def hexagon() -> Triangulation:
    return Triangulation.from_pairs(6, [(2, 6), (2, 5), (3, 5)])


class TestMatchingGraph(unittest.TestCase):
    """Test cases for the matching graph of a triangulation."""

    def test_shape(self):
        """Test vertex counts and degrees."""
        G = build_graph(hexagon())
        self.assertEqual(len(G.black), 6)
        self.assertEqual(len(G.white), 4)
        self.assertEqual(G.degree((2, 3, 5)), 3)
        self.assertEqual(G.degree(2), 3)
        self.assertEqual(G.to_networkx().number_of_edges(), 12)

    def test_unweighted_sums(self):
        """Test the hexagon matching numbers."""
        G = build_graph(hexagon())
        self.assertEqual(matching_sum(delete_black(G, 1, 4)), 5)
        self.assertEqual(matching_sum(delete_black(G, 1, 3)), 3)
        self.assertEqual(matching_sum(delete_black(G, 2, 4)), 2)
        self.assertEqual(matching_count(delete_black(G, 3, 4)), 1)

    def test_weighted_hexagon(self):
        """Test the weighted matching polynomial with diagonals x, y, z."""
        T = hexagon()
        weights = formal_weights(T, names={(2, 6): "x", (2, 5): "y", (3, 5): "z"})
        x, y, z = weights[(2, 6)], weights[(2, 5)], weights[(3, 5)]
        W = matching_sum(delete_black(build_graph(T, weights), 1, 4))
        self.assertEqual(W, 1 + 2 * y + y * y + x * z)
        self.assertTrue(W.is_positive())

    def test_sides_have_one_matching(self):
        """Test that deleting adjacent vertices leaves exactly one matching."""
        for T in enumerate_triangulations(7):
            G = build_graph(T)
            for i in range(1, 8):
                self.assertEqual(matching_sum(delete_black(G, i, i % 7 + 1)), 1)

    def test_formal_weights_default_names(self):
        """Test default variable names."""
        weights = formal_weights(Triangulation.fan(5), formal_sides=True)
        names = ("s1_2", "d1_3", "d1_4", "s1_5", "s2_3", "s3_4", "s4_5")
        self.assertEqual(weights[(1, 3)].names, names)
        self.assertEqual(str(weights[(1, 2)]), "s1_2")

    def test_errors(self):
        """Test graph preconditions."""
        G = build_graph(hexagon())
        with self.assertRaises(GraphError):
            delete_black(G, 1, 1)
        with self.assertRaises(GraphError):
            delete_black(G, 1, 9)
        with self.assertRaises(GraphError):
            matching_sum(G)
        with self.assertRaises(GraphError):
            build_graph(hexagon(), {(2, 6): 1})


class TestKuo(unittest.TestCase):
    """Test cases for Kuo condensation."""

    def test_hexagon_terms(self):
        """Test the six sums for vertices 1, 2, 3, 4."""
        terms = kuo_terms(build_graph(hexagon()), 1, 2, 3, 4)
        self.assertEqual(terms, {"ac": 3, "bd": 2, "ab": 1, "cd": 1, "ad": 5, "bc": 1})
        self.assertTrue(kuo_check(build_graph(hexagon()), 1, 2, 3, 4))

    def test_every_cyclic_quadruple(self):
        """Test condensation on every quadruple of outer vertices, weighted and not."""
        for T in enumerate_triangulations(6)[:5]:
            for G in (build_graph(T), build_graph(T, formal_weights(T))):
                for quad in combinations(range(1, 7), 4):
                    self.assertTrue(kuo_check(G, *quad))

    def test_larger_polygons(self):
        """Test condensation for every triangulation of the heptagon and some octagons."""
        triangulations = enumerate_triangulations(7) + enumerate_triangulations(8)[::11]
        for T in triangulations:
            G = build_graph(T)
            for quad in combinations(range(1, T.n + 1), 4):
                self.assertTrue(kuo_check(G, *quad), msg=f"{T} {quad}")

    def test_needs_two_extra_black_vertices(self):
        """Test the colour-count precondition."""
        G = delete_black(build_graph(hexagon()), 1, 4)
        with self.assertRaises(GraphError):
            kuo_terms(G, 2, 3, 5, 6)


class TestTransforms(unittest.TestCase):
    """Test cases for the DAG transform and degree-2 contraction."""

    def test_dag_paths_are_matchings(self):
        """Test that disjoint path systems match perfect matchings of the doubled graph."""
        D = Dag(
            vertices=("s1", "s2", "a", "t1", "t2"),
            arcs=(("s1", "a"), ("a", "t1"), ("s1", "t1"), ("s2", "t2")),
            sources=("s1", "s2"),
            targets=("t1", "t2"),
        )
        self.assertEqual(count_disjoint_path_systems(D), 2)
        self.assertEqual(matching_count(dag_to_matching_graph(D)), 2)

    def test_grid_dag(self):
        """Test a 3x3 grid with two sources and two sinks against the determinant."""
        vertices = [(x, y) for x in range(3) for y in range(3)]
        arcs = []
        for x, y in vertices:
            if x < 2:
                arcs.append(((x, y), (x + 1, y)))
            if y < 2:
                arcs.append(((x, y), (x, y + 1)))
        D = Dag(tuple(vertices), tuple(arcs), ((0, 1), (1, 0)), ((1, 2), (2, 1)))
        # Paths (0,1)->(1,2): 2, (0,1)->(2,1): 1, (1,0)->(1,2): 1, (1,0)->(2,1): 2.
        self.assertEqual(lindstrom_determinant([[2, 1], [1, 2]]), 3)
        self.assertEqual(count_disjoint_path_systems(D), 3)
        self.assertEqual(matching_count(dag_to_matching_graph(D)), 3)

    def test_cyclic_dag_rejected(self):
        """Test acyclicity validation."""
        with self.assertRaises(GraphError):
            Dag(("a", "b"), (("a", "b"), ("b", "a")), ("a",), ("b",))

    def test_random_dags(self):
        """Test path systems against matchings on random DAGs of at most ten vertices."""
        rng = random.Random(Config.RANDOM_SEED)
        for _ in range(60):
            size = rng.randint(4, 10)
            vertices = tuple(range(size))
            arcs = tuple(
                (u, v) for u in vertices for v in vertices if u < v and rng.random() < 0.35
            )
            pairs = rng.randint(1, 2)
            chosen = rng.sample(vertices, 2 * pairs)
            D = Dag(vertices, arcs, tuple(chosen[:pairs]), tuple(chosen[pairs:]))
            self.assertEqual(
                matching_count(dag_to_matching_graph(D)), count_disjoint_path_systems(D), msg=str(D)
            )

    def test_contraction_preserves_sums(self):
        """Test contracting a 4-cycle into a double edge."""
        pairs = [("b1", "w1"), ("b2", "w1"), ("b1", "w2"), ("b2", "w2")]
        G = unit_graph(("b1", "b2"), ("w1", "w2"), pairs)
        self.assertEqual(matching_count(G), 2)
        H = contract_all(G)
        self.assertEqual(H.multiplicities(), [2])
        self.assertEqual(matching_count(H), 2)

    def test_contract_weighted(self):
        """Test that contraction keeps weighted sums on the hexagon graph."""
        T = hexagon()
        G = delete_black(build_graph(T, formal_weights(T)), 1, 4)
        before = matching_sum(G)
        self.assertEqual(matching_sum(contract_all(G)), before)
        with self.assertRaises(GraphError):
            contract_degree2(build_graph(T), 2)


if __name__ == "__main__":
    unittest.main()
