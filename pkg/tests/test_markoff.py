"""Tests for Markoff triples, lattice snakes and the related exchange trees."""

import unittest

from src.exact import Mat2, laurent_variables
from src.markoff import (
    E1,
    E2,
    E3,
    LatticeVector,
    M_num,
    M_poly,
    Superbase,
    cone_law_holds,
    herriot_degree,
    herriot_distance,
    herriot_strip,
    herriot_triangle_relation,
    herriot_triples,
    hurwitz_expand,
    is_markoff_triple,
    markoff_numbers,
    markoff_snake,
    rosenberger_orbit,
    scott_matrices,
    scott_sequence,
    superbase_tree,
    topograph_expand,
    unique_triples,
)
from src.utils.errors import LatticeError


def primitive_vectors(bound: int):
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            u = LatticeVector(p, q)
            if (p, q) != (0, 0) and u.is_primitive():
                yield u


class TestLatticeSnakes(unittest.TestCase):
    """Test cases for M(u) from snake graphs."""

    def test_small_vectors(self):
        """Test the first Markoff numbers reached by vectors."""
        self.assertEqual(M_num(E1), 1)
        self.assertEqual(M_num(LatticeVector(1, -1)), 2)
        self.assertEqual(M_num(LatticeVector(2, -1)), 5)
        self.assertEqual(M_num(LatticeVector(3, -2)), 29)

    def test_polynomial(self):
        """Test M((1, -1)) = (x^2 + y^2) / z."""
        x, y, z = laurent_variables("xyz")
        self.assertEqual(M_poly(LatticeVector(1, -1)), (x * x + y * y) / z)
        self.assertEqual(M_poly(E2), y)

    def test_polynomial_specializes_to_count(self):
        """Test that evaluating at (1, 1, 1) gives the matching count."""
        for u in primitive_vectors(4):
            self.assertEqual(M_poly(u).evaluate((1, 1, 1)), M_num(u), msg=str(u))

    def test_polynomials_are_positive(self):
        """Test coefficient positivity."""
        for u in primitive_vectors(5):
            self.assertTrue(M_poly(u).is_positive(), msg=str(u))

    def test_polynomials_are_distinct(self):
        """Test that different lines give different polynomials."""
        seen = {}
        for u in primitive_vectors(5):
            if not u.is_shortest():
                seen.setdefault(u.lax(), M_poly(u))
        polys = list(seen.values())
        for k, p in enumerate(polys):
            self.assertFalse(any(p == q for q in polys[k + 1 :]))

    def test_sign_invariance(self):
        """Test that u and -u give the same count."""
        for u in primitive_vectors(3):
            self.assertEqual(M_num(u), M_num(-u))

    def test_exchange_relation(self):
        """Test M(u + v) M(u - v) = M(u)^2 + M(v)^2 for every basis with coordinates up to 4."""
        values = {}

        def m(w: LatticeVector) -> int:
            if w.lax() not in values:
                values[w.lax()] = M_num(w)
            return values[w.lax()]

        vectors = list(primitive_vectors(4))
        for u in vectors:
            for v in vectors:
                if abs(u.p * v.q - u.q * v.p) != 1:
                    continue
                self.assertEqual(m(u + v) * m(u - v), m(u) ** 2 + m(v) ** 2, msg=f"{u}, {v}")

    def test_cone_law(self):
        """Test the denominator exponents inside the cone of e1 and -e3."""
        for u in primitive_vectors(5):
            if u.p > u.q > 0:
                self.assertTrue(cone_law_holds(u), msg=str(u))
        with self.assertRaises(LatticeError):
            cone_law_holds(LatticeVector(1, 2))

    def test_snake_shape(self):
        """Test the triangles crossed by (1, -1)."""
        snake = markoff_snake(LatticeVector(1, -1))
        self.assertEqual(len(snake.triangles), 2)
        self.assertEqual(len(snake.interior_edges()), 1)

    def test_invalid_vectors(self):
        """Test primitivity and shortest-vector checks."""
        with self.assertRaises(LatticeError):
            M_num(LatticeVector(2, 2))
        with self.assertRaises(LatticeError):
            markoff_snake(E1)
        self.assertEqual(LatticeVector.parse("3,-2"), LatticeVector(3, -2))


class TestTopograph(unittest.TestCase):
    """Test cases for superbases and the Markoff tree."""

    def test_superbases_give_markoff_triples(self):
        """Test every superbase within four exchanges of the seed."""
        bases = superbase_tree(4)
        self.assertEqual(len(superbase_tree(1)), 4)
        for base in bases:
            self.assertTrue(is_markoff_triple(base.markoff_values()), msg=repr(base))
        values = {tuple(sorted(base.markoff_values())) for base in bases}
        self.assertIn((2, 5, 29), values)

    def test_superbase_validation(self):
        """Test the zero-sum and basis conditions."""
        self.assertEqual(Superbase.seed().vectors(), (E1, E2, E3))
        self.assertEqual(len(Superbase.seed().neighbours()), 3)
        with self.assertRaises(LatticeError):
            Superbase(E1, E1, E2)

    def test_numeric_tree(self):
        """Test the tree from (1, 1, 1) to depth 6."""
        tree = topograph_expand((1, 1, 1), 6)
        triples = unique_triples(tree)
        self.assertTrue(all(is_markoff_triple(t) for t in triples))
        self.assertIn((2, 5, 29), triples)
        self.assertTrue(tree.find_path((1, 1, 1), (2, 1, 1), (2, 5, 1)))
        self.assertTrue(all(node.flags["equation"] for node in tree.walk()))

    def test_formal_tree(self):
        """Test Laurentness and positivity of the formal tree."""
        tree = topograph_expand(None, 4)
        for node in tree.walk():
            self.assertNotEqual(node.flags.get("laurent"), False)
            self.assertTrue(node.flags["positive"])
            self.assertTrue(node.flags["equation"])

    def test_bad_seed(self):
        """Test that a non-Markoff seed is rejected."""
        with self.assertRaises(ValueError):
            topograph_expand((1, 1, 2), 2)
        with self.assertRaises(ValueError):
            topograph_expand((1, 1, 1), -1)

    def test_markoff_numbers(self):
        """Test the Markoff numbers below 1000."""
        self.assertEqual(
            markoff_numbers(1000), [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]
        )


class TestScott(unittest.TestCase):
    """Test cases for the Scott sequence."""

    def test_sequence(self):
        """Test the first seven terms."""
        self.assertEqual(scott_sequence(7), [1, 1, 2, 5, 29, 433, 37666])
        self.assertTrue(all(isinstance(t, int) for t in scott_sequence(10)))

    def test_matrices(self):
        """Test the matrix recurrence and its upper-left entries."""
        matrices = scott_matrices(6)
        self.assertEqual(
            matrices[3:], [Mat2(5, 2, 2, 1), Mat2(29, 12, 12, 5), Mat2(433, 179, 179, 74)]
        )
        self.assertEqual([m.a for m in scott_matrices(8)], scott_sequence(8))

    def test_short_requests(self):
        """Test the length preconditions."""
        with self.assertRaises(ValueError):
            scott_sequence(2)
        with self.assertRaises(ValueError):
            scott_matrices(1)


class TestHerriot(unittest.TestCase):
    """Test cases for the right-isosceles tiling."""

    O, A, B, C = (0, 0), (1, 1), (2, 1), (3, 2)

    def test_distances(self):
        """Test the six distances between O, A, B and C."""
        self.assertEqual(herriot_distance(self.B, self.A), 1)
        self.assertEqual(herriot_distance(self.A, self.O), 1)
        self.assertEqual(herriot_distance(self.C, self.B), 2)
        self.assertEqual(herriot_distance(self.B, self.O), 3)
        self.assertEqual(herriot_distance(self.C, self.A), 3)
        self.assertEqual(herriot_distance(self.C, self.O), 11)

    def test_relations(self):
        """Test the relations of triangles OAC and OBC."""
        for points in ((self.O, self.A, self.C), (self.O, self.B, self.C)):
            triangle = herriot_triangle_relation(*points)
            self.assertTrue(triangle.relation, msg=str(triangle))
        self.assertEqual(len(herriot_triples([self.O, self.A, self.B, self.C])), 4)

    def test_degrees(self):
        """Test vertex degrees in the tiling."""
        self.assertEqual(herriot_degree(self.O), 8)
        self.assertEqual(herriot_degree(self.B), 4)

    def test_strip(self):
        """Test strips along lines and through lattice points."""
        self.assertEqual(herriot_strip((0, 0), (1, 1)), [])
        self.assertGreater(len(herriot_strip((0, 0), (3, 2))), 0)
        with self.assertRaises(LatticeError):
            herriot_strip((0, 0), (2, 2))


class TestOtherEquations(unittest.TestCase):
    """Test cases for the ternary and four-variable relatives."""

    def test_rosenberger_families_stay_integral(self):
        """Test integrality of the three listed families."""
        for coeffs in ((1, 1, 1), (1, 1, 2), (1, 2, 3)):
            tree = rosenberger_orbit(coeffs, 6)
            self.assertTrue(tree.flags["listed"])
            for node in tree.walk():
                self.assertTrue(node.flags["integral"], msg=f"{coeffs}: {node.values}")
                self.assertTrue(node.flags["equation"])

    def test_rosenberger_unlisted(self):
        """Test that other coefficients are flagged."""
        tree = rosenberger_orbit((1, 2, 2), 2)
        self.assertFalse(tree.flags["listed"])

    def test_hurwitz_numeric(self):
        """Test the orbit of (1, 1, 1, 1)."""
        tree = hurwitz_expand(depth=3)
        for node in tree.walk():
            self.assertTrue(node.flags["equation"])
            self.assertTrue(all(isinstance(v, int) for v in node.values))
        self.assertTrue(tree.flags["positivity_observed"])

    def test_hurwitz_formal(self):
        """Test that the formal orbit is Laurent to depth 2."""
        tree = hurwitz_expand(depth=2, formal=True)
        self.assertTrue(all(node.flags.get("laurent") for node in tree.walk()))
        self.assertTrue(tree.flags["positivity_observed"])

    def test_hurwitz_bad_seed(self):
        """Test seed validation."""
        with self.assertRaises(ValueError):
            hurwitz_expand((1, 1, 1, 2))


if __name__ == "__main__":
    unittest.main()
