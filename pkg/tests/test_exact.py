"""Tests for exact arithmetic: Laurent polynomials, rationals and 2x2 matrices."""

import random
import unittest
from fractions import Fraction

from src.exact import (
    LaurentPoly,
    Mat2,
    divide,
    is_integral_value,
    is_positive_value,
    laurent_variables,
    lp_div_exact,
    lp_eval,
    lp_is_positive,
    lp_mul,
    mat2_mul,
    mat2_product,
    normalize,
    parse_rational,
)
from src.utils.config import Config
from src.utils.errors import ArityMismatch, NotDivisible, ZeroSubstitution


def random_poly(rng: random.Random, names, terms: int = 3) -> LaurentPoly:
    poly = {}
    for _ in range(terms):
        exps = tuple(rng.randint(-2, 2) for _ in names)
        poly[exps] = rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPoly(names, poly)


class TestLaurentPoly(unittest.TestCase):
    """Test cases for LaurentPoly."""

    def setUp(self):
        self.x, self.y, self.z = laurent_variables("xyz")

    def test_negative_exponents_are_kept(self):
        """Test that x/y stays a single term with a negative exponent."""
        p = self.x / self.y
        self.assertEqual(p.terms(), [((1, -1, 0), 1)])
        self.assertEqual(p.denominator_exponents(), (0, 1, 0))

    def test_markoff_exchange_is_laurent(self):
        """Test (x^2 + y^2) / z and its evaluation at (1, 1, 1)."""
        p = (self.x * self.x + self.y * self.y) / self.z
        self.assertTrue(lp_is_positive(p))
        self.assertEqual(lp_eval(p, (1, 1, 1)), 2)
        self.assertEqual(lp_eval(p, (1, 2, Fraction(1, 2))), 10)

    def test_div_exact_round_trip(self):
        """Test that dividing a product by a factor recovers the other factor."""
        rng = random.Random(Config.RANDOM_SEED)
        for _ in range(25):
            p = random_poly(rng, ("x", "y", "z"))
            q = random_poly(rng, ("x", "y", "z"))
            if q.is_zero():
                continue
            self.assertEqual(lp_div_exact(lp_mul(p, q), q), p)

    def test_eval_respects_sums_and_products(self):
        """Test that evaluation is a ring homomorphism."""
        rng = random.Random(Config.RANDOM_SEED + 1)
        point = (Fraction(2, 3), 5, Fraction(-1, 2))
        for _ in range(20):
            p = random_poly(rng, ("x", "y", "z"))
            q = random_poly(rng, ("x", "y", "z"))
            self.assertEqual(lp_eval(p * q, point), lp_eval(p, point) * lp_eval(q, point))
            self.assertEqual(lp_eval(p + q, point), lp_eval(p, point) + lp_eval(q, point))

    def test_not_divisible(self):
        """Test that 1 + x is not divisible by 1 + y."""
        with self.assertRaises(NotDivisible):
            (1 + self.x) / (1 + self.y)

    def test_monomials_are_units(self):
        """Test that dividing by a monomial always succeeds."""
        x, y = self.x, self.y
        self.assertEqual((x + y) / x, 1 + y / x)
        self.assertEqual(((x + y) / x) * x, x + y)

    def test_division_by_zero(self):
        """Test that dividing by the zero polynomial raises."""
        with self.assertRaises(ZeroDivisionError):
            self.x / LaurentPoly.zero("xyz")

    def test_arity_mismatch(self):
        """Test that polynomials over different variables do not mix."""
        (a,) = laurent_variables("a")
        with self.assertRaises(ArityMismatch):
            self.x + a
        with self.assertRaises(ArityMismatch):
            LaurentPoly(("x", "y"), {(1, 2, 3): 1})

    def test_zero_substitution(self):
        """Test evaluating 1/x at x = 0."""
        with self.assertRaises(ZeroSubstitution):
            lp_eval(1 / self.x, (0, 1, 1))

    def test_positivity(self):
        """Test positivity of coefficients."""
        self.assertTrue((self.x + 2 * self.y).is_positive())
        self.assertFalse((self.x - self.y).is_positive())
        self.assertFalse(LaurentPoly.zero("xyz").is_positive())

    def test_integer_coercion_and_equality(self):
        """Test mixing with plain integers."""
        p = 2 + self.x - self.x
        self.assertEqual(p, 2)
        self.assertEqual(3 * self.y, self.y + self.y + self.y)
        self.assertEqual(hash(self.x * self.y), hash(self.y * self.x))

    def test_negative_power_of_monomial(self):
        """Test that monomials have Laurent inverses."""
        self.assertEqual((self.x * self.y) ** -2 * self.x**2 * self.y**2, 1)
        with self.assertRaises(NotDivisible):
            (1 + self.x) ** -1

    def test_str(self):
        """Test the printed form."""
        self.assertEqual(str(LaurentPoly.zero("xy")), "0")
        self.assertIn("x^2", str(self.x**2 - self.y))

    def test_immutable(self):
        """Test that attributes cannot be reassigned."""
        with self.assertRaises(AttributeError):
            self.x._shift = (1, 1, 1)


class TestRationals(unittest.TestCase):
    """Test cases for the rational helpers."""

    def test_normalize(self):
        """Test that integral fractions become ints."""
        self.assertIsInstance(normalize(Fraction(4, 2)), int)
        self.assertEqual(normalize(Fraction(1, 2)), Fraction(1, 2))

    def test_divide(self):
        """Test exact rational and Laurent division."""
        self.assertEqual(divide(6, 3), 2)
        self.assertIsInstance(divide(6, 3), int)
        self.assertEqual(divide(1, 3), Fraction(1, 3))
        (x,) = laurent_variables("x")
        self.assertEqual(divide(x * x, x), x)
        with self.assertRaises(ZeroDivisionError):
            divide(1, 0)

    def test_value_predicates(self):
        """Test positivity and integrality of mixed values."""
        (x,) = laurent_variables("x")
        self.assertTrue(is_positive_value(Fraction(1, 3)))
        self.assertFalse(is_positive_value(0))
        self.assertTrue(is_positive_value(x + 1))
        self.assertTrue(is_integral_value(Fraction(4, 2)))
        self.assertFalse(is_integral_value(Fraction(1, 2)))
        self.assertIsNone(is_integral_value(x))

    def test_parse_rational(self):
        """Test parsing of decimal rationals."""
        self.assertEqual(parse_rational(" -3/2 "), Fraction(-3, 2))
        self.assertEqual(parse_rational("4/2"), 2)
        with self.assertRaises(ValueError):
            parse_rational("x")


class TestMat2(unittest.TestCase):
    """Test cases for Mat2."""

    def test_multiplication(self):
        """Test the product and identity."""
        a = Mat2(0, 1, 1, 1)
        b = Mat2(1, 1, 1, 0)
        self.assertEqual(mat2_mul(a, b), Mat2(1, 0, 2, 1))
        self.assertEqual(mat2_product([]), Mat2.identity())
        self.assertEqual(mat2_product([a, b, a]), Mat2(1, 0, 2, 1) @ a)

    def test_determinant_and_inverse(self):
        """Test unimodular inverses."""
        m = Mat2(5, 2, 2, 1)
        self.assertEqual(m.det, 1)
        self.assertEqual(m @ m.inverse(), Mat2.identity())
        with self.assertRaises(ValueError):
            Mat2(2, 0, 0, 2).inverse()

    def test_transpose_and_rows(self):
        """Test transpose and row access."""
        m = Mat2.from_rows([[1, 2], [3, 4]])
        self.assertEqual(m.transpose().rows(), ((1, 3), (2, 4)))
        self.assertEqual(m.entry_sum, 10)


if __name__ == "__main__":
    unittest.main()
