"""Exact arithmetic substrate: Laurent polynomials, rationals and 2x2 integer matrices.

Laurent polynomials are stored as a sympy polynomial numerator over ``ZZ`` (graded
lexicographic order) together with a per-variable exponent shift. The numerator is kept
free of monomial factors, which makes exact Laurent division a plain polynomial ``exquo``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from .utils.errors import ArityMismatch, NotDivisible, ZeroSubstitution

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _ring(names: Tuple[str, ...]) -> PolyRing:
    return PolyRing(list(names), ZZ, grlex)


def _shifted(ring: PolyRing, num: PolyElement, delta: Sequence[int]) -> PolyElement:
    """Multiply ``num`` by the monomial with (non-negative) exponents ``delta``."""
    if not any(delta):
        return num
    return ring.from_dict(
        {tuple(e + d for e, d in zip(monom, delta)): coeff for monom, coeff in num.items()}
    )


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with integer coefficients.

    Instances are immutable. Arithmetic with plain ``int`` values coerces them to
    constants in the same ring; mixing rings raises ``ArityMismatch``.
    """

    __slots__ = ("_names", "_num", "_shift")

    def __init__(self, names: Iterable[str], terms: Optional[Mapping[Exponents, int]] = None):
        """Build a Laurent polynomial from an exponent-to-coefficient map.

        Args:
            names: Variable names, in order
            terms: Map from exponent vectors (negative entries allowed) to coefficients

        Raises:
            ArityMismatch: If an exponent vector has the wrong length
        """
        names = tuple(names)
        ring = _ring(names)
        terms = {tuple(e): int(c) for e, c in (terms or {}).items() if c}
        for exps in terms:
            if len(exps) != len(names):
                raise ArityMismatch(
                    f"Exponent vector {exps} does not match variables {', '.join(names)}"
                )
        if terms:
            shift = tuple(min(e[k] for e in terms) for k in range(len(names)))
        else:
            shift = (0,) * len(names)
        num = ring.from_dict(
            {tuple(a - s for a, s in zip(e, shift)): c for e, c in terms.items()}
        )
        self._set(names, num, shift)

    def _set(self, names: Tuple[str, ...], num: PolyElement, shift: Exponents) -> None:
        object.__setattr__(self, "_names", names)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_shift", shift)

    def __setattr__(self, key: str, value: Any) -> None:
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _from_numerator(
        cls, names: Tuple[str, ...], num: PolyElement, shift: Sequence[int]
    ) -> "LaurentPoly":
        if not num:
            shift = (0,) * len(names)
        else:
            mins = [min(m[k] for m in num.keys()) for k in range(len(names))]
            if any(mins):
                num = _ring(names).from_dict(
                    {tuple(a - b for a, b in zip(m, mins)): c for m, c in num.items()}
                )
            shift = tuple(s + m for s, m in zip(shift, mins))
        poly = cls.__new__(cls)
        poly._set(names, num, tuple(shift))
        return poly

    # -- constructors -----------------------------------------------------------------

    @classmethod
    def zero(cls, names: Iterable[str]) -> "LaurentPoly":
        return cls(names, {})

    @classmethod
    def constant(cls, value: int, names: Iterable[str]) -> "LaurentPoly":
        names = tuple(names)
        return cls(names, {(0,) * len(names): value})

    @classmethod
    def monomial(
        cls, names: Iterable[str], exponents: Sequence[int], coeff: int = 1
    ) -> "LaurentPoly":
        return cls(names, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, name: str, names: Iterable[str]) -> "LaurentPoly":
        """Return the generator ``name`` of the ring on ``names``."""
        names = tuple(names)
        if name not in names:
            raise ArityMismatch(f"Unknown variable {name}. Variables: {', '.join(names)}")
        exps = tuple(1 if v == name else 0 for v in names)
        return cls(names, {exps: 1})

    # -- accessors --------------------------------------------------------------------

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def arity(self) -> int:
        return len(self._names)

    def terms(self) -> List[Tuple[Exponents, int]]:
        """Terms in canonical (graded lexicographic, leading first) order."""
        return [
            (tuple(e + s for e, s in zip(monom, self._shift)), int(coeff))
            for monom, coeff in self._num.terms()
        ]

    def coefficients(self) -> List[int]:
        return [c for _, c in self.terms()]

    def is_zero(self) -> bool:
        return not self._num

    def is_positive(self) -> bool:
        """True iff the polynomial is nonzero and every coefficient is positive."""
        return bool(self._num) and all(int(c) > 0 for c in self._num.values())

    def is_monomial(self) -> bool:
        return len(self._num) == 1

    def denominator_exponents(self) -> Exponents:
        """Exponents of the smallest monomial clearing all negative powers."""
        return tuple(max(0, -s) for s in self._shift)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        """Evaluate exactly at a rational point.

        Raises:
            ArityMismatch: If the point has the wrong number of coordinates
            ZeroSubstitution: If a variable with a negative exponent is set to zero
        """
        if len(point) != self.arity:
            raise ArityMismatch(
                f"Point has {len(point)} coordinates, polynomial has {self.arity} variables"
            )
        values = [Fraction(v) for v in point]
        if self._num:
            for name, value, shift in zip(self._names, values, self._shift):
                if value == 0 and shift < 0:
                    raise ZeroSubstitution(f"Variable {name} has a negative exponent")
        total = Fraction(0)
        for exps, coeff in self.terms():
            term = Fraction(coeff)
            for value, e in zip(values, exps):
                if e:
                    term *= value**e
            total += term
        return total

    # -- arithmetic -------------------------------------------------------------------

    def _coerce(self, other: Any) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            if other._names != self._names:
                raise ArityMismatch(
                    f"Variables differ: ({', '.join(self._names)}) vs "
                    f"({', '.join(other._names)})"
                )
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._names)
        if isinstance(other, Fraction) and other.denominator == 1:
            return LaurentPoly.constant(other.numerator, self._names)
        return None

    def __add__(self, other: Any) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        ring = _ring(self._names)
        base = [min(a, b) for a, b in zip(self._shift, q._shift)]
        left = _shifted(ring, self._num, [a - b for a, b in zip(self._shift, base)])
        right = _shifted(ring, q._num, [a - b for a, b in zip(q._shift, base)])
        return LaurentPoly._from_numerator(self._names, left + right, base)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._from_numerator(self._names, -self._num, self._shift)

    def __sub__(self, other: Any) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: Any) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other: Any) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        shift = [a + b for a, b in zip(self._shift, q._shift)]
        return LaurentPoly._from_numerator(self._names, self._num * q._num, shift)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.div_exact(q)

    def __rtruediv__(self, other: Any) -> "LaurentPoly":
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return p.div_exact(self)

    def div_exact(self, q: "LaurentPoly") -> "LaurentPoly":
        """Exact Laurent quotient ``self / q``.

        Raises:
            ZeroDivisionError: If ``q`` is zero
            NotDivisible: If no Laurent polynomial ``r`` satisfies ``r * q == self``
        """
        q = self._coerce(q)
        if q is None:
            raise TypeError("Divisor must be a LaurentPoly or an integer")
        if q.is_zero():
            raise ZeroDivisionError("Division by the zero Laurent polynomial")
        try:
            num = self._num.exquo(q._num)
        except ExactQuotientFailed:
            raise NotDivisible(f"{self} is not divisible by {q}")
        shift = [a - b for a, b in zip(self._shift, q._shift)]
        return LaurentPoly._from_numerator(self._names, num, shift)

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if not self.is_monomial():
                raise NotDivisible(f"Only monomials have Laurent inverses, got {self}")
            return LaurentPoly.constant(1, self._names).div_exact(self) ** (-exponent)
        result = LaurentPoly.constant(1, self._names)
        for _ in range(exponent):
            result = result * self
        return result

    # -- comparison and display -------------------------------------------------------

    def __eq__(self, other: Any) -> bool:
        try:
            q = self._coerce(other)
        except ArityMismatch:
            return False
        if q is None:
            return NotImplemented
        return self._shift == q._shift and self._num == q._num

    def __hash__(self) -> int:
        return hash((self._names, self._shift, tuple(self.terms())))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps, coeff in self.terms():
            factors = []
            for name, e in zip(self._names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(coeff))
                continue
            monomial = "*".join(factors)
            if coeff == 1:
                parts.append(monomial)
            elif coeff == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def laurent_variables(names: Iterable[str]) -> Tuple[LaurentPoly, ...]:
    """Return the generators of the Laurent ring on ``names``."""
    names = tuple(names)
    return tuple(LaurentPoly.variable(name, names) for name in names)


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p.div_exact(q)


def lp_is_positive(p: LaurentPoly) -> bool:
    return p.is_positive()


def lp_eval(p: LaurentPoly, point: Sequence[Rational]) -> Fraction:
    return p.evaluate(point)


def normalize(value: Any) -> Any:
    """Collapse integral ``Fraction`` values to ``int``; leave everything else alone."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def divide(a: Any, b: Any) -> Any:
    """Exact division shared by every recurrence.

    Rationals stay exact (integral quotients come back as ``int``), Laurent polynomials
    divide exactly, and any other value type falls back to its own ``/``.

    Raises:
        ZeroDivisionError: If a rational divisor is zero
        NotDivisible: If a Laurent quotient does not exist
    """
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return a / b
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        if b == 0:
            raise ZeroDivisionError("Division by zero")
        return normalize(Fraction(a) / Fraction(b))
    return a / b


def is_positive_value(value: Any) -> bool:
    if isinstance(value, LaurentPoly):
        return value.is_positive()
    return value > 0


def is_integral_value(value: Any) -> Optional[bool]:
    """True/False for rationals, None when integrality does not apply."""
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return None


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def entry_sum(self) -> int:
        return self.a + self.b + self.c + self.d

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def inverse(self) -> "Mat2":
        """Integer inverse of a unimodular matrix.

        Raises:
            ValueError: If the determinant is not +1 or -1
        """
        det = self.det
        if det not in (1, -1):
            raise ValueError(f"Matrix {self.rows()} has determinant {det}, expected +1 or -1")
        return Mat2(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def __repr__(self) -> str:
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return a @ b


def mat2_product(factors: Iterable[Mat2]) -> Mat2:
    result = Mat2.identity()
    for factor in factors:
        result = result @ factor
    return result


def parse_rational(text: str) -> Rational:
    """Parse ``"5/3"`` or ``"2"`` into an exact value."""
    return normalize(Fraction(text.strip()))

