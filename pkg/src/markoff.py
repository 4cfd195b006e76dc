"""Markoff triples, lattice snakes and related exchange dynamics.

Vectors of the triangular lattice are written ``(p, q) = p e1 + q e2`` with
``e3 = -e1 - e2``; the shortest vectors are ``±e1, ±e2, ±(e1 + e2)``. Lattice edges in
direction e1, e2 and e1 + e2 carry the weights x, y and z.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exact import (
    LaurentPoly,
    Mat2,
    divide,
    is_integral_value,
    is_positive_value,
    laurent_variables,
)
from .matchings import MatchGraph, WeightedEdge, delete_black, matching_sum
from .utils.errors import LatticeError, NotDivisible

logger = logging.getLogger(__name__)

Point = Tuple[int, int]
Triangle = Tuple[Point, Point, Point]

VARIABLES = ("x", "y", "z")
SHORTEST = {(1, 0): "x", (0, 1): "y", (1, 1): "z"}

ROSENBERGER_COEFFICIENTS = ((1, 1, 1), (1, 1, 2), (1, 2, 3))


@dataclass(frozen=True)
class LatticeVector:
    """Vector ``p e1 + q e2`` of the triangular lattice."""

    p: int
    q: int

    @classmethod
    def parse(cls, text: str) -> "LatticeVector":
        p, q = (int(part) for part in text.split(","))
        return cls(p, q)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.p, -self.q)

    def is_primitive(self) -> bool:
        return math.gcd(self.p, self.q) == 1

    def is_shortest(self) -> bool:
        return self.lax() in SHORTEST

    def lax(self) -> Point:
        """Representative of ``±u`` whose first nonzero coordinate is positive."""
        if self.p < 0 or (self.p == 0 and self.q < 0):
            return (-self.p, -self.q)
        return (self.p, self.q)

    def __repr__(self) -> str:
        return f"({self.p},{self.q})"


E1 = LatticeVector(1, 0)
E2 = LatticeVector(0, 1)
E3 = LatticeVector(-1, -1)


def _require_primitive(u: LatticeVector) -> None:
    if not u.is_primitive():
        raise LatticeError(f"Vector {u} is not primitive")


@dataclass
class MarkoffSnake:
    """Chain of lattice triangles crossed by the open segment from the origin to ``end``."""

    end: LatticeVector
    triangles: List[Triangle]

    @property
    def vertices(self) -> List[Point]:
        return sorted({v for t in self.triangles for v in t})

    def interior_edges(self) -> List[Tuple[Point, Point]]:
        """Edges shared by consecutive triangles, i.e. the ones the segment crosses."""
        shared = []
        for s, t in zip(self.triangles, self.triangles[1:]):
            a, b = sorted(set(s) & set(t))
            shared.append((a, b))
        return shared


def markoff_snake(u: LatticeVector) -> MarkoffSnake:
    """Triangles met by the segment from the origin to ``u``, in order.

    Works in the skew coordinates ``s = p - q, t = q`` where the lattice lines are
    ``s = k``, ``t = k`` and ``s + t = k``.

    Raises:
        LatticeError: If ``u`` is not primitive or is a shortest vector
    """
    _require_primitive(u)
    if u.is_shortest():
        raise LatticeError(f"Shortest vector {u} lies on a lattice edge and has no snake")
    S, T = u.p - u.q, u.q
    crossings = {Fraction(0), Fraction(1)}
    for total in (S, T, S + T):
        for k in range(min(0, total) + 1, max(0, total)):
            crossings.add(Fraction(k, total))
    cuts = sorted(crossings)
    triangles: List[Triangle] = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        s, t = mid * S, mid * T
        i, j = math.floor(s), math.floor(t)
        if (s - i) + (t - j) < 1:
            corners = ((i, j), (i + 1, j), (i, j + 1))
        else:
            corners = ((i + 1, j), (i, j + 1), (i + 1, j + 1))
        triangles.append(tuple(sorted((a + b, b) for a, b in corners)))  # type: ignore[misc]
    logger.debug(f"Markoff snake of {u}: {len(triangles)} triangles")
    return MarkoffSnake(u, triangles)


def _edge_weight(a: Point, b: Point, weights: Dict[str, Any]) -> Any:
    direction = LatticeVector(b[0] - a[0], b[1] - a[1]).lax()
    if direction not in SHORTEST:
        raise LatticeError(f"{a}-{b} is not a lattice edge")
    return weights[SHORTEST[direction]]


def snake_graph(snake: MarkoffSnake, weights: Optional[Dict[str, Any]] = None) -> MatchGraph:
    """Strip graph with the segment's endpoints removed.

    The edge from vertex v to triangle t carries the weight of the side of t opposite v.
    """
    weights = weights or {name: 1 for name in VARIABLES}
    edges = {}
    for face in snake.triangles:
        for v in face:
            a, b = (w for w in face if w != v)
            edges[(v, face)] = WeightedEdge(_edge_weight(a, b, weights))
    graph = MatchGraph(tuple(snake.vertices), tuple(snake.triangles), edges)
    return delete_black(graph, (0, 0), (snake.end.p, snake.end.q))


def M_num(u: LatticeVector) -> int:
    """Matching count of the Markoff snake of ``u``; 1 for shortest vectors."""
    _require_primitive(u)
    if u.is_shortest():
        return 1
    return matching_sum(snake_graph(markoff_snake(u)))


def M_poly(u: LatticeVector) -> LaurentPoly:
    """Weighted matching sum of the snake divided by the product of its crossed-edge weights."""
    _require_primitive(u)
    x, y, z = laurent_variables(VARIABLES)
    weights = {"x": x, "y": y, "z": z}
    if u.is_shortest():
        return weights[SHORTEST[u.lax()]]
    snake = markoff_snake(u)
    denominator: Any = 1
    for a, b in snake.interior_edges():
        denominator = denominator * _edge_weight(a, b, weights)
    return divide(matching_sum(snake_graph(snake, weights)), denominator)


def cone_law_holds(u: LatticeVector) -> bool:
    """Denominator-exponent law for u strictly between e1 and -e3.

    With denominator exponents (a, b, c) of ``M_poly(u)``: a < b > c and
    ``(c + 1) e1 - (a + 1) e3 = u``.
    """
    if not u.p > u.q > 0:
        raise LatticeError(f"{u} is not strictly inside the cone of e1 and -e3")
    a, b, c = M_poly(u).denominator_exponents()
    return a < b > c and (c + a + 2, a + 1) == (u.p, u.q)


@dataclass(frozen=True)
class Superbase:
    """Three lax vectors with ``u + v + w = 0`` for suitable signs, any two a basis."""

    u: LatticeVector
    v: LatticeVector
    w: LatticeVector

    def __post_init__(self):
        """Choose signs summing to zero and check the basis condition."""
        u, v, w = self.u, self.v, self.w
        for su in (1, -1):
            for sv in (1, -1):
                for sw in (1, -1):
                    if su * u.p + sv * v.p + sw * w.p == 0 and su * u.q + sv * v.q + sw * w.q == 0:
                        if abs(u.p * v.q - u.q * v.p) != 1:
                            raise LatticeError(f"{u} and {v} do not form a lattice basis")
                        return
        raise LatticeError(f"No signs make {u}, {v}, {w} sum to zero")

    @classmethod
    def seed(cls) -> "Superbase":
        return cls(E1, E2, E3)

    def vectors(self) -> Tuple[LatticeVector, LatticeVector, LatticeVector]:
        return (self.u, self.v, self.w)

    def key(self) -> Tuple[Point, ...]:
        return tuple(sorted(x.lax() for x in self.vectors()))

    def exchange(self, slot: int) -> "Superbase":
        """Replace one vector by the difference of the other two (taken with zero-sum signs)."""
        vectors = list(self.vectors())
        others = [vectors[k] for k in range(3) if k != slot]
        a, b = others
        if (a + b).lax() == vectors[slot].lax():
            vectors[slot] = a - b
        else:
            vectors[slot] = a + b
        return Superbase(*vectors)

    def neighbours(self) -> List["Superbase"]:
        return [self.exchange(k) for k in range(3)]

    def markoff_values(self) -> Tuple[int, int, int]:
        return tuple(M_num(x) for x in self.vectors())  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"Superbase({self.u}, {self.v}, {self.w})"


@dataclass
class ExchangeNode:
    """Node of an exchange tree; ``slot`` is the position exchanged to reach it."""

    values: Tuple
    slot: Optional[int] = None
    depth: int = 0
    children: List["ExchangeNode"] = field(default_factory=list)
    flags: Dict[str, Any] = field(default_factory=dict)

    def walk(self) -> Iterator["ExchangeNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def find_path(self, *targets: Tuple) -> bool:
        """True iff the tree contains the chain of value tuples ``targets`` from this node."""
        if not targets or self.values != tuple(targets[0]):
            return False
        if len(targets) == 1:
            return True
        return any(child.find_path(*targets[1:]) for child in self.children)

    def __repr__(self) -> str:
        return f"ExchangeNode({self.values}, depth={self.depth}, children={len(self.children)})"


def expand_exchanges(
    seed: Sequence[Any],
    depth: int,
    exchange: Callable[[Tuple, int], Any],
    inspect: Optional[Callable[[Tuple], Dict[str, Any]]] = None,
) -> ExchangeNode:
    """Breadth-first exchange tree.

    The root has one child per slot; every other node skips the slot that produced it.
    An exchange raising ``NotDivisible`` yields a leaf flagged ``laurent=False``.
    """
    if depth < 0:
        raise ValueError(f"Depth must be non-negative, got {depth}")
    root = ExchangeNode(tuple(seed))
    if inspect:
        root.flags.update(inspect(root.values))
    frontier = [root]
    for level in range(1, depth + 1):
        following = []
        for node in frontier:
            if node.flags.get("laurent") is False:
                continue
            for slot in range(len(node.values)):
                if slot == node.slot:
                    continue
                values = list(node.values)
                try:
                    values[slot] = exchange(node.values, slot)
                except NotDivisible:
                    child = ExchangeNode(node.values, slot, level, flags={"laurent": False})
                    node.children.append(child)
                    continue
                child = ExchangeNode(tuple(values), slot, level)
                if inspect:
                    child.flags.update(inspect(child.values))
                node.children.append(child)
                following.append(child)
        frontier = following
    return root


def _markoff_exchange(values: Tuple, slot: int) -> Any:
    others = [values[k] for k in range(3) if k != slot]
    return divide(others[0] * others[0] + others[1] * others[1], values[slot])


def is_markoff_triple(triple: Sequence[int]) -> bool:
    x, y, z = triple
    return x * x + y * y + z * z == 3 * x * y * z


def topograph_expand(seed: Optional[Sequence[Any]] = None, depth: int = 3) -> ExchangeNode:
    """Markoff exchange tree ``x' = (y^2 + z^2) / x`` grown from ``seed``.

    A numeric seed must solve the Markoff equation. ``None`` means the formal seed
    ``(x, y, z)``; formal nodes are checked against ``X^2 + Y^2 + Z^2 = K XYZ`` with
    ``K = (x^2 + y^2 + z^2) / xyz``.

    Raises:
        ValueError: If a numeric seed is not a Markoff triple
    """
    if seed is None:
        seed = laurent_variables(VARIABLES)
    seed = tuple(seed)
    if len(seed) != 3:
        raise ValueError(f"A Markoff seed has three entries, got {len(seed)}")
    formal = any(isinstance(v, LaurentPoly) for v in seed)
    if not formal and not is_markoff_triple(seed):
        raise ValueError(f"{seed} does not satisfy x^2 + y^2 + z^2 = 3xyz")
    x, y, z = seed
    numerator = x * x + y * y + z * z
    product = x * y * z

    def inspect(values: Tuple) -> Dict[str, Any]:
        X, Y, Z = values
        return {
            "equation": (X * X + Y * Y + Z * Z) * product == numerator * (X * Y * Z),
            "positive": all(is_positive_value(v) for v in values),
        }

    tree = expand_exchanges(seed, depth, _markoff_exchange, inspect)
    logger.info(f"Expanded Markoff tree from {seed} to depth {depth}")
    return tree


def unique_triples(tree: ExchangeNode) -> List[Tuple[int, ...]]:
    """Numeric triples of a tree, deduplicated as unordered triples."""
    return sorted({tuple(sorted(node.values)) for node in tree.walk()})


def markoff_numbers(limit: int) -> List[int]:
    """Markoff numbers up to ``limit`` via the integer shortcut ``z' = 3xy - z``."""
    found = {1}
    stack = [(1, 1, 1)]
    seen = {(1, 1, 1)}
    while stack:
        x, y, z = stack.pop()
        for a, b, c in ((y, z, x), (x, z, y), (x, y, z)):
            new = 3 * a * b - c
            triple = tuple(sorted((a, b, new)))
            if new <= limit and triple not in seen:
                seen.add(triple)
                found.add(new)
                stack.append(triple)
    return sorted(found)


def superbase_tree(depth: int) -> List[Superbase]:
    """Superbases within ``depth`` exchanges of the seed {e1, e2, e3}."""
    start = Superbase.seed()
    seen = {start.key(): start}
    frontier = [start]
    for _ in range(depth):
        following = []
        for base in frontier:
            for neighbour in base.neighbours():
                if neighbour.key() not in seen:
                    seen[neighbour.key()] = neighbour
                    following.append(neighbour)
        frontier = following
    return list(seen.values())


def scott_sequence(k: int) -> List[int]:
    """``f(n) = (f(n-1)^2 + f(n-2)^2) / f(n-3)`` seeded 1, 1, 2."""
    if k < 3:
        raise ValueError(f"scott_sequence needs k >= 3, got {k}")
    terms = [1, 1, 2]
    while len(terms) < k:
        terms.append(divide(terms[-1] ** 2 + terms[-2] ** 2, terms[-3]))
    return terms


def scott_matrices(k: int) -> List[Mat2]:
    """Matrix form ``M(n) = M(n-1) M(n-3)^-1 M(n-1)``; upper-left entries follow the sequence."""
    if k < 3:
        raise ValueError(f"scott_matrices needs k >= 3, got {k}")
    matrices = [Mat2(1, 1, 1, 2), Mat2.identity(), Mat2(2, 1, 1, 1)]
    while len(matrices) < k:
        matrices.append(matrices[-1] @ matrices[-3].inverse() @ matrices[-1])
    return matrices


# -- right-isosceles tiling ----------------------------------------------------------
# Integer points of the plane; lines x = k, y = k, x - y = 2m and x + y = 2m. Points with
# x + y even meet eight edges, the others four.


def herriot_degree(point: Point) -> int:
    return 8 if (point[0] + point[1]) % 2 == 0 else 4


def _on_tiling_line(a: Point, b: Point) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 or dy == 0:
        return True
    if dx == dy:
        return (a[0] - a[1]) % 2 == 0
    if dx == -dy:
        return (a[0] + a[1]) % 2 == 0
    return False


def herriot_strip(start: Point, end: Point) -> List[Triangle]:
    """Triangles of the right-isosceles tiling crossed by the open segment.

    Raises:
        LatticeError: If the segment is degenerate or passes through a lattice point
    """
    dx, dy = end[0] - start[0], end[1] - start[1]
    if (dx, dy) == (0, 0):
        raise LatticeError("Degenerate segment")
    if math.gcd(dx, dy) != 1:
        raise LatticeError(f"Segment {start}-{end} passes through a lattice point")
    if _on_tiling_line(start, end):
        return []
    x0, y0 = start
    crossings = {Fraction(0), Fraction(1)}
    lines = [(x0, dx, 1), (y0, dy, 1), (x0 - y0, dx - dy, 2), (x0 + y0, dx + dy, 2)]
    for origin, delta, step in lines:
        if delta == 0:
            continue
        lo, hi = sorted((origin, origin + delta))
        for k in range(lo + 1, hi):
            if k % step == 0:
                crossings.add(Fraction(k - origin, delta))
    cuts = sorted(crossings)
    triangles: List[Triangle] = []
    for lo_cut, hi_cut in zip(cuts, cuts[1:]):
        mid = (lo_cut + hi_cut) / 2
        x, y = x0 + mid * dx, y0 + mid * dy
        i, j = math.floor(x), math.floor(y)
        fx, fy = x - i, y - j
        if (i + j) % 2 == 0:
            if fx > fy:
                corners = ((i, j), (i + 1, j), (i + 1, j + 1))
            else:
                corners = ((i, j), (i, j + 1), (i + 1, j + 1))
        elif fx + fy < 1:
            corners = ((i, j), (i + 1, j), (i, j + 1))
        else:
            corners = ((i + 1, j), (i, j + 1), (i + 1, j + 1))
        triangles.append(tuple(sorted(corners)))  # type: ignore[arg-type]
    return triangles


def herriot_distance(end: Point, start: Point = (0, 0)) -> int:
    """Matching count of the crossed strip with both endpoints removed; 1 along an edge."""
    triangles = herriot_strip(start, end)
    if not triangles:
        return 1
    edges = {(v, face): WeightedEdge() for face in triangles for v in face}
    vertices = tuple(sorted({v for face in triangles for v in face}))
    graph = MatchGraph(vertices, tuple(triangles), edges)
    return matching_sum(delete_black(graph, tuple(start), tuple(end)))


@dataclass
class HerriotTriangle:
    """Distances of a lattice triangle with the degree-pattern relation evaluated."""

    points: Tuple[Point, Point, Point]
    degrees: Tuple[int, int, int]
    s: int
    t1: int
    t2: int
    relation: Optional[bool]

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.s, self.t1, self.t2)


def herriot_triangle_relation(a: Point, b: Point, c: Point) -> HerriotTriangle:
    """Distances of triangle abc and the relation its degree pattern predicts.

    ``s`` joins the two vertices of equal degree. Degrees 4, 4, 8 predict
    ``s^2 + 2 t1^2 + 2 t2^2 = 4 s t1 t2``; degrees 8, 8, 4 predict
    ``2 s^2 + t1^2 + t2^2 = 4 s t1 t2``. Other patterns give ``relation=None``.
    """
    points = (a, b, c)
    degrees = tuple(herriot_degree(p) for p in points)
    pair = next(
        ((i, j) for i in range(3) for j in range(i + 1, 3) if degrees[i] == degrees[j]), None
    )
    relation: Optional[bool] = None
    if pair is None or len(set(degrees)) == 1:
        distances = [herriot_distance(points[j], points[i]) for i, j in ((0, 1), (0, 2), (1, 2))]
        return HerriotTriangle(points, degrees, *distances, relation=None)  # type: ignore[arg-type]
    i, j = pair
    k = 3 - i - j
    s = herriot_distance(points[j], points[i])
    t1 = herriot_distance(points[k], points[i])
    t2 = herriot_distance(points[k], points[j])
    if degrees[i] == 4:
        relation = s * s + 2 * t1 * t1 + 2 * t2 * t2 == 4 * s * t1 * t2
    else:
        relation = 2 * s * s + t1 * t1 + t2 * t2 == 4 * s * t1 * t2
    return HerriotTriangle(points, degrees, s, t1, t2, relation)  # type: ignore[arg-type]


def herriot_triples(points: Sequence[Point]) -> List[HerriotTriangle]:
    """Distance triples for every triangle on the given points, fundamental or not."""
    result = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            for k in range(j + 1, len(points)):
                result.append(herriot_triangle_relation(points[i], points[j], points[k]))
    return result


def rosenberger_orbit(coeffs: Sequence[int], depth: int) -> ExchangeNode:
    """Orbit of (1, 1, 1) under ``x' = (b y^2 + c z^2) / (a x)`` and its two companions.

    Nodes carry ``integral`` and ``equation`` flags. The root carries ``listed=False`` for
    coefficients outside the three integral families; non-integers never stop expansion.
    """
    a, b, c = coeffs
    weights = (a, b, c)
    listed = tuple(coeffs) in ROSENBERGER_COEFFICIENTS
    if not listed:
        logger.warning(f"Coefficients {tuple(coeffs)} are not one of {ROSENBERGER_COEFFICIENTS}")
    total = a + b + c

    def exchange(values: Tuple, slot: int) -> Any:
        numerator = sum(weights[k] * values[k] ** 2 for k in range(3) if k != slot)
        return divide(numerator, weights[slot] * values[slot])

    def inspect(values: Tuple) -> Dict[str, Any]:
        x, y, z = values
        return {
            "integral": all(is_integral_value(v) for v in values),
            "equation": a * x * x + b * y * y + c * z * z == total * x * y * z,
        }

    tree = expand_exchanges((1, 1, 1), depth, exchange, inspect)
    tree.flags["listed"] = listed
    return tree


def _hurwitz_exchange(values: Tuple, slot: int) -> Any:
    numerator: Any = 0
    for k in range(4):
        if k != slot:
            numerator = numerator + values[k] * values[k]
    return divide(numerator, values[slot])


def hurwitz_expand(
    seed: Optional[Sequence[Any]] = None, depth: int = 2, formal: bool = False
) -> ExchangeNode:
    """Orbit under ``w' = (x^2 + y^2 + z^2) / w`` and the other three exchanges.

    Formal mode starts from variables ``(w, x, y, z)``; positivity of each node is only
    recorded in ``flags["positive"]``.

    Raises:
        ValueError: If a numeric seed violates ``w^2 + x^2 + y^2 + z^2 = 4wxyz``
    """
    if formal:
        seed = laurent_variables(("w", "x", "y", "z"))
    elif seed is None:
        seed = (1, 1, 1, 1)
    seed = tuple(seed)
    if len(seed) != 4:
        raise ValueError(f"A Hurwitz seed has four entries, got {len(seed)}")
    is_formal = any(isinstance(v, LaurentPoly) for v in seed)
    if not is_formal:
        w, x, y, z = seed
        if w * w + x * x + y * y + z * z != 4 * w * x * y * z:
            raise ValueError(f"{seed} does not satisfy w^2 + x^2 + y^2 + z^2 = 4wxyz")

    def inspect(values: Tuple) -> Dict[str, Any]:
        flags: Dict[str, Any] = {"positive": all(is_positive_value(v) for v in values)}
        if not is_formal:
            w, x, y, z = values
            flags["equation"] = w * w + x * x + y * y + z * z == 4 * w * x * y * z
        else:
            flags["laurent"] = True
        return flags

    tree = expand_exchanges(seed, depth, _hurwitz_exchange, inspect)
    observed = all(
        node.flags.get("positive", False)
        for node in tree.walk()
        if node.flags.get("laurent", True)
    )
    tree.flags["positivity_observed"] = observed
    logger.info(f"Hurwitz orbit to depth {depth}; positivity observed: {observed}")
    return tree
