"""Tropical friezes: laminations, crossing distances, max-plus propagation and tree metrics.

``MaxPlus`` wraps a rational so that ``+`` is max, ``*`` is addition and ``/`` is
subtraction; the sideways and Ptolemy propagation in :mod:`src.frieze` then run unchanged
in the max-plus semiring.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .exact import normalize
from .frieze import FriezeTable, frieze_from_zigzag, ptolemy_complete
from .polygon import Edge, Triangulation, Zigzag
from .utils.errors import GraphError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class MaxPlus:
    """Element of the max-plus semiring."""

    value: Number

    def __add__(self, other: "MaxPlus") -> "MaxPlus":
        return MaxPlus(max(self.value, other.value))

    def __mul__(self, other: "MaxPlus") -> "MaxPlus":
        return MaxPlus(normalize(Fraction(self.value) + Fraction(other.value)))

    def __truediv__(self, other: "MaxPlus") -> "MaxPlus":
        return MaxPlus(normalize(Fraction(self.value) - Fraction(other.value)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MaxPlus):
            return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(("maxplus", self.value))

    def __repr__(self) -> str:
        return f"MaxPlus({self.value})"


ONE = MaxPlus(0)


@dataclass(frozen=True)
class Arc:
    """Arc between boundary gaps; gap g is the side from vertex g to vertex g + 1."""

    gaps: Tuple[int, int]
    weight: Number = 1

    def __post_init__(self):
        """Sort the gaps and check them."""
        a, b = sorted(self.gaps)
        if a == b:
            raise ValueError(f"Arc with both ends on gap {a} separates nothing")
        if self.weight <= 0:
            raise ValueError(f"Arc weights must be positive, got {self.weight}")
        object.__setattr__(self, "gaps", (a, b))

    def side(self) -> frozenset:
        """Vertices ``g1 + 1 .. g2`` cut off by the arc."""
        a, b = self.gaps
        return frozenset(range(a + 1, b + 1))

    def separates(self, i: int, j: int) -> bool:
        side = self.side()
        return (i in side) != (j in side)

    def crosses(self, other: "Arc") -> bool:
        a, b = self.gaps
        c, d = other.gaps
        return a < c < b < d or c < a < d < b


@dataclass
class Lamination:
    """Weighted arcs in an n-gon; integral when every weight is an integer."""

    n: int
    arcs: Tuple[Arc, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """Check that every gap lies on the polygon."""
        self.arcs = tuple(self.arcs)
        for arc in self.arcs:
            if not all(1 <= g <= self.n for g in arc.gaps):
                raise ValueError(f"Arc {arc.gaps} has a gap outside 1..{self.n}")

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[Sequence], weights: Optional[Sequence] = None
    ) -> "Lamination":
        pairs = list(pairs)
        weights = list(weights) if weights is not None else [1] * len(pairs)
        arcs = tuple(Arc((p[0], p[1]), w) for p, w in zip(pairs, weights))
        return cls(n, arcs)

    def is_integral(self) -> bool:
        return all(Fraction(arc.weight).denominator == 1 for arc in self.arcs)

    def is_noncrossing(self) -> bool:
        return not any(a.crosses(b) for a, b in combinations(self.arcs, 2))

    def scaled(self, factor: Number) -> "Lamination":
        arcs = tuple(Arc(a.gaps, normalize(Fraction(a.weight) * factor)) for a in self.arcs)
        return Lamination(self.n, arcs)

    def __repr__(self) -> str:
        return f"Lamination(n={self.n}, arcs={[a.gaps for a in self.arcs]})"


# Hexagon lamination whose distances give the printed tropical frieze; the arc with both
# ends on one side separates nothing and is left out.
HEXAGON_LAMINATION = Lamination.from_pairs(6, [(6, 1), (1, 2), (1, 5), (3, 5)])


class TropicalTable(FriezeTable):
    """Pairwise distances ``d(i, j)`` with ``d(i, i) = 0``."""

    def entry(self, i: int, j: int) -> Any:
        if (i - j) % self.n == 0:
            return 0
        return super().entry(i, j)

    def __repr__(self) -> str:
        return f"TropicalTable(n={self.n})"


def lamination_distance(L: Lamination, i: int, j: int) -> Number:
    """Total weight of arcs separating vertex ``i`` from vertex ``j``."""
    return normalize(sum((Fraction(a.weight) for a in L.arcs if a.separates(i, j)), Fraction(0)))


def tropical_table(L: Lamination) -> TropicalTable:
    entries = {}
    for i in range(1, L.n + 1):
        for j in range(1, L.n + 1):
            if i != j:
                entries[(i, j)] = lamination_distance(L, i, j)
    return TropicalTable(L.n, entries, {"source": "lamination"})


def _from_maxplus(F: FriezeTable, source: str) -> TropicalTable:
    return TropicalTable(F.n, {k: v.value for k, v in F.entries.items()}, {"source": source})


def tropical_complete(T: Triangulation, values: Mapping[Edge, Number]) -> TropicalTable:
    """Fill in a tropical table from values on the sides and diagonals of ``T``.

    Each flip applies ``d(i,k) = max(d(i,j) + d(k,l), d(j,k) + d(i,l)) - d(j,l)``.
    """
    lifted = {edge: MaxPlus(v) for edge, v in values.items()}
    return _from_maxplus(ptolemy_complete(T, lifted, one=ONE), "ptolemy")


def tropical_sideways(z: Zigzag, sides: Sequence[Number]) -> TropicalTable:
    """Max-plus sideways propagation from values on a zig-zag and on the sides."""
    lifted = z.with_values([MaxPlus(v) for v in z.values])
    F = frieze_from_zigzag(lifted, [MaxPlus(v) for v in sides])
    return _from_maxplus(F, "zigzag")


def restrict(table: FriezeTable, T: Triangulation) -> Dict[Edge, Any]:
    """Values of ``table`` on the sides and diagonals of ``T``."""
    return {edge: table.entry(*edge) for edge in T.edges()}


def lamination_dual_tree(L: Lamination) -> nx.Graph:
    """Weighted tree whose leaf distances are the lamination distances.

    Each arc contributes the cluster ``g1 + 1 .. g2`` it cuts off, which never holds vertex
    1; clusters of a non-crossing lamination are nested or disjoint. A cluster hangs below the
    smallest cluster containing it, or below the root, by an edge carrying the total weight
    of its arcs. Leaf ``("leaf", v)`` hangs by a zero edge below the smallest cluster
    containing v.

    Raises:
        GraphError: If arcs cross
    """
    if not L.is_noncrossing():
        raise GraphError(f"{L} has crossing arcs")
    weights: Dict[frozenset, Fraction] = {}
    for arc in L.arcs:
        cluster = arc.side()
        weights[cluster] = weights.get(cluster, Fraction(0)) + Fraction(arc.weight)
    clusters = sorted(weights, key=lambda c: (len(c), sorted(c)))
    tree = nx.Graph()
    tree.add_node("root")
    for cluster in clusters:
        bigger = [c for c in clusters if cluster < c]
        above = ("cluster", tuple(sorted(bigger[0]))) if bigger else "root"
        node = ("cluster", tuple(sorted(cluster)))
        tree.add_edge(node, above, weight=normalize(weights[cluster]))
    leaves = []
    for v in range(1, L.n + 1):
        containing = [c for c in clusters if v in c]
        above = ("cluster", tuple(sorted(containing[0]))) if containing else "root"
        tree.add_edge(("leaf", v), above, weight=0)
        leaves.append(("leaf", v))
    tree.graph["leaves"] = leaves
    logger.debug(f"Dual tree of {L}: {tree.number_of_nodes()} nodes")
    return tree


def tree_leaf_distances(tree: nx.Graph, leaves: Optional[Sequence] = None) -> TropicalTable:
    """Leaf-to-leaf distances, leaves numbered 1..n in the given order.

    Raises:
        GraphError: If the graph is not a tree, a leaf is missing or a weight is negative
    """
    leaves = list(leaves if leaves is not None else tree.graph.get("leaves", []))
    if len(leaves) < 2:
        raise GraphError("A tree metric needs at least two leaves")
    if not nx.is_tree(tree):
        raise GraphError("Graph is not a tree")
    missing = [leaf for leaf in leaves if leaf not in tree]
    if missing:
        raise GraphError(f"Leaves {missing} are not in the tree")
    if any(data.get("weight", 1) < 0 for _, _, data in tree.edges(data=True)):
        raise GraphError("Tree weights must be non-negative")
    n = len(leaves)
    entries = {}
    for i, leaf in enumerate(leaves, start=1):
        lengths = nx.single_source_dijkstra_path_length(tree, leaf, weight="weight")
        for j, other in enumerate(leaves, start=1):
            if i != j:
                entries[(i, j)] = normalize(Fraction(lengths[other]))
    return TropicalTable(n, entries, {"source": "tree"})


def random_lamination(
    n: int, k: int, rng: Optional[random.Random] = None, max_weight: int = 3
) -> Lamination:
    """Up to ``k`` pairwise non-crossing arcs with integer weights, drawn from ``rng``."""
    rng = rng or random.Random()
    arcs: List[Arc] = []
    attempts = 0
    while len(arcs) < k and attempts < 50 * k:
        attempts += 1
        a, b = rng.sample(range(1, n + 1), 2)
        candidate = Arc((a, b), rng.randint(1, max_weight))
        if not any(candidate.crosses(other) for other in arcs):
            arcs.append(candidate)
    return Lamination(n, tuple(arcs))


@dataclass
class TropicalReport:
    n: int
    symmetric: bool
    relation_ok: bool
    four_point_ok: bool
    nonnegative: bool
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.symmetric and self.relation_ok and self.four_point_ok and self.nonnegative


def verify_tropical(table: FriezeTable) -> TropicalReport:
    """Symmetry, the tropical frieze relation and the four-point relation."""
    n = table.n
    d = table.entry
    failures = []
    for i, j in combinations(range(1, n + 1), 2):
        if d(i, j) != d(j, i):
            failures.append(f"symmetry at ({i}, {j})")
    symmetric = not failures
    relation = []
    for i in range(1, n + 1):
        for gap in range(2, n - 1):
            j = i + gap
            lhs = d(i, j) + d(i + 1, j + 1)
            rhs = max(d(i + 1, j) + d(i, j + 1), d(i, i + 1) + d(j, j + 1))
            if lhs != rhs:
                relation.append(f"tropical relation at ({i}, {(j - 1) % n + 1})")
    four_point = []
    for i, j, k, l in combinations(range(1, n + 1), 4):
        if max(d(i, j) + d(k, l), d(j, k) + d(i, l)) != d(i, k) + d(j, l):
            four_point.append(f"four-point at ({i}, {j}, {k}, {l})")
    nonnegative = all(v >= 0 for v in table.entries.values())
    failures += relation + four_point
    return TropicalReport(n, symmetric, not relation, not four_point, nonnegative, failures)
