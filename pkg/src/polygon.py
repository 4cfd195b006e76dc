"""Combinatorial triangulations of a labeled convex n-gon.

Vertices are labeled 1..n cyclically. Diagonals are sorted pairs and a triangulation is
identified with its diagonal set (no dihedral quotient).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .utils.config import Config
from .utils.errors import InvalidTriangulation

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Triangle = Tuple[int, int, int]


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def chord(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


def chords_cross(d: Edge, e: Edge) -> bool:
    """True iff two chords of a convex polygon cross in their interiors."""
    a, b = chord(*d)
    c, f = chord(*e)
    if len({a, b, c, f}) < 4:
        return False
    return (a < c < b) != (a < f < b)


@dataclass(frozen=True)
class Triangulation:
    """A maximal non-crossing set of diagonals of the labeled n-gon."""

    n: int
    diagonals: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        """Normalize diagonals and validate maximality and non-crossing."""
        if self.n < 3:
            raise InvalidTriangulation(f"A polygon needs at least 3 vertices, got {self.n}")
        diagonals = frozenset(chord(*d) for d in self.diagonals)
        object.__setattr__(self, "diagonals", diagonals)
        for i, j in diagonals:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise InvalidTriangulation(f"Diagonal ({i},{j}) is not a chord of the {self.n}-gon")
            if self.is_side(i, j):
                raise InvalidTriangulation(f"({i},{j}) is a side, not a diagonal")
        if len(diagonals) != self.n - 3:
            raise InvalidTriangulation(
                f"A triangulation of the {self.n}-gon has {self.n - 3} diagonals, "
                f"got {len(diagonals)}"
            )
        for d, e in combinations(sorted(diagonals), 2):
            if chords_cross(d, e):
                raise InvalidTriangulation(f"Diagonals {d} and {e} cross")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Triangulation":
        return cls(n, frozenset(chord(int(p[0]), int(p[1])) for p in pairs))

    @classmethod
    def fan(cls, n: int, apex: int = 1) -> "Triangulation":
        """All diagonals from ``apex``."""
        others = [v for v in range(1, n + 1) if v != apex]
        return cls(n, frozenset(chord(apex, v) for v in others if not _is_side(n, apex, v)))

    def is_side(self, i: int, j: int) -> bool:
        return _is_side(self.n, i, j)

    def sides(self) -> List[Edge]:
        return [chord(i, i % self.n + 1) for i in range(1, self.n + 1)]

    def edges(self) -> List[Edge]:
        return sorted(set(self.sides()) | self.diagonals)

    def sorted_diagonals(self) -> List[Edge]:
        return sorted(self.diagonals)

    def triangles(self) -> List[Triangle]:
        """The n-2 faces, each a sorted vertex triple, in lexicographic order."""
        edges = set(self.edges())
        neighbours: Dict[int, set] = {v: set() for v in range(1, self.n + 1)}
        for i, j in edges:
            neighbours[i].add(j)
            neighbours[j].add(i)
        faces = []
        for i, j in sorted(edges):
            for k in sorted(neighbours[i] & neighbours[j]):
                if k > j:
                    faces.append((i, j, k))
        return faces

    def dual_tree(self) -> nx.Graph:
        """Triangles as nodes, shared diagonals as edges (attribute ``diagonal``)."""
        tree = nx.Graph()
        faces = self.triangles()
        tree.add_nodes_from(faces)
        for s, t in combinations(faces, 2):
            shared = set(s) & set(t)
            if len(shared) == 2:
                tree.add_edge(s, t, diagonal=chord(*shared))
        return tree

    def key(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.diagonals))

    def __repr__(self) -> str:
        diags = ",".join(f"{i}{j}" if self.n < 10 else f"{i}-{j}" for i, j in self.key())
        return f"Triangulation(n={self.n}, diagonals={{{diags}}})"


def _is_side(n: int, i: int, j: int) -> bool:
    return (j - i) % n in (1, n - 1)


def enumerate_triangulations(n: int) -> List[Triangulation]:
    """All triangulations of the n-gon, ordered by their sorted diagonal lists.

    Raises:
        ValueError: If n < 3
    """
    if n < 3:
        raise ValueError(f"Polygon size must be at least 3, got {n}")

    @lru_cache(maxsize=None)
    def between(i: int, j: int) -> Tuple[FrozenSet[Edge], ...]:
        # Triangulations of the sub-polygon i, i+1, ..., j cut off by the edge (i, j).
        if j - i < 2:
            return (frozenset(),)
        results = []
        for k in range(i + 1, j):
            own = set()
            if k - i > 1:
                own.add((i, k))
            if j - k > 1:
                own.add((k, j))
            for left in between(i, k):
                for right in between(k, j):
                    results.append(frozenset(own) | left | right)
        return tuple(results)

    triangulations = sorted(
        (Triangulation(n, diagonals) for diagonals in between(1, n)), key=lambda t: t.key()
    )
    logger.info(f"Enumerated {len(triangulations)} triangulations of the {n}-gon")
    return triangulations


def ear_counts(T: Triangulation) -> List[int]:
    """Number of triangles incident with each vertex 1..n."""
    counts = [0] * T.n
    for face in T.triangles():
        for v in face:
            counts[v - 1] += 1
    return counts


def diagonal_flip(T: Triangulation, d: Sequence[int]) -> Triangulation:
    """Replace diagonal ``d`` by the other diagonal of its quadrilateral.

    Raises:
        InvalidTriangulation: If ``d`` is not a diagonal of ``T``
    """
    d = chord(*d)
    if d not in T.diagonals:
        raise InvalidTriangulation(f"{d} is not a diagonal of {T}")
    apexes = [v for face in T.triangles() if set(d) <= set(face) for v in face if v not in d]
    replacement = chord(*apexes)
    return Triangulation(T.n, (T.diagonals - {d}) | {replacement})


def flip_partner(T: Triangulation, d: Sequence[int]) -> Tuple[Edge, Tuple[int, int, int, int]]:
    """The diagonal a flip of ``d`` introduces and the quadrilateral (i, j, k, l), cyclically."""
    d = chord(*d)
    apexes = sorted(v for face in T.triangles() if set(d) <= set(face) for v in face if v not in d)
    quad = tuple(sorted(set(d) | set(apexes)))
    return chord(*apexes), quad  # type: ignore[return-value]


def flip_graph(n: int) -> nx.Graph:
    """Triangulations as nodes (keyed by sorted diagonals), flips as edges."""
    graph = nx.Graph()
    for T in enumerate_triangulations(n):
        graph.add_node(T.key(), triangulation=T)
        for d in T.sorted_diagonals():
            graph.add_edge(T.key(), diagonal_flip(T, d).key(), flipped=d)
    return graph


def triangle_path(T: Triangulation, i: int, j: int) -> List[Triangle]:
    """Ordered chain of triangles the segment from vertex ``i`` to vertex ``j`` passes through.

    When ``(i, j)`` is a side or diagonal of ``T`` nothing is crossed and the flanking
    triangles are returned instead, ordered so that reversing ``i`` and ``j`` reverses the
    list.

    Raises:
        ValueError: If ``i == j`` or a vertex is out of range
    """
    if i == j:
        raise ValueError("triangle_path needs two distinct vertices")
    for v in (i, j):
        if not 1 <= v <= T.n:
            raise ValueError(f"Vertex {v} outside 1..{T.n}")
    faces = T.triangles()
    segment = chord(i, j)
    if T.is_side(i, j) or segment in T.diagonals:
        flanking = sorted(face for face in faces if set(segment) <= set(face))
        return flanking if i < j else flanking[::-1]

    def crossed(face: Triangle) -> bool:
        a, b, c = face
        return any(chords_cross(segment, e) for e in ((a, b), (b, c), (a, c)))

    chain = [face for face in faces if crossed(face)]
    start = next(face for face in chain if i in face)
    end = next(face for face in chain if j in face)
    return nx.shortest_path(T.dual_tree(), start, end)


def is_zigzag_dual(T: Triangulation) -> bool:
    """True iff the dual tree is a path."""
    if T.n <= 4:
        return True
    tree = T.dual_tree()
    return sum(1 for node in tree if tree.degree(node) == 1) == 2


@dataclass(frozen=True)
class Zigzag:
    """A chain of entries joining the top and bottom rows of an n-periodic frieze.

    ``cells[r-1]`` is the unwrapped vertex pair ``(i, j)`` with ``j - i = r + 1`` sitting
    in row ``r`` (rows 1..n-3); consecutive cells differ by moving ``i`` down or ``j`` up.
    """

    n: int
    cells: Tuple[Tuple[int, int], ...]
    values: Tuple = ()

    def __post_init__(self):
        """Validate row lengths and adjacency."""
        if len(self.cells) != self.n - 3:
            raise ValueError(
                f"A zig-zag for n={self.n} has {self.n - 3} cells, got {len(self.cells)}"
            )
        if self.values and len(self.values) != len(self.cells):
            raise ValueError("One value per zig-zag cell is required")
        for row, (i, j) in enumerate(self.cells, start=1):
            if j - i != row + 1:
                raise ValueError(f"Cell ({i},{j}) does not lie in row {row}")
        for (i, j), nxt in zip(self.cells, self.cells[1:]):
            if nxt not in ((i - 1, j), (i, j + 1)):
                raise ValueError(f"Cells ({i},{j}) and {nxt} are not adjacent")

    @classmethod
    def straight(cls, n: int, values: Sequence = (), start: int = 1) -> "Zigzag":
        """The zig-zag growing only to the right from ``(start, start + 2)``."""
        cells = tuple((start, start + r + 1) for r in range(1, n - 2))
        return cls(n, cells, tuple(values))

    def with_values(self, values: Sequence) -> "Zigzag":
        return Zigzag(self.n, self.cells, tuple(values))

    def triangulation(self) -> Triangulation:
        """The path-dual triangulation whose diagonals are the zig-zag cells."""
        n = self.n
        return Triangulation(
            n, frozenset(chord((i - 1) % n + 1, (j - 1) % n + 1) for i, j in self.cells)
        )


def zigzag_from_triangulation(
    T: Triangulation, values: Optional[Dict[Edge, object]] = None
) -> Zigzag:
    """Read the zig-zag of a path-dual triangulation, starting from an ear.

    Args:
        T: Triangulation whose dual tree is a path
        values: Optional map diagonal -> value attached to the cells

    Raises:
        ValueError: If the dual tree of ``T`` is not a path
    """
    if not is_zigzag_dual(T):
        raise ValueError(f"{T} does not have a path as dual tree")
    n = T.n
    if n == 3:
        return Zigzag(n, ())
    tree = T.dual_tree()
    leaf = min(node for node in tree if tree.degree(node) <= 1)
    order = list(nx.dfs_preorder_nodes(tree, leaf))
    # The ear is (v-1, v, v+1); its inner side is the first cell.
    ear_vertex = next(
        v
        for k, v in enumerate(leaf)
        if T.is_side(v, leaf[(k + 1) % 3]) and T.is_side(v, leaf[k - 1])
    )
    i, j = ear_vertex - 1, ear_vertex + 1
    cells = [(i, j)]
    for face in order[1:-1]:
        third = next(v for v in face if v not in ((i - 1) % n + 1, (j - 1) % n + 1))
        if (third - (i - 1)) % n == 0:
            i -= 1
        else:
            j += 1
        cells.append((i, j))
    zigzag_values: Tuple = ()
    if values is not None:
        zigzag_values = tuple(
            values[chord((a - 1) % n + 1, (b - 1) % n + 1)] for a, b in cells
        )
    return Zigzag(n, tuple(cells), zigzag_values)


def validate_size(n: int) -> None:
    if not Config.validate_polygon_size(n):
        raise ValueError(
            f"Polygon size {n} outside {Config.MIN_POLYGON_SIZE}..{Config.MAX_POLYGON_SIZE}"
        )
