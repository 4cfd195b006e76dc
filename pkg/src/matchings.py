"""Weighted bipartite graphs, exact perfect-matching sums and their transforms.

Covers the matching graph of a triangulation, Kuo condensation, the doubled graph of a
DAG whose perfect matchings are vertex-disjoint path systems, and degree-2 contraction.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .exact import LaurentPoly
from .polygon import Edge, Triangulation, chord
from .utils.errors import GraphError

logger = logging.getLogger(__name__)

Vertex = Hashable


@dataclass(frozen=True)
class WeightedEdge:
    """An edge record; ``multiplicity`` counts parallel copies of equal weight."""

    weight: Any = 1
    multiplicity: int = 1

    @property
    def total(self) -> Any:
        return self.weight * self.multiplicity


@dataclass(frozen=True)
class Merged:
    """Vertex created by identifying two neighbours during degree-2 contraction."""

    first: Vertex
    second: Vertex

    def __repr__(self) -> str:
        return f"({self.first}+{self.second})"


def _add_edge(edges: Dict[Tuple[Vertex, Vertex], WeightedEdge], key, edge: WeightedEdge) -> None:
    old = edges.get(key)
    if old is None:
        edges[key] = edge
    elif old.weight == edge.weight:
        edges[key] = WeightedEdge(old.weight, old.multiplicity + edge.multiplicity)
    else:
        edges[key] = WeightedEdge(old.total + edge.total, 1)


@dataclass(frozen=True)
class MatchGraph:
    """Bipartite multigraph; edges are keyed ``(black, white)``."""

    black: Tuple[Vertex, ...]
    white: Tuple[Vertex, ...]
    edges: Dict[Tuple[Vertex, Vertex], WeightedEdge] = field(default_factory=dict)

    def __post_init__(self):
        """Check that every edge joins a black vertex to a white one."""
        blacks, whites = set(self.black), set(self.white)
        if blacks & whites:
            raise GraphError("A vertex cannot be both black and white")
        for b, w in self.edges:
            if b not in blacks or w not in whites:
                raise GraphError(f"Edge ({b}, {w}) does not join black to white")

    @property
    def vertex_count(self) -> int:
        return len(self.black) + len(self.white)

    def is_black(self, v: Vertex) -> bool:
        return v in self.black

    def incident(self, v: Vertex) -> List[Tuple[Vertex, WeightedEdge]]:
        """Neighbours of ``v`` with the connecting edge records."""
        if v in self.black:
            return [(w, e) for (b, w), e in self.edges.items() if b == v]
        if v in self.white:
            return [(b, e) for (b, w), e in self.edges.items() if w == v]
        raise GraphError(f"Vertex {v} is not in the graph")

    def degree(self, v: Vertex) -> int:
        return sum(e.multiplicity for _, e in self.incident(v))

    def multiplicities(self) -> List[int]:
        return sorted(e.multiplicity for e in self.edges.values())

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.black, bipartite=0)
        graph.add_nodes_from(self.white, bipartite=1)
        for (b, w), e in self.edges.items():
            for _ in range(e.multiplicity):
                graph.add_edge(b, w, weight=e.weight)
        return graph

    def __repr__(self) -> str:
        return (
            f"MatchGraph(black={len(self.black)}, white={len(self.white)}, "
            f"edges={sum(e.multiplicity for e in self.edges.values())})"
        )


def formal_weights(
    T: Triangulation, formal_sides: bool = False, names: Optional[Mapping[Edge, str]] = None
) -> Dict[Edge, Any]:
    """One Laurent variable per diagonal (and per side when ``formal_sides``).

    Default names are ``d<i>_<j>`` for diagonals and ``s<i>_<j>`` for sides; ``names``
    overrides them edge by edge.
    """
    labelled: Dict[Edge, str] = {}
    for i, j in T.sorted_diagonals():
        labelled[(i, j)] = f"d{i}_{j}"
    if formal_sides:
        for i, j in T.sides():
            labelled[(i, j)] = f"s{i}_{j}"
    if names:
        for edge, name in names.items():
            labelled[chord(*edge)] = name
    ordered = tuple(labelled[e] for e in sorted(labelled))
    weights: Dict[Edge, Any] = {e: 1 for e in T.sides()}
    for edge, name in labelled.items():
        weights[edge] = LaurentPoly.variable(name, ordered)
    return weights


def build_graph(T: Triangulation, weights: Optional[Mapping[Edge, Any]] = None) -> MatchGraph:
    """Matching graph of a triangulation.

    Black vertices are the polygon vertices 1..n, white vertices the triangles. The edge
    from vertex v to triangle t carries the weight of the side or diagonal of t opposite v.

    Args:
        T: Triangulation
        weights: Map from sides/diagonals to weights; sides default to 1. ``None`` gives
            the unweighted graph.

    Raises:
        GraphError: If a diagonal has no weight
    """
    weights = dict(weights or {})
    edges: Dict[Tuple[Vertex, Vertex], WeightedEdge] = {}
    faces = T.triangles()
    for face in faces:
        for v in face:
            opposite = chord(*(u for u in face if u != v))
            if opposite in weights:
                weight = weights[opposite]
            elif T.is_side(*opposite) or not weights:
                weight = 1
            else:
                raise GraphError(f"Missing weight for diagonal {opposite}")
            edges[(v, face)] = WeightedEdge(weight)
    return MatchGraph(tuple(range(1, T.n + 1)), tuple(faces), edges)


def delete_black(G: MatchGraph, i: Vertex, j: Vertex) -> MatchGraph:
    """Remove black vertices ``i`` and ``j`` and their edges.

    Raises:
        GraphError: If ``i == j`` or either vertex is not black
    """
    if i == j:
        raise GraphError("delete_black needs two distinct vertices")
    for v in (i, j):
        if v not in G.black:
            raise GraphError(f"Vertex {v} is not a black vertex of the graph")
    gone = {i, j}
    return MatchGraph(
        tuple(b for b in G.black if b not in gone),
        G.white,
        {(b, w): e for (b, w), e in G.edges.items() if b not in gone},
    )


def matching_sum(G: MatchGraph) -> Any:
    """Sum over perfect matchings of the product of edge weights.

    Branches on the white vertex with the fewest remaining options and memoizes on the
    remaining vertex sets.

    Raises:
        GraphError: If the colour classes differ in size
    """
    if len(G.black) != len(G.white):
        raise GraphError(
            f"Unbalanced graph: {len(G.black)} black vs {len(G.white)} white vertices"
        )
    black_index = {b: k for k, b in enumerate(G.black)}
    white_index = {w: k for k, w in enumerate(G.white)}
    options: List[List[Tuple[int, Any]]] = [[] for _ in G.white]
    sample = None
    for (b, w), e in G.edges.items():
        options[white_index[w]].append((black_index[b], e.total))
        if isinstance(e.weight, LaurentPoly):
            sample = e.weight

    @lru_cache(maxsize=None)
    def solve(black_mask: int, white_mask: int) -> Any:
        if not white_mask:
            return 1
        best, best_choices = -1, None
        for w in range(len(options)):
            if not white_mask >> w & 1:
                continue
            choices = [(b, wt) for b, wt in options[w] if black_mask >> b & 1]
            if not choices:
                return 0
            if best_choices is None or len(choices) < len(best_choices):
                best, best_choices = w, choices
        total: Any = 0
        for b, wt in best_choices:
            rest = solve(black_mask & ~(1 << b), white_mask & ~(1 << best))
            if rest != 0:
                total = total + wt * rest
        return total

    result = solve((1 << len(G.black)) - 1, (1 << len(G.white)) - 1)
    if sample is not None and not isinstance(result, LaurentPoly):
        result = LaurentPoly.constant(result, sample.names)
    return result


def matching_count(G: MatchGraph) -> int:
    """Number of perfect matchings, counting parallel edges, ignoring weights."""
    unit = MatchGraph(
        G.black, G.white, {k: WeightedEdge(1, e.multiplicity) for k, e in G.edges.items()}
    )
    return matching_sum(unit)


def kuo_terms(G: MatchGraph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Dict[str, Any]:
    """The six matching sums entering Kuo condensation."""
    if len(G.black) != len(G.white) + 2:
        raise GraphError(
            "Kuo condensation needs exactly two more black than white vertices, "
            f"got {len(G.black)} black and {len(G.white)} white"
        )

    def m(x: Vertex, y: Vertex) -> Any:
        return matching_sum(delete_black(G, x, y))

    return {
        "ac": m(a, c),
        "bd": m(b, d),
        "ab": m(a, b),
        "cd": m(c, d),
        "ad": m(a, d),
        "bc": m(b, c),
    }


def kuo_check(G: MatchGraph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool:
    """Check m(a,c) m(b,d) = m(a,b) m(c,d) + m(a,d) m(b,c).

    The caller asserts that a, b, c, d appear in this cyclic order on one face.
    """
    t = kuo_terms(G, a, b, c, d)
    return t["ac"] * t["bd"] == t["ab"] * t["cd"] + t["ad"] * t["bc"]


@dataclass(frozen=True)
class Dag:
    """Directed acyclic multigraph with paired sources and targets."""

    vertices: Tuple[Vertex, ...]
    arcs: Tuple[Tuple[Vertex, Vertex], ...]
    sources: Tuple[Vertex, ...]
    targets: Tuple[Vertex, ...]

    def __post_init__(self):
        """Validate endpoints and acyclicity."""
        known = set(self.vertices)
        for u, v in self.arcs:
            if u not in known or v not in known:
                raise GraphError(f"Arc ({u}, {v}) uses an unknown vertex")
        if len(self.sources) != len(self.targets):
            raise GraphError("Sources and targets must pair up")
        if not set(self.sources) | set(self.targets) <= known:
            raise GraphError("Sources and targets must be vertices")
        if not nx.is_directed_acyclic_graph(self.graph()):
            raise GraphError("Graph has a directed cycle")

    def graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arcs)
        return graph


def dag_to_matching_graph(D: Dag) -> MatchGraph:
    """Doubled graph on V x {1, 2} with (s, 1) and (t, 2) removed.

    Each vertex v contributes the edge (v,1)-(v,2); each arc v -> w contributes (v,2)-(w,1).
    Black vertices are the (v, 2) copies.
    """
    black = tuple((v, 2) for v in D.vertices if v not in D.targets)
    white = tuple((v, 1) for v in D.vertices if v not in D.sources)
    blacks, whites = set(black), set(white)
    edges: Dict[Tuple[Vertex, Vertex], WeightedEdge] = {}
    for v in D.vertices:
        if (v, 2) in blacks and (v, 1) in whites:
            _add_edge(edges, ((v, 2), (v, 1)), WeightedEdge())
    for u, v in D.arcs:
        if (u, 2) in blacks and (v, 1) in whites:
            _add_edge(edges, ((u, 2), (v, 1)), WeightedEdge())
    graph = MatchGraph(black, white, edges)
    logger.debug(f"Doubled DAG with {len(D.vertices)} vertices into {graph}")
    return graph


def count_disjoint_path_systems(D: Dag) -> int:
    """Brute-force count of vertex-disjoint path systems joining the sources to the targets.

    Paths may not pass through other sources or targets; parallel arcs count separately.
    Vertex-disjoint is the notion that matches :func:`dag_to_matching_graph`: each inner
    vertex becomes one black-white pair, so two paths sharing a vertex would need that
    pair twice. Edge-disjoint systems that meet at a vertex are not counted.
    """
    out: Dict[Vertex, List[Vertex]] = {v: [] for v in D.vertices}
    for u, v in D.arcs:
        out[u].append(v)
    targets = set(D.targets)
    terminals = set(D.sources) | targets

    def extend(k: int, used: frozenset) -> int:
        if k == len(D.sources):
            return 1
        total = 0
        stack = [(D.sources[k], used | {D.sources[k]})]
        while stack:
            v, seen = stack.pop()
            for w in out[v]:
                if w in seen:
                    continue
                if w in targets:
                    total += extend(k + 1, seen | {w})
                elif w not in terminals:
                    stack.append((w, seen | {w}))
        return total

    return extend(0, frozenset())


def contract_degree2(G: MatchGraph, v: Vertex) -> MatchGraph:
    """Remove a degree-2 vertex and identify its two neighbours.

    Weighted sums are preserved: edges of one neighbour are multiplied by the weight of
    the edge from ``v`` to the other neighbour.

    Raises:
        GraphError: If ``v`` does not have degree 2 with two distinct neighbours
    """
    incident = G.incident(v)
    if sum(e.multiplicity for _, e in incident) != 2 or len(incident) != 2:
        raise GraphError(f"Vertex {v} does not have degree 2 with two distinct neighbours")
    (w1, e1), (w2, e2) = incident
    merged = Merged(w1, w2)
    v_black = G.is_black(v)
    edges: Dict[Tuple[Vertex, Vertex], WeightedEdge] = {}
    for (b, w), e in G.edges.items():
        own, other = (b, w) if v_black else (w, b)
        if own == v:
            continue
        if other in (w1, w2):
            factor = e2.total if other == w1 else e1.total
            moved = WeightedEdge(e.weight * factor, e.multiplicity)
            key = (own, merged) if v_black else (merged, own)
            _add_edge(edges, key, moved)
        else:
            _add_edge(edges, (b, w), e)
    if v_black:
        black = tuple(b for b in G.black if b != v)
        white = tuple(w for w in G.white if w not in (w1, w2)) + (merged,)
    else:
        white = tuple(w for w in G.white if w != v)
        black = tuple(b for b in G.black if b not in (w1, w2)) + (merged,)
    return MatchGraph(black, white, edges)


def contract_all(G: MatchGraph) -> MatchGraph:
    """Contract degree-2 vertices until none remain."""
    steps = 0
    while True:
        candidate = next(
            (
                v
                for v in G.black + G.white
                if len(G.incident(v)) == 2 and G.degree(v) == 2
            ),
            None,
        )
        if candidate is None:
            logger.debug(f"Contracted {steps} degree-2 vertices")
            return G
        G = contract_degree2(G, candidate)
        steps += 1


def lindstrom_determinant(path_counts: Sequence[Sequence[int]]) -> int:
    """2x2 path-count determinant p11 p22 - p12 p21."""
    (p11, p12), (p21, p22) = path_counts
    return p11 * p22 - p12 * p21


def unit_graph(
    black: Iterable[Vertex], white: Iterable[Vertex], pairs: Iterable[Tuple[Vertex, Vertex]]
) -> MatchGraph:
    """Unweighted graph from (black, white) pairs; repeated pairs become multiplicity."""
    edges: Dict[Tuple[Vertex, Vertex], WeightedEdge] = {}
    for pair in pairs:
        _add_edge(edges, pair, WeightedEdge())
    return MatchGraph(tuple(black), tuple(white), edges)
