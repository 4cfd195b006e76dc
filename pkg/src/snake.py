"""Snake graphs and their equivalent counting models.

A snake is described by a code over {1, 2}: ``1`` continues straight, ``2`` turns. The
same count is reached through the m_k recurrence, AB and LR matrix products, path counts
in the LR path graph, strip tilings with stack multiplicities and path counts in the dual
snake.
"""

import logging
from dataclasses import dataclass, field
from itertools import groupby
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .exact import Mat2, mat2_product
from .frieze import FriezeTable, frieze_from_zigzag
from .matchings import Dag, MatchGraph, WeightedEdge, matching_sum
from .polygon import Triangulation, Zigzag, triangle_path

logger = logging.getLogger(__name__)

A = Mat2(0, 1, 1, 1)
B = Mat2(1, 1, 1, 0)
L = Mat2(1, 1, 0, 1)
R = Mat2(1, 0, 1, 1)

Point = Tuple[int, int]


def _check_word(word: str, alphabet: str, kind: str) -> None:
    bad = set(word) - set(alphabet)
    if bad:
        raise ValueError(f"{kind} {word!r} uses {sorted(bad)}; valid letters are {list(alphabet)}")


def snake_matchings(code: str) -> int:
    """Perfect matchings of the snake with the given code.

    Starts from m1 = 2, m2 = 3; ``1`` adds the previous two terms and ``2`` continues the
    arithmetic progression. The empty code is the two-box snake.

    Raises:
        TypeError: If code is not a string
        ValueError: If code uses letters other than 1 and 2
    """
    if not isinstance(code, str):
        raise TypeError(f"Snake code must be a string over {{1, 2}}, got {code!r}")
    _check_word(code, "12", "Snake code")
    before, current = 2, 3
    for symbol in code:
        if symbol == "1":
            before, current = current, current + before
        else:
            before, current = current, 2 * current - before
    return current


def code_from_triangulation(T: Triangulation, i: int, j: int) -> str:
    """Code of the snake along the triangle path from ``i`` to ``j``.

    One symbol per window of four consecutive triangles: ``2`` when they share a vertex,
    ``1`` otherwise. Paths of fewer than four triangles give the empty code.
    """
    path = triangle_path(T, i, j)
    symbols = []
    for k in range(len(path) - 3):
        common = set(path[k]).intersection(*path[k + 1:k + 4])
        symbols.append("2" if common else "1")
    return "".join(symbols)


def snake_order(T: Triangulation, i: int, j: int) -> int:
    """Number of boxes of the snake between ``i`` and ``j``: one per crossed diagonal."""
    return len(triangle_path(T, i, j)) - 1


def code_to_ab(code: str, first: str = "A") -> str:
    """AB word of a code; ``1`` repeats the previous letter and ``2`` switches."""
    _check_word(code, "12", "Snake code")
    _check_word(first, "AB", "AB word")
    letters = [first]
    for symbol in code:
        previous = letters[-1]
        letters.append(previous if symbol == "1" else ("B" if previous == "A" else "A"))
    return "".join(letters)


def ab_to_code(word: str) -> str:
    """Code of an AB word: ``1`` where neighbouring letters agree, ``2`` where they differ."""
    _check_word(word, "AB", "AB word")
    if len(word) < 2:
        raise ValueError(f"AB word {word!r} is too short to carry a code")
    return "".join("1" if x == y else "2" for x, y in zip(word, word[1:]))


def swap_ab(word: str) -> str:
    _check_word(word, "AB", "AB word")
    return word.translate(str.maketrans("AB", "BA"))


def ab_product(word: str) -> Mat2:
    """Product of A = [[0,1],[1,1]] and B = [[1,1],[1,0]] factors."""
    _check_word(word, "AB", "AB word")
    if not word:
        raise ValueError("AB word must be nonempty")
    return mat2_product(A if letter == "A" else B for letter in word)


def ab_to_lr(word: str, start: str = "L") -> str:
    """LR reading of an AB word.

    Consecutive LR letters agree exactly when the AB letters differ. ``start`` picks the
    first letter; the other choice gives the mirror reading.
    """
    _check_word(word, "AB", "AB word")
    _check_word(start, "LR", "LR word")
    if not word:
        return ""
    letters = [start]
    for x, y in zip(word, word[1:]):
        previous = letters[-1]
        letters.append(previous if x != y else ("R" if previous == "L" else "L"))
    return "".join(letters)


def lr_product(word: str) -> Mat2:
    """Product of L = [[1,1],[0,1]] and R = [[1,0],[1,1]] factors."""
    _check_word(word, "LR", "LR word")
    return mat2_product(L if letter == "L" else R for letter in word)


def lr_path_dag(word: str) -> Dag:
    """Layered path graph of an LR word between a unique leftmost and rightmost vertex.

    Layer k has a top and a bottom vertex. Letter L joins top to top and bottom and bottom
    to bottom; letter R joins top to top, bottom to top and bottom to bottom.
    """
    _check_word(word, "LR", "LR word")
    vertices = ["source"]
    arcs: List[Tuple] = [("source", ("t", 0)), ("source", ("b", 0))]
    for k in range(len(word) + 1):
        vertices += [("t", k), ("b", k)]
    for k, letter in enumerate(word, start=1):
        arcs.append((("t", k - 1), ("t", k)))
        arcs.append((("b", k - 1), ("b", k)))
        if letter == "L":
            arcs.append((("t", k - 1), ("b", k)))
        else:
            arcs.append((("b", k - 1), ("t", k)))
    last = len(word)
    arcs += [(("t", last), "sink"), (("b", last), "sink")]
    vertices.append("sink")
    return Dag(tuple(vertices), tuple(arcs), ("source",), ("sink",))


def count_paths(graph: nx.DiGraph, start, end) -> int:
    """Directed path count by dynamic programming over a topological order."""
    counts = {start: 1}
    for v in nx.topological_sort(graph):
        if v not in counts:
            continue
        for _, w in graph.out_edges(v):
            counts[w] = counts.get(w, 0) + counts[v]
    return counts.get(end, 0)


def lr_paths_count(word: str) -> int:
    """Paths from the leftmost to the rightmost vertex of the LR path graph."""
    return count_paths(lr_path_dag(word).graph(), "source", "sink")


def lr_path_matrix(word: str) -> Mat2:
    """Path counts between the first layer's (top, bottom) and the last layer's (top, bottom)."""
    graph = lr_path_dag(word).graph()
    last = len(word)
    rows = [
        [count_paths(graph, (s, 0), (t, last)) for t in ("t", "b")] for s in ("t", "b")
    ]
    return Mat2.from_rows(rows)


def dual_code(code: str) -> str:
    _check_word(code, "12", "Snake code")
    return code.translate(str.maketrans("12", "21"))


def run_length_multiplicities(word: str) -> List[int]:
    """Run lengths of an LR word after duplicating its first and last letters."""
    _check_word(word, "LR", "LR word")
    if not word:
        raise ValueError("LR word must be nonempty")
    padded = word[0] + word + word[-1]
    return [len(list(run)) for _, run in groupby(padded)]


def strip_tilings(stacks: Sequence[int]) -> int:
    """Tilings of a strip whose cell k holds a stack of 1..r_k squares or half a domino."""
    if not stacks:
        raise ValueError("strip_tilings needs at least one cell")
    if any(r < 1 for r in stacks):
        raise ValueError(f"Stack heights must be at least 1, got {list(stacks)}")
    before, current = 1, stacks[0]
    for r in stacks[1:]:
        before, current = current, r * current + before
    return current


def multiplicity_strip_graph(stacks: Sequence[int]) -> MatchGraph:
    """Straight ladder whose k-th rung has multiplicity ``stacks[k]``; rails are simple."""
    points = [(k, side) for k in range(len(stacks)) for side in (0, 1)]
    black = tuple(p for p in points if sum(p) % 2 == 0)
    white = tuple(p for p in points if sum(p) % 2 == 1)
    pairs = [((k, 0), (k, 1), r) for k, r in enumerate(stacks)]
    pairs += [((k, s), (k + 1, s), 1) for k in range(len(stacks) - 1) for s in (0, 1)]
    edges = {}
    for p, q, r in pairs:
        key = (p, q) if sum(p) % 2 == 0 else (q, p)
        edges[key] = WeightedEdge(1, r)
    return MatchGraph(black, white, edges)


def snake_boxes(ab_word: str) -> List[Point]:
    """Top-left corners of the boxes (y grows downward); A puts the next box right, B below."""
    _check_word(ab_word, "AB", "AB word")
    x, y = 0, 0
    boxes = [(x, y)]
    for letter in ab_word:
        if letter == "A":
            x += 1
        else:
            y += 1
        boxes.append((x, y))
    return boxes


def _box_segments(ab_word: str) -> List[Tuple[Point, Point]]:
    segments = set()
    for x, y in snake_boxes(ab_word):
        segments |= {
            ((x, y), (x + 1, y)),
            ((x, y + 1), (x + 1, y + 1)),
            ((x, y), (x, y + 1)),
            ((x + 1, y), (x + 1, y + 1)),
        }
    return sorted(segments)


def square_snake_graph(ab_word: str) -> MatchGraph:
    """Grid-point graph of the square snake; corners coloured by the parity of x + y."""
    segments = _box_segments(ab_word)
    points = sorted({p for segment in segments for p in segment})
    black = tuple(p for p in points if sum(p) % 2 == 0)
    white = tuple(p for p in points if sum(p) % 2 == 1)
    edges = {}
    for p, q in segments:
        key = (p, q) if sum(p) % 2 == 0 else (q, p)
        edges[key] = WeightedEdge()
    return MatchGraph(black, white, edges)


def snake_lattice_paths(ab_word: str) -> int:
    """Right/down paths along box edges from the first box's corner to the last box's far corner.

    The y axis points down, so a B step moves the path downward.
    """
    graph = nx.DiGraph()
    graph.add_edges_from(_box_segments(ab_word))
    end_x, end_y = snake_boxes(ab_word)[-1]
    return count_paths(graph, (0, 0), (end_x + 1, end_y + 1))


def model_values(code: str) -> Dict[str, int]:
    """The snake's matching count computed by every model, keyed by model name."""
    ab = code_to_ab(code)
    lr = ab_to_lr(ab)
    values = {
        "recurrence": snake_matchings(code),
        "ab_product": ab_product(ab).entry_sum,
        "lr_paths": lr_paths_count(lr),
        "strip_tilings": strip_tilings(run_length_multiplicities(lr)),
        "dual_paths": snake_lattice_paths(code_to_ab(dual_code(code))),
        "matchings": matching_sum(square_snake_graph(ab)),
    }
    logger.debug(f"Snake models for code {code!r}: {values}")
    return values


@dataclass
class DualSnakeFrieze:
    """A diamond snake drawn inside a frieze whose left border is a zig-zag of 1's.

    Picture coordinates put row r of the frieze at height ``N - 1 - r`` with neighbouring
    entries two units apart. ``comparisons`` maps each region point to
    ``(frieze entry, path count)``.
    """

    word: str
    mirrored: bool
    frieze: FriezeTable
    vertices: List[Point]
    arcs: List[Tuple[Point, Point]]
    comparisons: Dict[Point, Tuple[int, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.comparisons) and all(a == b for a, b in self.comparisons.values())

    @property
    def largest(self) -> int:
        return max(paths for _, paths in self.comparisons.values())


def dual_snake_frieze(lr_word: str) -> DualSnakeFrieze:
    """Compare frieze entries to path counts in the snake drawn on a zig-zag of 1's.

    The frieze has period ``len(w) + 4``. Its 1's run down the left border of a chain of
    ``len(w) + 1`` diamonds whose centres step down-left for L and down-right for R. The
    entry at a point w should equal the number of downward snake paths from the leftmost
    snake vertex on the slope -1 line through w to the leftmost one on the slope +1 line.
    Words starting with R are mirrored first.
    """
    _check_word(lr_word, "LR", "LR word")
    if not lr_word:
        raise ValueError("LR word must be nonempty")
    mirrored = lr_word[0] == "R"
    word = lr_word.translate(str.maketrans("LR", "RL")) if mirrored else lr_word
    period = len(word) + 4
    steps = (word[0] + word)[: period - 3]
    i, j = 1, 2
    cells = []
    for letter in steps:
        if letter == "L":
            i -= 1
        else:
            j += 1
        cells.append((i, j))
    frieze = frieze_from_zigzag(Zigzag(period, tuple(cells), (1,) * len(cells)))

    top = (0, period - 1)
    centre = (top[0], top[1] - 1)
    arcs = set()
    for k in range(len(word) + 1):
        cx, cy = centre
        up, left, right, down = (cx, cy + 1), (cx - 1, cy), (cx + 1, cy), (cx, cy - 1)
        arcs |= {(up, left), (up, right), (left, down), (right, down)}
        if k < len(word):
            centre = (cx - 1, cy - 1) if word[k] == "L" else (cx + 1, cy - 1)
    graph = nx.DiGraph()
    graph.add_edges_from(arcs)
    vertices = sorted(graph.nodes)

    def leftmost(points: List[Point]) -> Optional[Point]:
        return min(points) if points else None

    comparisons: Dict[Point, Tuple[int, int]] = {}
    xs = [x for x, _ in vertices]
    for y in range(1, period):
        for x in range(min(xs), max(xs) + period + 1):
            if (x + y) % 2 != (top[0] + top[1]) % 2:
                continue
            upper = leftmost([v for v in vertices if v[0] + v[1] == x + y])
            lower = leftmost([v for v in vertices if v[0] - v[1] == x - y])
            if upper is None or lower is None or x < max(upper[0], lower[0]):
                continue
            a = (x + 3 - (period - y)) // 2
            b = (x + 3 + (period - y)) // 2
            entry = frieze.entry(a, b)
            paths = count_paths(graph, upper, lower)
            comparisons[(x, y)] = (entry, paths)
    result = DualSnakeFrieze(lr_word, mirrored, frieze, vertices, sorted(arcs), comparisons)
    logger.debug(f"Dual snake frieze for {lr_word}: {len(comparisons)} region entries")
    return result
