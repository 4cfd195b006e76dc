"""Frieze patterns: construction, verification, continuants and classification.

A frieze of period n is stored as a map from ordered vertex pairs ``(i, j)``, ``i != j``
in 1..n, to exact values. The pair ``(i, j)`` is the chord read forward from i to j and
sits in row ``((j - i) mod n) - 1``; row 0 holds the side weights. The glide reflection
``entry(i, j) == entry(j, i)`` is checked by :func:`verify_frieze`, never assumed.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import LaurentPoly, divide, is_integral_value, is_positive_value, normalize
from .matchings import build_graph, delete_black, formal_weights, matching_sum
from .polygon import (
    Edge,
    Triangulation,
    Zigzag,
    catalan,
    chord,
    diagonal_flip,
    ear_counts,
    enumerate_triangulations,
    flip_partner,
    validate_size,
)
from .utils.config import Config
from .utils.errors import RecurrenceDivisionError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def _wrap(i: int, n: int) -> int:
    return (i - 1) % n + 1


@dataclass
class FriezeTable:
    """An n-periodic frieze pattern keyed by ordered vertex pairs."""

    n: int
    entries: Dict[Pair, Any]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def entry(self, i: int, j: int) -> Any:
        """Value of the chord read forward from ``i`` to ``j`` (labels taken mod n)."""
        key = (_wrap(i, self.n), _wrap(j, self.n))
        if key[0] == key[1]:
            raise ValueError(f"No frieze entry for the degenerate pair ({i}, {j})")
        return self.entries[key]

    def side(self, i: int) -> Any:
        return self.entry(i, i + 1)

    def row(self, r: int) -> List[Any]:
        """Row ``r`` as ``[entry(i, i + r + 1) for i in 1..n]``."""
        if not 0 <= r <= self.n - 2:
            raise ValueError(f"Row {r} outside 0..{self.n - 2}")
        return [self.entry(i, i + r + 1) for i in range(1, self.n + 1)]

    def rows(self) -> List[List[Any]]:
        return [self.row(r) for r in range(self.n - 1)]

    def quiddity(self) -> List[Any]:
        """Row 1 aligned so that position k holds ``entry(k - 1, k + 1)``."""
        return [self.entry(k - 1, k + 1) for k in range(1, self.n + 1)]

    def is_laurent(self) -> bool:
        return any(isinstance(v, LaurentPoly) for v in self.entries.values())

    def map_values(self, fn: Callable[[Any], Any]) -> "FriezeTable":
        return FriezeTable(self.n, {k: fn(v) for k, v in self.entries.items()}, dict(self.metadata))

    def __repr__(self) -> str:
        return f"FriezeTable(n={self.n}, rows={self.n - 1})"


@dataclass
class FriezeReport:
    """Outcome of :func:`verify_frieze`; failures are listed, never raised."""

    n: int
    relation_ok: bool
    glide_ok: bool
    boundary_ok: bool
    period_ok: bool
    positive: bool
    integral: Optional[bool]
    ptolemy_ok: Optional[bool] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        checks = [self.relation_ok, self.glide_ok, self.boundary_ok, self.period_ok]
        if self.ptolemy_ok is not None:
            checks.append(self.ptolemy_ok)
        return all(checks)

    @property
    def is_positive_integral(self) -> bool:
        return self.ok and self.positive and self.integral is True


def continuant(values: Sequence[Any]) -> Any:
    """Tridiagonal determinant with ``values`` on the diagonal and 1's beside it.

    Raises:
        ValueError: If ``values`` is empty
    """
    if not values:
        raise ValueError("continuant needs at least one value")
    before, current = 1, values[0]
    for a in values[1:]:
        before, current = current, a * current - before
    return current


def frieze_from_quiddity(a: Sequence[Any], sides: Optional[Sequence[Any]] = None) -> FriezeTable:
    """Top-down construction from a quiddity row.

    ``a[k-1]`` is placed at ``(k - 1, k + 1)``; each further row follows from the frieze
    relation ``e(i,j) e(i+1,j+1) = e(i+1,j) e(i,j+1) + side(i) side(j)``. The bottom row is
    computed like any other and may fail to be the side row; :func:`verify_frieze` decides.

    Args:
        a: n quiddity values (rational or Laurent)
        sides: Optional side weights, ``sides[s-1]`` on the side ``(s, s+1)``

    Raises:
        ValueError: If fewer than four values are given
        RecurrenceDivisionError: If the recurrence divides by zero
    """
    n = len(a)
    if n < 4:
        raise ValueError(f"A quiddity row needs at least 4 entries, got {n}")
    side = list(sides) if sides is not None else [1] * n
    if len(side) != n:
        raise ValueError(f"Expected {n} side weights, got {len(side)}")
    e: Dict[Pair, Any] = {}
    for i in range(1, n + 1):
        e[(i, _wrap(i + 1, n))] = side[i - 1]
        e[(i, _wrap(i + 2, n))] = normalize(a[_wrap(i + 1, n) - 1])

    def get(i: int, j: int) -> Any:
        return e[(_wrap(i, n), _wrap(j, n))]

    for d in range(3, n):
        for i in range(1, n + 1):
            j = i + d
            numerator = get(i, j - 1) * get(i + 1, j) - side[i - 1] * side[_wrap(j - 1, n) - 1]
            below = get(i + 1, j - 1)
            try:
                e[(i, _wrap(j, n))] = divide(numerator, below)
            except ZeroDivisionError as exc:
                error_msg = f"Frieze recurrence divides by zero at ({i}, {_wrap(j, n)})"
                logger.error(error_msg)
                raise RecurrenceDivisionError(error_msg, position=(i, _wrap(j, n))) from exc
    logger.debug(f"Built frieze of period {n} from quiddity {list(a)}")
    return FriezeTable(n, e, {"source": "quiddity"})


def _sideways(
    z: Zigzag, side: Sequence[Any], span: int
) -> Dict[Pair, Any]:
    """Propagate a zig-zag to the right over ``span`` columns, keyed by unwrapped pairs."""
    n = z.n
    values: Dict[Pair, Any] = {}
    starts = {row: i for row, (i, _) in enumerate(z.cells, start=1)}
    for (i, j), value in zip(z.cells, z.values):
        values[(i, j)] = normalize(value)

    def get(a: int, b: int) -> Any:
        gap = b - a
        if gap == 1:
            return side[_wrap(a, n) - 1]
        if gap == n - 1:
            return side[_wrap(a - 1, n) - 1]
        return values[(a, b)]

    if not starts:
        return values
    low = min(starts.values())
    high = max(starts.values()) + span
    for a in range(low + 1, high + 1):
        for row in range(1, n - 2):
            if not starts[row] < a <= starts[row] + span:
                continue
            b = a + row + 1
            numerator = get(a, b - 1) * get(a - 1, b) + side[_wrap(a - 1, n) - 1] * side[
                _wrap(b - 1, n) - 1
            ]
            try:
                values[(a, b)] = divide(numerator, get(a - 1, b - 1))
            except ZeroDivisionError as exc:
                position = (_wrap(a, n), _wrap(b, n))
                error_msg = f"Sideways recurrence divides by zero at {position}"
                logger.error(error_msg)
                raise RecurrenceDivisionError(error_msg, position=position) from exc
    return values


def frieze_from_zigzag(z: Zigzag, sides: Optional[Sequence[Any]] = None) -> FriezeTable:
    """Sideways construction from values on a zig-zag joining the top and bottom rows.

    Each new entry comes from ``C = (A D + side side) / B`` applied to the diamond on its
    left. The computation runs one column past a full period and records in
    ``metadata["periodic"]`` whether the translated zig-zag reproduces the initial values.

    Args:
        z: Zig-zag carrying one value per cell (none when n = 3)
        sides: Optional side weights, defaulting to 1

    Raises:
        ValueError: If the zig-zag carries no values
        RecurrenceDivisionError: If a numeric division by zero occurs
    """
    n = z.n
    if n > 3 and not z.values:
        raise ValueError("frieze_from_zigzag needs values on the zig-zag")
    side = list(sides) if sides is not None else [1] * n
    if len(side) != n:
        raise ValueError(f"Expected {n} side weights, got {len(side)}")
    values = _sideways(z, side, n)
    e: Dict[Pair, Any] = {}
    for s in range(1, n + 1):
        e[(s, _wrap(s + 1, n))] = side[s - 1]
        e[(s, _wrap(s - 1, n))] = side[_wrap(s - 1, n) - 1]
    for row, (i, _) in enumerate(z.cells, start=1):
        for a in range(i, i + n):
            e[(_wrap(a, n), _wrap(a + row + 1, n))] = values[(a, a + row + 1)]
    periodic = all(
        values[(i + n, j + n)] == normalize(v) for (i, j), v in zip(z.cells, z.values)
    )
    if not periodic:
        logger.warning(f"Zig-zag for n={n} did not return to its initial values")
    return FriezeTable(n, e, {"source": "zigzag", "periodic": periodic})


def zigzag_orbit(z: Zigzag, steps: int, sides: Optional[Sequence[Any]] = None) -> List[Tuple]:
    """Values on the zig-zag translated right by 0, 1, ..., ``steps`` columns."""
    side = list(sides) if sides is not None else [1] * z.n
    values = _sideways(z, side, steps)
    return [tuple(values[(i + k, j + k)] for i, j in z.cells) for k in range(steps + 1)]


def frieze_from_triangulation(
    T: Triangulation, weights: Optional[Mapping[Edge, Any]] = None
) -> FriezeTable:
    """Weighted-matching frieze ``M(i,j) = W(i,j) / prod(diagonal weights)``.

    ``W(i,j)`` is the weighted perfect-matching sum of the graph of ``T`` with black
    vertices i and j removed.

    Args:
        T: Triangulation
        weights: Weights of sides and diagonals; defaults to one formal variable per
            diagonal with sides set to 1
    """
    if weights is None:
        weights = formal_weights(T)
    G = build_graph(T, weights)
    denominator: Any = 1
    for d in T.sorted_diagonals():
        denominator = denominator * weights[d]
    e: Dict[Pair, Any] = {}
    for i, j in combinations(range(1, T.n + 1), 2):
        value = divide(matching_sum(delete_black(G, i, j)), denominator)
        e[(i, j)] = e[(j, i)] = value
    logger.debug(f"Matching frieze of {T} computed")
    return FriezeTable(T.n, e, {"source": "matchings", "triangulation": T.key()})


def matching_frieze(T: Triangulation) -> FriezeTable:
    """Integer frieze of perfect-matching counts ``m(i,j)``."""
    return frieze_from_triangulation(T, {edge: 1 for edge in T.edges()})


def ptolemy_complete(
    T: Triangulation, values: Mapping[Edge, Any], one: Any = 1
) -> FriezeTable:
    """Fill in every chord from values on the sides and diagonals of ``T``.

    Walks flips breadth-first; each newly reached diagonal gets its Ptolemy exchange value
    from the quadrilateral it was flipped in. Missing sides default to ``one``. Works for
    any value type with ``+``, ``*`` and exact division.
    """
    n = T.n
    values = {chord(*edge): value for edge, value in values.items()}
    known: Dict[Edge, Any] = {}
    for edge in T.edges():
        known[edge] = values[edge] if edge in values else (one if T.is_side(*edge) else None)
        if known[edge] is None:
            raise ValueError(f"No value given for diagonal {edge}")
    total = n * (n - 1) // 2
    queue = [T]
    seen = {T.key()}
    while queue and len(known) < total:
        current = queue.pop(0)
        for d in current.sorted_diagonals():
            new, (q1, q2, q3, q4) = flip_partner(current, d)
            if new not in known:
                numerator = (
                    known[chord(q1, q2)] * known[chord(q3, q4)]
                    + known[chord(q2, q3)] * known[chord(q1, q4)]
                )
                try:
                    known[new] = divide(numerator, known[d])
                except ZeroDivisionError as exc:
                    error_msg = f"Ptolemy exchange divides by zero flipping {d}"
                    logger.error(error_msg)
                    raise RecurrenceDivisionError(error_msg, position=d) from exc
            flipped = diagonal_flip(current, d)
            if flipped.key() not in seen:
                seen.add(flipped.key())
                queue.append(flipped)
    e: Dict[Pair, Any] = {}
    for (i, j), value in known.items():
        e[(i, j)] = e[(j, i)] = value
    return FriezeTable(n, e, {"source": "ptolemy", "triangulation": T.key()})


def _relation_failures(F: FriezeTable) -> List[str]:
    failures = []
    n = F.n
    for i in range(1, n + 1):
        for d in range(2, n - 1):
            j = i + d
            lhs = F.entry(i, j) * F.entry(i + 1, j + 1)
            rhs = F.entry(i + 1, j) * F.entry(i, j + 1) + F.side(i) * F.side(j)
            if lhs != rhs:
                failures.append(f"relation at ({_wrap(i, n)}, {_wrap(j, n)})")
    return failures


def verify_ptolemy(F: FriezeTable) -> List[str]:
    """Check the Ptolemy relation on every cyclically ordered quadruple."""
    failures = []
    for i, j, k, l in combinations(range(1, F.n + 1), 4):
        lhs = F.entry(i, k) * F.entry(j, l)
        rhs = F.entry(i, j) * F.entry(k, l) + F.entry(j, k) * F.entry(i, l)
        if lhs != rhs:
            failures.append(f"ptolemy at ({i}, {j}, {k}, {l})")
    return failures


def verify_frieze(F: FriezeTable, check_ptolemy: bool = False) -> FriezeReport:
    """Run the frieze checks; every failed identity is listed in the report.

    Pair-keyed entries repeat every n columns by construction, so the period check reads
    the ``periodic`` flag recorded when a table was unfolded from a zig-zag.
    """
    n = F.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    missing = [p for p in pairs if p not in F.entries]
    if missing:
        return FriezeReport(
            n, False, False, False, False, False, None,
            failures=[f"missing entry {p}" for p in missing],
        )
    failures = _relation_failures(F)
    relation_ok = not failures
    glide = [f"glide at ({i}, {j})" for i, j in pairs if i < j and F.entry(i, j) != F.entry(j, i)]
    bottom = [
        f"bottom row at ({i}, {_wrap(i - 1, n)})"
        for i in range(1, n + 1)
        if F.entry(i, i - 1) != F.side(i - 1)
    ]
    period_ok = F.metadata.get("periodic", True) is not False
    period = [] if period_ok else ["period: the source zig-zag did not return after n columns"]
    failures += glide + bottom + period
    values = list(F.entries.values())
    positive = all(is_positive_value(v) for v in values)
    flags = [is_integral_value(v) for v in values]
    integral = None if any(f is None for f in flags) else all(flags)
    ptolemy_ok = None
    if check_ptolemy:
        ptolemy = verify_ptolemy(F)
        ptolemy_ok = not ptolemy
        failures += ptolemy
    report = FriezeReport(
        n, relation_ok, not glide, not bottom, period_ok, positive, integral, ptolemy_ok, failures
    )
    logger.debug(f"Verified frieze n={n}: ok={report.ok}, {len(failures)} failures")
    return report


def cc_marking(T: Triangulation, v: int) -> Dict[int, int]:
    """Conway-Coxeter marking: 0 at ``v``, 1 at its neighbours, sums across triangles."""
    if not 1 <= v <= T.n:
        raise ValueError(f"Vertex {v} outside 1..{T.n}")
    labels: Dict[int, int] = {v: 0}
    for a, b in T.edges():
        if v in (a, b):
            labels[b if a == v else a] = 1
    pending = list(T.triangles())
    while pending:
        rest = []
        for face in pending:
            unknown = [u for u in face if u not in labels]
            if len(unknown) == 1:
                labels[unknown[0]] = sum(labels[u] for u in face if u != unknown[0])
            elif unknown:
                rest.append(face)
        if len(rest) == len(pending):
            break
        pending = rest
    return dict(sorted(labels.items()))


@dataclass
class Classification:
    """Positive-integer friezes of period n, by triangulations and by direct search."""

    n: int
    quiddities: List[Tuple[int, ...]]
    direct: Optional[List[Tuple[int, ...]]] = None

    @property
    def count(self) -> int:
        return len(self.quiddities)

    @property
    def agrees(self) -> Optional[bool]:
        if self.direct is None:
            return None
        return self.direct == self.quiddities and self.count == catalan(self.n - 2)


def search_quiddities(n: int) -> List[Tuple[int, ...]]:
    """Direct search for quiddity rows of positive-integer friezes of period n.

    Entries range over 1..n-2. Every window continuant of length at most n-3 must be
    positive and every window of length n-2 must equal 1.
    """
    bound = n - 2
    found: List[Tuple[int, ...]] = []

    def window_ok(length: int, value: int) -> bool:
        if length <= n - 3:
            return value > 0
        if length == n - 2:
            return value == 1
        return True

    def extend(prefix: List[int], windows: List[Tuple[int, int]]) -> None:
        if len(prefix) == n:
            row = prefix + prefix
            for s in range(n):
                for length in range(1, n - 1):
                    if not window_ok(length, continuant(row[s:s + length])):
                        return
            found.append(tuple(prefix))
            return
        for a in range(1, bound + 1):
            grown = [(k, a * k - before) for before, k in windows] + [(1, a)]
            if all(window_ok(len(grown) - s, k) for s, (_, k) in enumerate(grown)):
                extend(prefix + [a], grown)

    extend([], [])
    return sorted(found)


def classify_friezes(n: int, direct: Optional[bool] = None) -> Classification:
    """Quiddity rows of all positive-integer friezes of period n.

    Args:
        n: Period, 4..Config.MAX_POLYGON_SIZE
        direct: Run the direct search too; defaults to ``n <= Config.DIRECT_SEARCH_MAX_N``

    Raises:
        ValueError: If n is out of range
    """
    if n < 4:
        raise ValueError(f"classify_friezes needs n >= 4, got {n}")
    validate_size(n)
    quiddities = sorted({tuple(ear_counts(T)) for T in enumerate_triangulations(n)})
    if direct is None:
        direct = n <= Config.DIRECT_SEARCH_MAX_N
    searched = search_quiddities(n) if direct else None
    result = Classification(n, quiddities, searched)
    logger.info(f"Classified friezes of period {n}: {result.count} (direct search: {direct})")
    return result


def render_frieze(F: FriezeTable, periods: int = 2) -> str:
    """Staggered ASCII layout; row r starts r half-cells to the right.

    Entry ``(i, i + r + 1)`` sits between entries ``i`` and ``i + 1`` of the row above, so
    no glide shift needs choosing for odd n.
    """
    cells = [[str(normalize(v)) for v in F.row(r)] for r in range(F.n - 1)]
    width = max(len(c) for row in cells for c in row) + 1
    half = (width + 1) // 2
    lines = []
    for r, row in enumerate(cells):
        line = " " * (r * half) + "".join(c.rjust(2 * half) for c in row * periods)
        lines.append(line.rstrip())
    return "\n".join(lines)


def frieze_csv_rows(F: FriezeTable) -> List[List[str]]:
    return [[str(r)] + [str(normalize(v)) for v in F.row(r)] for r in range(F.n - 1)]
