"""Variant frieze recurrence on (n-2)-row tables.

Cells are keyed by ``(r, c)``: row r in 0..n-3 and an unbounded column c. Rows 0 and n-3
are all 1. Around a cell C in a middle row, with A above, E below, B left and D right,
the relation reads ``A E = B D - C``; tables are grown to the right with the sideways
form ``D = (A E + C) / B``.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exact import (
    LaurentPoly,
    divide,
    is_integral_value,
    is_positive_value,
    laurent_variables,
    normalize,
)
from .utils.config import Config
from .utils.errors import NotDivisible, RecurrenceDivisionError

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
Column = Tuple[int, ...]


@dataclass(frozen=True)
class DoubleZigzag:
    """A pair of adjacent cells in each middle row of an (n-2)-row table.

    ``starts[k]`` is the column of the left cell in row ``k + 1`` and ``values[k]`` the
    (left, right) values there. Consecutive starts differ by at most one.
    """

    n: int
    starts: Tuple[int, ...]
    values: Tuple[Tuple[Any, Any], ...]

    def __post_init__(self):
        """Check the shape against n."""
        if self.n < 5:
            raise ValueError(f"A double zig-zag needs n >= 5, got {self.n}")
        object.__setattr__(self, "starts", tuple(self.starts))
        object.__setattr__(self, "values", tuple(tuple(pair) for pair in self.values))
        middle = self.n - 4
        if len(self.starts) != middle or len(self.values) != middle:
            raise ValueError(
                f"Expected {middle} rows for n={self.n}, got {len(self.starts)} starts "
                f"and {len(self.values)} value pairs"
            )
        if any(len(pair) != 2 for pair in self.values):
            raise ValueError("Each row of a double zig-zag carries exactly two values")
        for above, below in zip(self.starts, self.starts[1:]):
            if abs(above - below) > 1:
                raise ValueError(
                    f"Rows starting at columns {above} and {below} are more than one apart"
                )

    @classmethod
    def straight(cls, n: int, values: Optional[Sequence[Sequence[Any]]] = None) -> "DoubleZigzag":
        """Columns 0 and 1 in every middle row, all ones unless ``values`` is given."""
        pairs = values if values is not None else [(1, 1)] * (n - 4)
        return cls(n, (0,) * (n - 4), tuple(tuple(p) for p in pairs))

    @classmethod
    def formal(cls, n: int, starts: Optional[Sequence[int]] = None) -> "DoubleZigzag":
        """Variables ``a{r}`` (left) and ``b{r}`` (right) for each middle row r."""
        names = [f"{side}{r}" for r in range(1, n - 3) for side in ("a", "b")]
        variables = laurent_variables(names)
        pairs = [(variables[2 * k], variables[2 * k + 1]) for k in range(n - 4)]
        return cls(n, tuple(starts) if starts is not None else (0,) * (n - 4), tuple(pairs))

    def cells(self) -> List[Tuple[Cell, Any]]:
        result = []
        for r, (start, (left, right)) in enumerate(zip(self.starts, self.values), start=1):
            result.append(((r, start), left))
            result.append(((r, start + 1), right))
        return result

    def shifted(self, columns: int) -> List[Cell]:
        return [(r, c + columns) for (r, c), _ in self.cells()]


@dataclass
class VariantTable:
    """Middle-row entries of a variant table; the boundary rows are implicit ones.

    The fundamental domain is the 2n columns starting at ``start``.
    """

    n: int
    entries: Dict[Cell, Any]
    start: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def height(self) -> int:
        return self.n - 2

    def is_boundary(self, r: int) -> bool:
        return r == 0 or r == self.n - 3

    def has(self, r: int, c: int) -> bool:
        return self.is_boundary(r) or (r, c) in self.entries

    def entry(self, r: int, c: int) -> Any:
        """Value at row r, column c.

        Raises:
            ValueError: If r is not a row of the table
            KeyError: If the cell was never computed
        """
        if not 0 <= r <= self.n - 3:
            raise ValueError(f"Row {r} outside 0..{self.n - 3}")
        if self.is_boundary(r):
            return 1
        return self.entries[(r, c)]

    def columns(self) -> range:
        return range(self.start, self.start + 2 * self.n)

    def row(self, r: int) -> List[Any]:
        return [self.entry(r, c) for c in self.columns()]

    def rows(self) -> List[List[Any]]:
        return [self.row(r) for r in range(self.height)]

    def column(self, c: int) -> Column:
        return tuple(self.entry(r, c) for r in range(1, self.n - 3))

    def with_entry(self, r: int, c: int, value: Any) -> "VariantTable":
        entries = dict(self.entries)
        entries[(r, c)] = value
        return VariantTable(self.n, entries, self.start, dict(self.metadata))

    def map_values(self, fn: Callable[[Any], Any]) -> "VariantTable":
        entries = {k: fn(v) for k, v in self.entries.items()}
        return VariantTable(self.n, entries, self.start, dict(self.metadata))

    def largest(self) -> Any:
        return max(self.entries.values())

    def __repr__(self) -> str:
        return f"VariantTable(n={self.n}, rows={self.height}, start={self.start})"


def variant_from_double_zigzag(dz: DoubleZigzag, width: Optional[int] = None) -> VariantTable:
    """Grow a table to the right of a double zig-zag with ``D = (A E + C) / B``.

    Columns are filled left to right; in a column, row r is computed once the column is at
    least two past the row's zig-zag pair. Computation stops ``width`` columns past the
    rightmost pair start (default 4n, enough to compare a full fundamental domain with its
    translate by 2n).

    Args:
        dz: Double zig-zag carrying rational or Laurent values
        width: Number of columns past ``max(dz.starts)`` to fill

    Raises:
        RecurrenceDivisionError: If a numeric division by zero occurs
        NotDivisible: If a Laurent division is not exact
    """
    n = dz.n
    width = width if width is not None else 4 * n
    top = max(dz.starts)
    values: Dict[Cell, Any] = {cell: normalize(v) for cell, v in dz.cells()}
    starts = dict(enumerate(dz.starts, start=1))

    def get(r: int, c: int) -> Any:
        if r == 0 or r == n - 3:
            return 1
        return values[(r, c)]

    for c in range(min(dz.starts) + 2, top + width):
        for r in range(1, n - 3):
            if c < starts[r] + 2:
                continue
            numerator = get(r - 1, c - 1) * get(r + 1, c - 1) + get(r, c - 1)
            try:
                values[(r, c)] = divide(numerator, get(r, c - 2))
            except ZeroDivisionError as exc:
                error_msg = f"Variant recurrence divides by zero at ({r}, {c})"
                logger.error(error_msg)
                raise RecurrenceDivisionError(error_msg, position=(r, c)) from exc
    logger.debug(f"Built variant table n={n} over {width} columns from starts {dz.starts}")
    return VariantTable(n, values, top, {"source": "double_zigzag", "starts": dz.starts})


@dataclass
class VariantReport:
    """Outcome of :func:`variant_verify`; failures are listed, never raised."""

    n: int
    relation_ok: bool
    period_ok: bool
    glide_ok: bool
    positive: bool
    integral: Optional[bool]
    minimal_period: Optional[int] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.relation_ok and self.period_ok and self.glide_ok

    @property
    def is_positive_integral(self) -> bool:
        return self.ok and self.positive and self.integral is True


def _shift_agrees(V: VariantTable, shift: int, flip: bool) -> Tuple[bool, List[str]]:
    """Compare each domain cell with the cell ``shift`` columns right (row-flipped if asked)."""
    failures = []
    compared = 0
    for r in range(1, V.n - 3):
        target = V.n - 3 - r if flip else r
        for c in V.columns():
            if not (V.has(r, c) and V.has(target, c + shift)):
                continue
            compared += 1
            if V.entry(r, c) != V.entry(target, c + shift):
                failures.append(f"({r}, {c}) vs ({target}, {c + shift})")
    if not compared:
        return False, [f"no cells available to compare at shift {shift}"]
    return not failures, failures


def variant_verify(V: VariantTable) -> VariantReport:
    """Check the relation at every stencil, period 2n, the glide reflection and positivity."""
    n = V.n
    failures = []
    relation_ok = True
    for (r, c), center in sorted(V.entries.items()):
        stencil = [(r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c)]
        if not all(V.has(*cell) for cell in stencil):
            continue
        lhs = V.entry(r - 1, c) * V.entry(r + 1, c)
        rhs = V.entry(r, c - 1) * V.entry(r, c + 1) - center
        if lhs != rhs:
            relation_ok = False
            failures.append(f"variant relation at ({r}, {c})")
    period_ok, missed = _shift_agrees(V, 2 * n, flip=False)
    failures += [f"period: {m}" for m in missed]
    glide_ok, missed = _shift_agrees(V, n, flip=True)
    failures += [f"glide: {m}" for m in missed]
    minimal = None
    if period_ok:
        minimal = next(p for p in range(1, 2 * n + 1) if _shift_agrees(V, p, flip=False)[0])
    positive = all(is_positive_value(v) for v in V.entries.values())
    flags = [is_integral_value(v) for v in V.entries.values()]
    integral = None if any(f is None for f in flags) else all(flags)
    if failures:
        logger.debug(f"Variant table n={n} failed {len(failures)} checks")
    return VariantReport(n, relation_ok, period_ok, glide_ok, positive, integral, minimal, failures)


def render_variant(V: VariantTable, periods: int = 1) -> str:
    """Square ASCII layout over ``periods`` fundamental domains."""
    columns = range(V.start, V.start + 2 * V.n * periods)
    cells = [[str(normalize(V.entry(r, c))) for c in columns] for r in range(V.height)]
    width = max(len(s) for row in cells for s in row) + 1
    return "\n".join("".join(s.rjust(width) for s in row).rstrip() for row in cells)


def variant_csv_rows(V: VariantTable) -> List[List[str]]:
    return [[str(r)] + [str(normalize(v)) for v in V.row(r)] for r in range(V.height)]


def _congruent(a: int, b: int, m: int, bound: int) -> Iterator[int]:
    """Values x in 1..bound with ``a x = b (mod m)``."""
    g = gcd(a, m)
    if b % g:
        return
    step = m // g
    x = (b // g) * pow(a // g, -1, step) % step if step > 1 else 0
    yield from range(x if x >= 1 else step, bound + 1, step)


def _propagate_integral(n: int, rows: Sequence[Tuple[int, int]]) -> Optional[List[Column]]:
    """Integer columns 0..2n-1 grown from a straight double zig-zag, or None on a fraction."""
    middle = n - 4
    grid = [[1] * (2 * n) for _ in range(n - 2)]
    for r, (left, right) in enumerate(rows, start=1):
        grid[r][0], grid[r][1] = left, right
    for c in range(2, 2 * n):
        for r in range(1, middle + 1):
            numerator = grid[r - 1][c - 1] * grid[r + 1][c - 1] + grid[r][c - 1]
            q, rem = divmod(numerator, grid[r][c - 2])
            if rem:
                return None
            grid[r][c] = q
    return [tuple(grid[r][c] for r in range(1, middle + 1)) for c in range(2 * n)]


def _canonical(columns: Sequence[Column], mirror: bool) -> Tuple[Column, ...]:
    """Least rotation of the column cycle, reversals included when ``mirror`` is set."""
    cycles = [list(columns)]
    if mirror:
        cycles.append(list(reversed(columns)))
    return min(tuple(cycle[k:] + cycle[:k]) for cycle in cycles for k in range(len(cycle)))


def _search_first(n: int, bound: int, first: int) -> Tuple[int, List[Tuple[Column, ...]]]:
    """Straight zig-zags with ``V[1][0] == first`` whose period is integral.

    Rows are chosen top to bottom. Picking row r + 1 fixes the integrality of row r at
    columns -1 and 2, each a linear congruence in one of the new values.
    """
    middle = n - 4
    found: List[Tuple[Column, ...]] = []
    candidates = 0

    def closes(rows: List[Tuple[int, int]]) -> bool:
        left, right = rows[-1]
        above_left, above_right = rows[-2] if len(rows) > 1 else (1, 1)
        return (above_left + left) % right == 0 and (above_right + right) % left == 0

    def extend(rows: List[Tuple[int, int]]) -> None:
        nonlocal candidates
        if len(rows) == middle:
            if not closes(rows):
                return
            candidates += 1
            columns = _propagate_integral(n, rows)
            if columns is not None:
                found.append(tuple(columns))
            return
        left, right = rows[-1]
        above_left, above_right = rows[-2] if len(rows) > 1 else (1, 1)
        for below_left in _congruent(above_left, -left, right, bound):
            for below_right in _congruent(above_right, -right, left, bound):
                extend(rows + [(below_left, below_right)])

    for right in range(1, bound + 1):
        extend([(first, right)])
    return candidates, found


@dataclass
class VariantEnumeration:
    """Positive-integer variant tables found under a zig-zag value bound."""

    n: int
    bound: int
    tables: List[VariantTable]
    mirror: bool = False
    candidates: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.tables)

    @property
    def largest_entry(self) -> int:
        return max((V.largest() for V in self.tables), default=1)


def variant_enumerate(
    n: int, bound: int, mirror: bool = False, workers: int = 1
) -> VariantEnumeration:
    """All positive-integer variant tables with a straight zig-zag valued in 1..bound.

    Tables are counted up to horizontal translation; the glide reflection maps each table
    to one of its own translates. With ``mirror`` the left-right reflection is quotiented
    out as well. The search splits over the first zig-zag value, across processes when
    ``workers > 1``; results are merged in a fixed order.

    Raises:
        ValueError: If n or bound is out of range
    """
    if not Config.validate_variant_n(n):
        raise ValueError(
            f"Variant enumeration supports n in "
            f"{Config.VARIANT_MIN_N}..{Config.VARIANT_MAX_N}, got {n}"
        )
    if bound < 1:
        raise ValueError(f"Bound must be positive, got {bound}")
    firsts = list(range(1, bound + 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_first, [n] * bound, [bound] * bound, firsts))
    else:
        parts = [_search_first(n, bound, first) for first in firsts]
    keys = set()
    candidates = 0
    for tried, found in parts:
        candidates += tried
        keys.update(_canonical(columns, mirror) for columns in found)
    tables = []
    for key in sorted(keys):
        first, second = key[0], key[1]
        dz = DoubleZigzag.straight(n, list(zip(first, second)))
        V = variant_from_double_zigzag(dz)
        if variant_verify(V).is_positive_integral:
            tables.append(V)
        else:
            logger.warning(f"Discarded a candidate table for n={n} that failed verification")
    logger.info(f"n={n}, bound={bound}: {len(tables)} variant tables from {candidates} candidates")
    return VariantEnumeration(n, bound, tables, mirror, candidates, {"rigorous": False})


def variant_enumerate_auto(
    n: int,
    mirror: bool = False,
    start_bound: Optional[int] = None,
    workers: int = 1,
    max_rounds: int = 4,
) -> VariantEnumeration:
    """Enumerate with a doubling bound until the count stops changing.

    The starting bound is twice the largest entry found at n - 1 (``VARIANT_START_BOUND``
    at the smallest n). ``metadata`` records each bound tried, its count and whether the
    last doubling left the count unchanged. Stability is evidence, not a completeness proof.
    """
    if start_bound is None:
        if n <= Config.VARIANT_MIN_N:
            start_bound = Config.VARIANT_START_BOUND
        else:
            previous = variant_enumerate_auto(n - 1, mirror, None, workers, max_rounds)
            start_bound = 2 * previous.largest_entry
    result = variant_enumerate(n, start_bound, mirror, workers)
    history = [(result.bound, result.count)]
    stable = False
    for _ in range(max_rounds):
        doubled = variant_enumerate(n, 2 * result.bound, mirror, workers)
        history.append((doubled.bound, doubled.count))
        stable = doubled.count == result.count
        result = doubled
        if stable:
            break
    if not stable:
        logger.warning(f"Variant count for n={n} still changing at bound {result.bound}")
    result.metadata.update({"bounds": history, "stable": stable})
    return result


@dataclass
class SymbolicReport:
    """Experimental evidence from a formal double zig-zag; never a proof."""

    n: int
    laurent: bool
    positive: bool
    period_ok: bool
    glide_ok: bool
    table: Optional[VariantTable] = None
    failure: Optional[str] = None

    @property
    def evidence(self) -> bool:
        return self.laurent and self.positive and self.period_ok and self.glide_ok


def variant_symbolic(n: int, starts: Optional[Sequence[int]] = None) -> SymbolicReport:
    """Propagate formal weights far enough to see the zig-zag come back after 2n columns.

    A non-exact Laurent division is reported as a finding rather than raised.

    Raises:
        ValueError: If n exceeds ``Config.SYMBOLIC_VARIANT_MAX_N``
    """
    if not Config.VARIANT_MIN_N <= n <= Config.SYMBOLIC_VARIANT_MAX_N:
        raise ValueError(
            f"Symbolic runs support n in "
            f"{Config.VARIANT_MIN_N}..{Config.SYMBOLIC_VARIANT_MAX_N}, got {n}"
        )
    dz = DoubleZigzag.formal(n, starts)
    try:
        V = variant_from_double_zigzag(dz, width=2 * n + 2)
    except NotDivisible as exc:
        logger.warning(f"Symbolic variant table n={n} left the Laurent ring: {exc}")
        return SymbolicReport(n, False, False, False, False, failure=str(exc))
    report = variant_verify(V)
    laurent = all(isinstance(v, LaurentPoly) for v in V.entries.values())
    result = SymbolicReport(n, laurent, report.positive, report.period_ok, report.glide_ok, V)
    logger.info(
        f"Symbolic variant n={n}: laurent={laurent} positive={report.positive} "
        f"period={report.period_ok}"
    )
    return result
