"""JSON models for friezelab results.

Integers and rationals are written as decimal strings (``"37666"``, ``"-3/2"``) so no
consumer loses precision. Laurent polynomials are written as variable names plus a term
list and parse back to an equal :class:`LaurentPoly`.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from .exact import LaurentPoly, Mat2, normalize
from .frieze import FriezeReport, FriezeTable
from .markoff import ExchangeNode
from .polygon import Triangulation
from .tropical import Lamination
from .variant import SymbolicReport, VariantEnumeration, VariantReport, VariantTable


def encode_number(value: Any) -> str:
    return str(normalize(value))


def decode_number(text: str) -> Union[int, Fraction]:
    return normalize(Fraction(text))


class TermModel(BaseModel):
    exp: List[int]
    coeff: str


class LaurentPolyModel(BaseModel):
    """A Laurent polynomial as ``vars`` and terms in graded lexicographic order."""

    vars: List[str]
    terms: List[TermModel] = Field(default_factory=list)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "LaurentPolyModel":
        terms = [TermModel(exp=list(e), coeff=str(c)) for e, c in p.terms()]
        return cls(vars=list(p.names), terms=terms)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(self.vars, {tuple(t.exp): int(t.coeff) for t in self.terms})


Value = Union[str, LaurentPolyModel]


def encode_value(value: Any) -> Value:
    """Decimal string for rationals, a model for Laurent polynomials."""
    if isinstance(value, LaurentPoly):
        return LaurentPolyModel.from_poly(value)
    return encode_number(value)


def decode_value(value: Value) -> Any:
    if isinstance(value, LaurentPolyModel):
        return value.to_poly()
    return decode_number(value)


class TriangulationModel(BaseModel):
    n: int
    diagonals: List[Tuple[int, int]]

    @classmethod
    def from_triangulation(cls, T: Triangulation) -> "TriangulationModel":
        return cls(n=T.n, diagonals=T.sorted_diagonals())

    def to_triangulation(self) -> Triangulation:
        return Triangulation.from_pairs(self.n, self.diagonals)


class EntryModel(BaseModel):
    i: int
    j: int
    value: Value


class FriezeTableModel(BaseModel):
    """Every ordered pair entry plus the rows for readers who want the picture."""

    n: int
    source: Optional[str] = None
    rows: List[List[Value]]
    entries: List[EntryModel]

    @classmethod
    def from_table(cls, F: FriezeTable) -> "FriezeTableModel":
        rows = [[encode_value(v) for v in F.row(r)] for r in range(F.n - 1)]
        entries = [
            EntryModel(i=i, j=j, value=encode_value(v)) for (i, j), v in sorted(F.entries.items())
        ]
        return cls(n=F.n, source=F.metadata.get("source"), rows=rows, entries=entries)

    def to_table(self) -> FriezeTable:
        entries = {(e.i, e.j): decode_value(e.value) for e in self.entries}
        return FriezeTable(self.n, entries, {"source": self.source} if self.source else {})


class ReportModel(BaseModel):
    """Named boolean checks plus failure positions."""

    ok: bool
    checks: Dict[str, Optional[bool]]
    failures: List[str] = Field(default_factory=list)

    @classmethod
    def from_frieze_report(cls, report: FriezeReport) -> "ReportModel":
        checks = {
            "relation": report.relation_ok,
            "glide": report.glide_ok,
            "boundary": report.boundary_ok,
            "period": report.period_ok,
            "positive": report.positive,
            "integral": report.integral,
            "ptolemy": report.ptolemy_ok,
        }
        return cls(ok=report.ok, checks=checks, failures=report.failures)

    @classmethod
    def from_variant_report(cls, report: VariantReport) -> "ReportModel":
        checks = {
            "relation": report.relation_ok,
            "period": report.period_ok,
            "glide": report.glide_ok,
            "positive": report.positive,
            "integral": report.integral,
        }
        return cls(ok=report.ok, checks=checks, failures=report.failures)


class ArcModel(BaseModel):
    """An arc by its two gaps; the weight may be given as a number or a decimal string."""

    gaps: Tuple[int, int]
    weight: str = "1"

    @field_validator("weight", mode="before")
    @classmethod
    def canonical_weight(cls, value: Union[int, str]) -> str:
        return encode_number(decode_number(str(value)))


class LaminationModel(BaseModel):
    n: int
    arcs: List[ArcModel]

    @classmethod
    def from_lamination(cls, L: Lamination) -> "LaminationModel":
        arcs = [ArcModel(gaps=a.gaps, weight=encode_number(a.weight)) for a in L.arcs]
        return cls(n=L.n, arcs=arcs)

    def to_lamination(self) -> Lamination:
        return Lamination.from_pairs(
            self.n, [a.gaps for a in self.arcs], [decode_number(a.weight) for a in self.arcs]
        )


class ExchangeNodeModel(BaseModel):
    values: List[Value]
    slot: Optional[int] = None
    depth: int = 0
    flags: Dict[str, Any] = Field(default_factory=dict)
    children: List["ExchangeNodeModel"] = Field(default_factory=list)

    @classmethod
    def from_node(cls, node: ExchangeNode) -> "ExchangeNodeModel":
        return cls(
            values=[encode_value(v) for v in node.values],
            slot=node.slot,
            depth=node.depth,
            flags=dict(node.flags),
            children=[cls.from_node(child) for child in node.children],
        )


class MatrixModel(BaseModel):
    rows: List[List[str]]

    @classmethod
    def from_mat2(cls, m: Mat2) -> "MatrixModel":
        return cls(rows=[[str(v) for v in row] for row in m.rows()])


class SnakeReportModel(BaseModel):
    """Matching counts of one snake graph under every model."""

    code: str
    values: Dict[str, str]
    agree: bool

    @classmethod
    def from_values(cls, code: str, values: Dict[str, int]) -> "SnakeReportModel":
        encoded = {name: str(v) for name, v in values.items()}
        return cls(code=code, values=encoded, agree=len(set(values.values())) == 1)


class VariantTableModel(BaseModel):
    n: int
    start: int
    rows: List[List[Value]]

    @classmethod
    def from_table(cls, V: VariantTable) -> "VariantTableModel":
        rows = [[encode_value(v) for v in V.row(r)] for r in range(V.height)]
        return cls(n=V.n, start=V.start, rows=rows)


class VariantEnumerationModel(BaseModel):
    n: int
    bound: int
    count: int
    mirror: bool
    rigorous: bool = False
    stable: Optional[bool] = None
    bounds: List[Tuple[int, int]] = Field(default_factory=list)
    tables: List[VariantTableModel] = Field(default_factory=list)

    @classmethod
    def from_enumeration(
        cls, result: VariantEnumeration, with_tables: bool = False
    ) -> "VariantEnumerationModel":
        return cls(
            n=result.n,
            bound=result.bound,
            count=result.count,
            mirror=result.mirror,
            stable=result.metadata.get("stable"),
            bounds=result.metadata.get("bounds", []),
            tables=[VariantTableModel.from_table(V) for V in result.tables] if with_tables else [],
        )


class SymbolicReportModel(BaseModel):
    n: int
    laurent: bool
    positive: bool
    period: bool
    glide: bool
    failure: Optional[str] = None

    @classmethod
    def from_report(cls, report: SymbolicReport) -> "SymbolicReportModel":
        return cls(
            n=report.n,
            laurent=report.laurent,
            positive=report.positive,
            period=report.period_ok,
            glide=report.glide_ok,
            failure=report.failure,
        )


ExchangeNodeModel.model_rebuild()
