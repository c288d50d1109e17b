"""
JSON wire formats.

Polynomials, operators, matrices and multiplier data travel as pydantic
documents whose rationals are "p/q" strings. Every document converts to and
from the exact in-memory type; validation failures keep pydantic's field
locations so the CLI can point at the offending entry.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, List, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import InputFormatError
from .polycore import GaussianMatrix, GaussRat, MultiPoly, format_rational, parse_rational
from .weylalg import MultiplierData, WeylOp

Doc = TypeVar("Doc", bound=BaseModel)


def _rational_text(value: Any) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValueError("rationals are written as integers or 'p/q' strings")
    try:
        q = parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {value!r}") from exc
    return format_rational(q)


def gauss_pair(c: GaussRat) -> Tuple[str, str]:
    """[re, im] string pair used inside verdicts and reports."""
    return format_rational(c.re), format_rational(c.im)


def rational_string(q: Fraction) -> str:
    return format_rational(Fraction(q))


class _Exact(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# ══════════════════════════════════════════════════════════════════════════════
#  POLYNOMIALS
# ══════════════════════════════════════════════════════════════════════════════

class TermDocument(_Exact):
    exp: List[int]
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im", mode="before")
    @classmethod
    def _rationals(cls, v: Any) -> str:
        return _rational_text(v)

    @field_validator("exp")
    @classmethod
    def _nonnegative(cls, v: List[int]) -> List[int]:
        if any(e < 0 for e in v):
            raise ValueError("exponents must be nonnegative")
        return v

    def coefficient(self) -> GaussRat:
        return GaussRat(self.re, self.im)


class PolyDocument(_Exact):
    nvars: int = Field(ge=0)
    terms: List[TermDocument] = Field(default_factory=list)

    @model_validator(mode="after")
    def _arity(self) -> "PolyDocument":
        for k, term in enumerate(self.terms):
            if len(term.exp) != self.nvars:
                raise ValueError(f"terms.{k}.exp has {len(term.exp)} entries, expected {self.nvars}")
        return self

    @classmethod
    def from_poly(cls, f: MultiPoly) -> "PolyDocument":
        return cls(
            nvars=f.nvars,
            terms=[
                TermDocument(exp=list(e), re=format_rational(c.re), im=format_rational(c.im))
                for e, c in f
            ],
        )

    def to_poly(self) -> MultiPoly:
        return MultiPoly(self.nvars, [(t.exp, t.coefficient()) for t in self.terms])


# ══════════════════════════════════════════════════════════════════════════════
#  OPERATORS
# ══════════════════════════════════════════════════════════════════════════════

class OperatorTermDocument(_Exact):
    zexp: List[int]
    dexp: List[int]
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im", mode="before")
    @classmethod
    def _rationals(cls, v: Any) -> str:
        return _rational_text(v)

    @field_validator("zexp", "dexp")
    @classmethod
    def _nonnegative(cls, v: List[int]) -> List[int]:
        if any(e < 0 for e in v):
            raise ValueError("exponents must be nonnegative")
        return v


class OperatorDocument(_Exact):
    nvars: int = Field(ge=1)
    terms: List[OperatorTermDocument] = Field(default_factory=list)

    @model_validator(mode="after")
    def _arity(self) -> "OperatorDocument":
        for k, term in enumerate(self.terms):
            if len(term.zexp) != self.nvars or len(term.dexp) != self.nvars:
                raise ValueError(f"terms.{k} exponents must have {self.nvars} entries")
        return self

    @classmethod
    def from_op(cls, T: WeylOp) -> "OperatorDocument":
        return cls(
            nvars=T.nvars,
            terms=[
                OperatorTermDocument(
                    zexp=list(a), dexp=list(b), re=format_rational(c.re), im=format_rational(c.im)
                )
                for (a, b), c in T
            ],
        )

    def to_op(self) -> WeylOp:
        return WeylOp(
            self.nvars,
            [((t.zexp, t.dexp), GaussRat(t.re, t.im)) for t in self.terms],
        )


# ══════════════════════════════════════════════════════════════════════════════
#  MATRICES
# ══════════════════════════════════════════════════════════════════════════════

class EntryDocument(_Exact):
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im", mode="before")
    @classmethod
    def _rationals(cls, v: Any) -> str:
        return _rational_text(v)


Entry = Union[str, int, EntryDocument]


class MatrixDocument(_Exact):
    """Row-major square matrix; each entry is "p/q" or {"re": ..., "im": ...}."""

    order: int = Field(ge=1)
    entries: List[List[Entry]]

    @model_validator(mode="after")
    def _square(self) -> "MatrixDocument":
        if len(self.entries) != self.order:
            raise ValueError(f"entries has {len(self.entries)} rows, expected {self.order}")
        for i, row in enumerate(self.entries):
            if len(row) != self.order:
                raise ValueError(f"entries.{i} has {len(row)} columns, expected {self.order}")
            for j, x in enumerate(row):
                if not isinstance(x, EntryDocument):
                    try:
                        _rational_text(x)
                    except ValueError as exc:
                        raise ValueError(f"entries.{i}.{j}: {exc}") from exc
        return self

    @classmethod
    def from_matrix(cls, A: GaussianMatrix) -> "MatrixDocument":
        def entry(c: GaussRat) -> Entry:
            if c.is_real:
                return format_rational(c.re)
            return EntryDocument(re=format_rational(c.re), im=format_rational(c.im))

        return cls(order=A.order, entries=[[entry(c) for c in row] for row in A.rows])

    def to_matrix(self) -> GaussianMatrix:
        def value(x: Entry) -> GaussRat:
            if isinstance(x, EntryDocument):
                return GaussRat(x.re, x.im)
            return GaussRat(parse_rational(x))

        return GaussianMatrix([[value(x) for x in row] for row in self.entries])


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIPLIER DATA
# ══════════════════════════════════════════════════════════════════════════════

class MultiplierValueDocument(_Exact):
    exp: List[int]
    value: str

    @field_validator("value", mode="before")
    @classmethod
    def _rational(cls, v: Any) -> str:
        return _rational_text(v)


class MultiplierDocument(_Exact):
    """Sequence values on a box; points that are not listed are zero."""

    nvars: int = Field(ge=1)
    box: List[int]
    values: List[MultiplierValueDocument] = Field(default_factory=list)

    @model_validator(mode="after")
    def _inside_box(self) -> "MultiplierDocument":
        if len(self.box) != self.nvars or any(b < 0 for b in self.box):
            raise ValueError(f"box must list {self.nvars} nonnegative edges")
        for k, item in enumerate(self.values):
            if len(item.exp) != self.nvars or any(
                not 0 <= e <= b for e, b in zip(item.exp, self.box)
            ):
                raise ValueError(f"values.{k}.exp lies outside the box")
        return self

    @classmethod
    def from_data(cls, lam: MultiplierData) -> "MultiplierDocument":
        return cls(
            nvars=lam.nvars,
            box=list(lam.box),
            values=[
                MultiplierValueDocument(exp=list(a), value=format_rational(lam(a)))
                for a in lam.support()
            ],
        )

    def to_data(self) -> MultiplierData:
        return MultiplierData(self.box, {tuple(v.exp): v.value for v in self.values})


# ══════════════════════════════════════════════════════════════════════════════
#  PARSING
# ══════════════════════════════════════════════════════════════════════════════

def _location(error: dict) -> str:
    return ".".join(str(part) for part in error.get("loc", ())) or "<root>"


def parse_document(model: Type[Doc], text: str, source: str = "<input>") -> Doc:
    """Parse JSON text into `model`, mapping every failure to InputFormatError."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from exc
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise InputFormatError(first["msg"], f"{source}:{_location(first)}") from exc


def read_poly(text: str, source: str = "<input>") -> MultiPoly:
    return parse_document(PolyDocument, text, source).to_poly()


def read_operator(text: str, source: str = "<input>") -> WeylOp:
    return parse_document(OperatorDocument, text, source).to_op()


def read_matrix(text: str, source: str = "<input>") -> GaussianMatrix:
    return parse_document(MatrixDocument, text, source).to_matrix()


def read_multiplier(text: str, source: str = "<input>") -> MultiplierData:
    return parse_document(MultiplierDocument, text, source).to_data()
