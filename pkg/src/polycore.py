"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                         EXACT POLYNOMIAL ARITHMETIC                           ║
║                                                                               ║
║  Gaussian-rational scalars, sparse multivariate and dense univariate          ║
║  polynomials, and the structural transforms (restriction to lines,            ║
║  homogenization, variable scaling) the deciders are built on.                 ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import sympy

from .errors import DimensionError, NonRealError, NotExactError, ZeroPolynomialError

Exponent = Tuple[int, ...]
RationalLike = Union[int, Fraction, str]


# ══════════════════════════════════════════════════════════════════════════════
#  RATIONAL HELPERS
# ══════════════════════════════════════════════════════════════════════════════

def parse_rational(value: RationalLike) -> Fraction:
    """Read an int, Fraction or "p/q" string as an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" (the wire format)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_ZERO_Q = Fraction(0)
_ONE_Q = Fraction(1)


def rational_to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def rational_from_sympy(value) -> Fraction:
    """Exact Fraction from a sympy number; anything irrational raises NotExactError."""
    value = sympy.sympify(value)
    if not value.is_Rational:
        raise NotExactError(f"{value} is not rational")
    return Fraction(int(value.p), int(value.q))


def sympy_gens(nvars: int) -> Tuple[sympy.Symbol, ...]:
    """Generators z1..zn used when polynomials cross into sympy."""
    return tuple(sympy.Symbol(f"z{i + 1}") for i in range(nvars))


# ══════════════════════════════════════════════════════════════════════════════
#  GAUSSIAN RATIONALS
# ══════════════════════════════════════════════════════════════════════════════

class GaussRat:
    """Exact complex number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = parse_rational(re)
        self.im = parse_rational(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussRat":
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value: "Scalar") -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return cls._raw(parse_rational(value), _ZERO_Q)

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def real_value(self) -> Fraction:
        """The real part, insisting the imaginary part vanishes."""
        if self.im:
            raise NonRealError(f"{self} is not real")
        return self.re

    def to_sympy(self) -> sympy.Expr:
        return rational_to_sympy(self.re) + rational_to_sympy(self.im) * sympy.I

    @classmethod
    def from_sympy(cls, value) -> "GaussRat":
        re, im = sympy.expand(value).as_real_imag()
        return cls._raw(rational_from_sympy(re), rational_from_sympy(im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> "GaussRat":
        return GaussRat._raw(-self.re, -self.im)

    def __add__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat._raw(self.re * o.re, _ZERO_Q)
        return GaussRat._raw(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not o.im:
            return GaussRat._raw(self.re / o.re, self.im / o.re)
        norm = o.re * o.re + o.im * o.im
        return GaussRat._raw(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other: "Scalar") -> "GaussRat":
        o = _maybe_coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "GaussRat":
        if k < 0:
            return ONE / (self ** -k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussRat({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        imag = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_rational(self.im)}i"
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{format_rational(self.re)}{sign}{imag}"


Scalar = Union[int, Fraction, str, GaussRat]


def _maybe_coerce(value: object) -> Optional[GaussRat]:
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussRat._raw(Fraction(value), _ZERO_Q)
    return None


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [_ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


# ══════════════════════════════════════════════════════════════════════════════
#  UNIVARIATE POLYNOMIALS
# ══════════════════════════════════════════════════════════════════════════════

class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [GaussRat.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[GaussRat, ...] = tuple(cs)

    @classmethod
    def from_real(cls, coeffs: Iterable[Fraction]) -> "UniPoly":
        return cls(GaussRat._raw(Fraction(c), _ZERO_Q) for c in coeffs)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lead: Scalar = 1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-GaussRat.coerce(r), ONE])
        return p

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> GaussRat:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    def real_coefficients(self) -> List[Fraction]:
        """Coefficients as Fractions; raises when any imaginary part is nonzero."""
        return [c.real_value() for c in self.coeffs]

    def real_part(self) -> "UniPoly":
        return UniPoly.from_real(c.re for c in self.coeffs)

    def imag_part(self) -> "UniPoly":
        return UniPoly.from_real(c.im for c in self.coeffs)

    def conjugate(self) -> "UniPoly":
        return UniPoly(c.conjugate() for c in self.coeffs)

    def __call__(self, x: Scalar) -> GaussRat:
        x = GaussRat.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        o = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = o.coeffs + (ZERO,) * (n - len(o.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        o = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "UniPoly":
        return UniPoly([other]) - self

    def __mul__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = GaussRat.coerce(other)
            return UniPoly(x * c for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_multi(self, nvars: int = 1, var: int = 0) -> "MultiPoly":
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                exp = [0] * nvars
                exp[var] = k
                terms[tuple(exp)] = c
        return MultiPoly._from_clean(nvars, terms)

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return str(self.to_multi()).replace("z1", "t")


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIVARIATE POLYNOMIALS
# ══════════════════════════════════════════════════════════════════════════════

class Term(NamedTuple):
    exponent: Exponent
    coefficient: GaussRat


class MultiPoly:
    """
    Sparse polynomial in `nvars` variables over the Gaussian rationals.

    Terms map exponent tuples to nonzero coefficients. Instances are treated
    as immutable: every operation returns a new polynomial. The zero
    polynomial is the empty term map and has degree -1.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(
        self,
        nvars: int,
        terms: Union[Mapping[Exponent, Scalar], Iterable[Tuple[Sequence[int], Scalar]]] = (),
    ):
        if nvars < 0:
            raise DimensionError("variable count must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Exponent, GaussRat] = {}
        for exp, coeff in items:
            key = tuple(int(e) for e in exp)
            if len(key) != nvars:
                raise DimensionError(f"exponent {key} does not have {nvars} entries")
            if any(e < 0 for e in key):
                raise DimensionError(f"negative exponent in {key}")
            value = clean.get(key, ZERO) + GaussRat.coerce(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.nvars = nvars
        self._terms = clean

    @classmethod
    def _from_clean(cls, nvars: int, terms: Dict[Exponent, GaussRat]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    # ── constructors ─────────────────────────────────────────────────────────

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._from_clean(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "MultiPoly":
        c = GaussRat.coerce(c)
        return cls._from_clean(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(nvars, ONE)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._from_clean(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variables(cls, nvars: int) -> List["MultiPoly"]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    # ── inspection ───────────────────────────────────────────────────────────

    @property
    def terms(self) -> Mapping[Exponent, GaussRat]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, GaussRat]]:
        return iter(sorted(self._terms.items()))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        self._check_var(var)
        return max((e[var] for e in self._terms), default=-1)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> GaussRat:
        return self._terms.get(tuple(exponent), ZERO)

    def constant_term(self) -> GaussRat:
        return self.coefficient((0,) * self.nvars)

    def active_variables(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.nvars) if any(e[i] for e in self._terms))

    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    def is_multi_affine(self) -> bool:
        return all(max(e, default=0) <= 1 for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # ── ring operations ──────────────────────────────────────────────────────

    def _check_var(self, var: int) -> None:
        if not 0 <= var < self.nvars:
            raise DimensionError(f"variable index {var} out of range for {self.nvars} variables")

    def _lift(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"operands live in {self.nvars} and {other.nvars} variables"
                )
            return other
        return MultiPoly.constant(self.nvars, other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._from_clean(self.nvars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        o = self._lift(other)
        out = dict(self._terms)
        for e, c in o._terms.items():
            value = out.get(e, ZERO) + c
            if value:
                out[e] = value
            else:
                out.pop(e, None)
        return MultiPoly._from_clean(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Scalar) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        o = self._lift(other)
        out: Dict[Exponent, GaussRat] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, ZERO) + c1 * c2
        return MultiPoly._from_clean(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MultiPoly":
        c = GaussRat.coerce(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._from_clean(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = MultiPoly.one(self.nvars), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussRat)) and not isinstance(other, bool):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """
        Quotient of an exact division, by lexicographic leading terms.

        Raises NotExactError when the division leaves a remainder.
        """
        d = self._lift(divisor)
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp = max(d._terms)
        lead_c = d._terms[lead_exp]
        rem = dict(self._terms)
        quot: Dict[Exponent, GaussRat] = {}
        while rem:
            top = max(rem)
            if any(a < b for a, b in zip(top, lead_exp)):
                raise NotExactError("polynomial division is not exact")
            q_exp = tuple(a - b for a, b in zip(top, lead_exp))
            q_c = rem[top] / lead_c
            quot[q_exp] = q_c
            for de, dc in d._terms.items():
                key = tuple(a + b for a, b in zip(q_exp, de))
                value = rem.get(key, ZERO) - q_c * dc
                if value:
                    rem[key] = value
                else:
                    rem.pop(key, None)
        return MultiPoly._from_clean(self.nvars, quot)

    # ── calculus and substitution ────────────────────────────────────────────

    def derivative(self, var: int, k: int = 1) -> "MultiPoly":
        self._check_var(var)
        out = {}
        for e, c in self._terms.items():
            if e[var] < k:
                continue
            falling = math.perm(e[var], k)
            key = e[:var] + (e[var] - k,) + e[var + 1:]
            out[key] = c * falling
        return MultiPoly._from_clean(self.nvars, out)

    def substitute_constant(self, var: int, c: Scalar) -> "MultiPoly":
        """Set z_var = c; the result lives in the remaining nvars - 1 variables."""
        self._check_var(var)
        c = GaussRat.coerce(c)
        out: Dict[Exponent, GaussRat] = {}
        for e, coeff in self._terms.items():
            key = e[:var] + e[var + 1:]
            out[key] = out.get(key, ZERO) + coeff * (c ** e[var])
        return MultiPoly._from_clean(self.nvars - 1, {e: v for e, v in out.items() if v})

    def evaluate(self, point: Sequence[Scalar]) -> GaussRat:
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, need {self.nvars}")
        pt = [GaussRat.coerce(x) for x in point]
        powers: List[Dict[int, GaussRat]] = [{0: ONE} for _ in pt]
        total = ZERO
        for e, c in self._terms.items():
            value = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = pt[i] ** k
                    value = value * cache[k]
            total = total + value
        return total

    __call__ = evaluate

    def compose(self, polys: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute z_i -> polys[i]; all substitutes share one variable count."""
        if len(polys) != self.nvars:
            raise DimensionError(f"need {self.nvars} substitutes, got {len(polys)}")
        if not polys:
            return MultiPoly._from_clean(0, dict(self._terms))
        m = polys[0].nvars
        if any(p.nvars != m for p in polys):
            raise DimensionError("substitutes live in different variable counts")
        powers: List[Dict[int, MultiPoly]] = [{0: MultiPoly.one(m)} for _ in polys]
        total = MultiPoly.zero(m)
        for e, c in self._terms.items():
            value = MultiPoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = polys[i] ** k
                    value = value * cache[k]
            total = total + value
        return total

    def restrict_to_line(self, alpha: Sequence[RationalLike], v: Sequence[RationalLike]) -> UniPoly:
        """The univariate polynomial t -> f(alpha + v t) for real alpha, v."""
        if len(alpha) != self.nvars or len(v) != self.nvars:
            raise DimensionError(
                f"line data of lengths {len(alpha)}, {len(v)} for {self.nvars} variables"
            )
        base = [_real_scalar(a) for a in alpha]
        direction = [_real_scalar(b) for b in v]
        powers: List[List[List[Fraction]]] = []
        for i in range(self.nvars):
            seq = [[_ONE_Q]]
            linear = [base[i], direction[i]]
            for _ in range(max(self.degree_in(i), 0)):
                seq.append(_convolve(seq[-1], linear))
            powers.append(seq)
        size = max(self.degree(), 0) + 1
        re = [_ZERO_Q] * size
        im = [_ZERO_Q] * size
        for e, c in self._terms.items():
            prod: List[Fraction] = [_ONE_Q]
            for i, k in enumerate(e):
                if k:
                    prod = _convolve(prod, powers[i][k])
            for j, x in enumerate(prod):
                if x:
                    if c.re:
                        re[j] += c.re * x
                    if c.im:
                        im[j] += c.im * x
        return UniPoly(GaussRat._raw(a, b) for a, b in zip(re, im))

    def as_univariate(self, var: int = 0) -> UniPoly:
        """View a polynomial that only involves z_var as a UniPoly."""
        self._check_var(var)
        if any(i != var for i in self.active_variables()):
            raise DimensionError(f"polynomial involves variables other than z{var + 1}")
        coeffs = [ZERO] * (max(self.degree_in(var), 0) + 1)
        for e, c in self._terms.items():
            coeffs[e[var]] = c
        return UniPoly(coeffs)

    # ── structural transforms ────────────────────────────────────────────────

    def homogenize(self) -> "MultiPoly":
        """z_{n+1}^d f(z / z_{n+1}), with the new variable last."""
        if self.is_zero:
            raise ZeroPolynomialError("cannot homogenize the zero polynomial")
        d = self.degree()
        return MultiPoly._from_clean(
            self.nvars + 1, {e + (d - sum(e),): c for e, c in self._terms.items()}
        )

    def dehomogenize(self) -> "MultiPoly":
        return self.substitute_constant(self.nvars - 1, ONE)

    def scale_variables(self, lam: Sequence[Scalar]) -> "MultiPoly":
        if len(lam) != self.nvars:
            raise DimensionError(f"need {self.nvars} scale factors, got {len(lam)}")
        factors = [GaussRat.coerce(x) for x in lam]
        out = {}
        for e, c in self._terms.items():
            value = c
            for f, k in zip(factors, e):
                if k:
                    value = value * f ** k
            if value:
                out[e] = value
        return MultiPoly._from_clean(self.nvars, out)

    def leading_and_dominating_part(self) -> Tuple[Term, "MultiPoly"]:
        """Lex-max term of top total degree, and the top-degree component."""
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading part")
        d = self.degree()
        top = {e: c for e, c in self._terms.items() if sum(e) == d}
        lead = max(top)
        return Term(lead, top[lead]), MultiPoly._from_clean(self.nvars, top)

    def real_part(self) -> "MultiPoly":
        return MultiPoly._from_clean(
            self.nvars, {e: GaussRat._raw(c.re, _ZERO_Q) for e, c in self._terms.items() if c.re}
        )

    def imag_part(self) -> "MultiPoly":
        return MultiPoly._from_clean(
            self.nvars, {e: GaussRat._raw(c.im, _ZERO_Q) for e, c in self._terms.items() if c.im}
        )

    def conjugate(self) -> "MultiPoly":
        return MultiPoly._from_clean(self.nvars, {e: c.conjugate() for e, c in self._terms.items()})

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Rename z_i to z_{positions[i]} inside a polynomial ring of `nvars` variables."""
        if len(positions) != self.nvars or len(set(positions)) != len(positions):
            raise DimensionError("positions must list one distinct slot per variable")
        if any(not 0 <= p < nvars for p in positions):
            raise DimensionError("embedding position out of range")
        out = {}
        for e, c in self._terms.items():
            key = [0] * nvars
            for i, k in enumerate(e):
                key[positions[i]] = k
            out[tuple(key)] = c
        return MultiPoly._from_clean(nvars, out)

    def coefficients_in(self, variables: Sequence[int]) -> Dict[Exponent, "MultiPoly"]:
        """
        Split f = sum_k Q_k * z_S^k over the variables S.

        Keys are exponent tuples over S; each Q_k keeps the full variable
        count with the S-exponents set to zero.
        """
        for var in variables:
            self._check_var(var)
        groups: Dict[Exponent, Dict[Exponent, GaussRat]] = {}
        for e, c in self._terms.items():
            key = tuple(e[v] for v in variables)
            rest = list(e)
            for v in variables:
                rest[v] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: MultiPoly._from_clean(self.nvars, t) for k, t in sorted(groups.items())}

    # ── sympy bridge ─────────────────────────────────────────────────────────

    def to_sympy(self, gens: Optional[Sequence[sympy.Symbol]] = None) -> sympy.Expr:
        gens = tuple(gens) if gens is not None else sympy_gens(self.nvars)
        if len(gens) != self.nvars:
            raise DimensionError(f"{len(gens)} generators for {self.nvars} variables")
        return sympy.Add(
            *(c.to_sympy() * sympy.Mul(*(g**k for g, k in zip(gens, e))) for e, c in self._terms.items())
        )

    @classmethod
    def from_sympy(cls, expr, gens: Sequence[sympy.Symbol]) -> "MultiPoly":
        """Read a polynomial expression in `gens` with Gaussian-rational coefficients."""
        gens = tuple(gens)
        expr = sympy.expand(expr)
        if not gens:
            return cls.constant(0, GaussRat.from_sympy(expr))
        terms = {}
        for exp, coeff in sympy.Poly(expr, *gens).terms():
            c = GaussRat.from_sympy(coeff)
            if c:
                terms[tuple(int(k) for k in exp)] = c
        return cls._from_clean(len(gens), terms)

    # ── display ──────────────────────────────────────────────────────────────

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero:
            return "0"
        names = list(names) if names else [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0]))):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            coeff = str(c)
            if c.re and c.im:
                coeff = f"({coeff})"
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_string()!r})"


def _real_scalar(value: Union[Scalar, float]) -> Fraction:
    if isinstance(value, GaussRat):
        return value.real_value()
    return parse_rational(value)


# ══════════════════════════════════════════════════════════════════════════════
#  DENSE MATRICES
# ══════════════════════════════════════════════════════════════════════════════

class GaussianMatrix:
    """Square matrix with Gaussian-rational entries; real symmetric is the im == 0 case."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        built = tuple(tuple(GaussRat.coerce(x) for x in row) for row in rows)
        if any(len(row) != len(built) for row in built):
            raise DimensionError("matrix must be square")
        self.rows: Tuple[Tuple[GaussRat, ...], ...] = built

    @classmethod
    def identity(cls, order: int) -> "GaussianMatrix":
        return cls([[1 if i == j else 0 for j in range(order)] for i in range(order)])

    @classmethod
    def zeros(cls, order: int) -> "GaussianMatrix":
        return cls([[0] * order for _ in range(order)])

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "GaussianMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> GaussRat:
        i, j = index
        return self.rows[i][j]

    def is_real(self) -> bool:
        return all(x.is_real for row in self.rows for x in row)

    def is_hermitian(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i].conjugate() for i in range(n) for j in range(i, n))

    def is_real_symmetric(self) -> bool:
        return self.is_real() and self.is_hermitian()

    def conj_transpose(self) -> "GaussianMatrix":
        n = self.order
        return GaussianMatrix([[self.rows[j][i].conjugate() for j in range(n)] for i in range(n)])

    def minor(self, i: int, j: int) -> "GaussianMatrix":
        """Delete row i and column j."""
        if not (0 <= i < self.order and 0 <= j < self.order):
            raise DimensionError("minor index out of range")
        return GaussianMatrix(
            [[x for c, x in enumerate(row) if c != j] for r, row in enumerate(self.rows) if r != i]
        )

    def principal_minor(self, j: int) -> "GaussianMatrix":
        return self.minor(j, j)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[x.to_sympy() for x in row] for row in self.rows])

    def _same_order(self, other: "GaussianMatrix") -> None:
        if other.order != self.order:
            raise DimensionError(f"matrix orders {self.order} and {other.order} differ")

    def __add__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        self._same_order(other)
        return GaussianMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        self._same_order(other)
        return GaussianMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "GaussianMatrix":
        return GaussianMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c: Scalar) -> "GaussianMatrix":
        c = GaussRat.coerce(c)
        return GaussianMatrix([[a * c for a in r] for r in self.rows])

    def __mul__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        self._same_order(other)
        n = self.order
        return GaussianMatrix(
            [[sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"GaussianMatrix([{body}])"
