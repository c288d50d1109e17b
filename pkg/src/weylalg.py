"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                         WEYL ALGEBRA OPERATORS                                ║
║                                                                               ║
║  Normal-ordered differential operators sum a z^alpha d^beta, their symbols,  ║
║  composition through the symbol product, the star product, the formal        ║
║  adjoint and the diagonal-operator / multiplier-data bridge.                  ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionError, NonRealError, NotDiagonalError
from .polycore import ONE, ZERO, Exponent, GaussRat, MultiPoly, Scalar, UniPoly

Index = Tuple[Exponent, Exponent]


# ══════════════════════════════════════════════════════════════════════════════
#  OPERATORS
# ══════════════════════════════════════════════════════════════════════════════

class WeylOp:
    """
    Finite-order operator T = sum a_{alpha beta} z^alpha d^beta.

    Terms are keyed by (alpha, beta) and are always stored in normal order
    (multiplications left of derivatives); zero coefficients are never kept.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Union[Mapping[Index, Scalar], Iterable[Tuple[Index, Scalar]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Index, GaussRat] = {}
        for (alpha, beta), coeff in items:
            key = (tuple(int(a) for a in alpha), tuple(int(b) for b in beta))
            if len(key[0]) != nvars or len(key[1]) != nvars:
                raise DimensionError(f"index {key} does not match {nvars} variables")
            if any(x < 0 for x in key[0] + key[1]):
                raise DimensionError(f"negative exponent in {key}")
            value = clean.get(key, ZERO) + GaussRat.coerce(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self.nvars = nvars
        self._terms = clean

    @classmethod
    def _from_clean(cls, nvars: int, terms: Dict[Index, GaussRat]) -> "WeylOp":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "WeylOp":
        return cls._from_clean(nvars, {})

    @classmethod
    def identity(cls, nvars: int) -> "WeylOp":
        return cls._from_clean(nvars, {((0,) * nvars, (0,) * nvars): ONE})

    @property
    def terms(self) -> Mapping[Index, GaussRat]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Tuple[Index, GaussRat]]:
        return iter(sorted(self._terms.items()))

    def order(self) -> int:
        return max((sum(beta) for _, beta in self._terms), default=-1)

    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    def is_diagonal(self) -> bool:
        return all(alpha == beta for alpha, beta in self._terms)

    def _check(self, other: "WeylOp") -> None:
        if other.nvars != self.nvars:
            raise DimensionError(f"operators act on {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "WeylOp") -> "WeylOp":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            value = out.get(k, ZERO) + c
            if value:
                out[k] = value
            else:
                out.pop(k, None)
        return WeylOp._from_clean(self.nvars, out)

    def __neg__(self) -> "WeylOp":
        return WeylOp._from_clean(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def scale(self, c: Scalar) -> "WeylOp":
        c = GaussRat.coerce(c)
        if not c:
            return WeylOp.zero(self.nvars)
        return WeylOp._from_clean(self.nvars, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other: Union["WeylOp", Scalar]) -> "WeylOp":
        if isinstance(other, WeylOp):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "WeylOp":
        return self.scale(other)

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return apply(self, f)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeylOp):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        n = self.nvars
        names = [f"z{i + 1}" for i in range(n)] + [f"d{i + 1}" for i in range(n)]
        return symbol(self).to_string(names)

    def __repr__(self) -> str:
        return f"WeylOp({self.nvars}, {str(self)!r})"


# ══════════════════════════════════════════════════════════════════════════════
#  CONSTRUCTORS
# ══════════════════════════════════════════════════════════════════════════════

def multiplication_operator(p: MultiPoly) -> WeylOp:
    """The operator f -> p f."""
    zero = (0,) * p.nvars
    return WeylOp._from_clean(p.nvars, {(e, zero): c for e, c in p.terms.items()})


def derivative_operator(nvars: int, i: int, k: int = 1) -> WeylOp:
    if not 0 <= i < nvars:
        raise DimensionError(f"variable index {i} out of range for {nvars} variables")
    beta = tuple(k if j == i else 0 for j in range(nvars))
    return WeylOp._from_clean(nvars, {((0,) * nvars, beta): ONE})


def polynomial_in_derivatives(p: UniPoly, nvars: int = 1, var: int = 0) -> WeylOp:
    """p(d/dz_var) = sum p_k d^k."""
    if not 0 <= var < nvars:
        raise DimensionError(f"variable index {var} out of range for {nvars} variables")
    terms = {}
    for k, c in enumerate(p.coeffs):
        if c:
            beta = tuple(k if j == var else 0 for j in range(nvars))
            terms[((0,) * nvars, beta)] = c
    return WeylOp._from_clean(nvars, terms)


# ══════════════════════════════════════════════════════════════════════════════
#  APPLICATION AND SYMBOLS
# ══════════════════════════════════════════════════════════════════════════════

def apply(T: WeylOp, f: MultiPoly) -> MultiPoly:
    """T(f), differentiating formally term by term."""
    if f.nvars != T.nvars:
        raise DimensionError(f"operator on {T.nvars} variables applied to a polynomial in {f.nvars}")
    derivatives: Dict[Exponent, MultiPoly] = {}
    out = MultiPoly.zero(T.nvars)
    for (alpha, beta), c in T._terms.items():
        if beta not in derivatives:
            d = f
            for i, k in enumerate(beta):
                if k and d:
                    d = d.derivative(i, k)
            derivatives[beta] = d
        d = derivatives[beta]
        if d:
            out = out + d * MultiPoly.monomial(alpha, c)
    return out


def symbol(T: WeylOp) -> MultiPoly:
    """F_T(z, w) in 2n variables, z first."""
    return MultiPoly._from_clean(2 * T.nvars, {a + b: c for (a, b), c in T._terms.items()})


def op_from_symbol(F: MultiPoly) -> WeylOp:
    if F.nvars % 2:
        raise DimensionError("a symbol needs an even number of variables")
    n = F.nvars // 2
    return WeylOp._from_clean(n, {(e[:n], e[n:]): c for e, c in F.terms.items()})


def symbol_negate_w(T: WeylOp) -> MultiPoly:
    """F_T(z, -w)."""
    return MultiPoly._from_clean(
        2 * T.nvars,
        {a + b: (-c if sum(b) % 2 else c) for (a, b), c in T._terms.items()},
    )


def _kappa_range(bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    return itertools.product(*(range(max(b, 0) + 1) for b in bounds))


def compose(S: WeylOp, T: WeylOp) -> WeylOp:
    """
    Normal-ordered product ST via
    F_ST = sum_kappa (1/kappa!) d_w^kappa F_S * d_z^kappa F_T.
    """
    S._check(T)
    n = S.nvars
    FS, FT = symbol(S), symbol(T)
    if not FS or not FT:
        return WeylOp.zero(n)
    bounds = [min(FS.degree_in(n + i), FT.degree_in(i)) for i in range(n)]
    total = MultiPoly.zero(2 * n)
    for kappa in _kappa_range(bounds):
        left, right = FS, FT
        for i, k in enumerate(kappa):
            if k:
                left = left.derivative(n + i, k)
                right = right.derivative(i, k)
        if left and right:
            weight = Fraction(1, math.prod(math.factorial(k) for k in kappa))
            total = total + (left * right).scale(weight)
    return op_from_symbol(total)


def star_product(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """(F * G)(z, w) = sum_kappa ((-1)^|kappa| / kappa!) d_z^kappa F * d_w^kappa G."""
    if F.nvars != G.nvars or F.nvars % 2:
        raise DimensionError("star product needs two symbols in the same even number of variables")
    n = F.nvars // 2
    if not F or not G:
        return MultiPoly.zero(F.nvars)
    bounds = [min(F.degree_in(i), G.degree_in(n + i)) for i in range(n)]
    total = MultiPoly.zero(F.nvars)
    for kappa in _kappa_range(bounds):
        left, right = F, G
        for i, k in enumerate(kappa):
            if k:
                left = left.derivative(i, k)
                right = right.derivative(n + i, k)
        if left and right:
            weight = Fraction((-1) ** sum(kappa), math.prod(math.factorial(k) for k in kappa))
            total = total + (left * right).scale(weight)
    return total


def adjoint(T: WeylOp) -> WeylOp:
    """T* = sum conj(a_{beta alpha}) z^alpha d^beta."""
    return WeylOp._from_clean(T.nvars, {(b, a): c.conjugate() for (a, b), c in T._terms.items()})


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIPLIER DATA
# ══════════════════════════════════════════════════════════════════════════════

class MultiplierData:
    """A rational sequence lambda on the box [0, N_1] x ... x [0, N_n]."""

    __slots__ = ("box", "_values")

    def __init__(self, box: Sequence[int], values: Mapping[Sequence[int], Union[int, Fraction, str]]):
        self.box: Tuple[int, ...] = tuple(int(b) for b in box)
        if not self.box or any(b < 0 for b in self.box):
            raise DimensionError("multiplier data needs a nonempty box of nonnegative edges")
        clean: Dict[Exponent, Fraction] = {}
        for exp, value in values.items():
            key = tuple(int(e) for e in exp)
            self._check_point(key)
            q = Fraction(value)
            if q:
                clean[key] = q
        self._values = clean

    @classmethod
    def from_function(cls, box: Sequence[int], fn: Callable[[Exponent], Union[int, Fraction]]) -> "MultiplierData":
        box = tuple(box)
        return cls(box, {alpha: fn(alpha) for alpha in itertools.product(*(range(b + 1) for b in box))})

    @property
    def nvars(self) -> int:
        return len(self.box)

    def _check_point(self, alpha: Exponent) -> None:
        if len(alpha) != len(self.box) or any(not 0 <= a <= b for a, b in zip(alpha, self.box)):
            raise DimensionError(f"point {alpha} lies outside the box {self.box}")

    def __call__(self, alpha: Sequence[int]) -> Fraction:
        key = tuple(alpha)
        self._check_point(key)
        return self._values.get(key, Fraction(0))

    def points(self) -> Iterator[Exponent]:
        return itertools.product(*(range(b + 1) for b in self.box))

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self._values))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiplierData):
            return self.box == other.box and self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.box, frozenset(self._values.items())))

    def __repr__(self) -> str:
        return f"MultiplierData(box={self.box}, support={len(self._values)})"


def diag_from_sequence(lam: MultiplierData) -> WeylOp:
    """
    Diagonal operator with T(z^alpha) = lambda(alpha) z^alpha on the box.

    c_beta = (Delta^beta lambda)(0) / beta!, so lambda(alpha) = sum c_beta (alpha)_beta.
    """
    terms: Dict[Index, GaussRat] = {}
    for beta in lam.points():
        diff = Fraction(0)
        for gamma in itertools.product(*(range(b + 1) for b in beta)):
            sign = (-1) ** (sum(beta) - sum(gamma))
            weight = math.prod(math.comb(b, g) for b, g in zip(beta, gamma))
            diff += sign * weight * lam(gamma)
        if diff:
            c = diff / math.prod(math.factorial(b) for b in beta)
            terms[(beta, beta)] = GaussRat._raw(c, Fraction(0))
    return WeylOp._from_clean(lam.nvars, terms)


def sequence_from_diag(T: WeylOp, box: Optional[Sequence[int]] = None) -> MultiplierData:
    """lambda(alpha) = sum c_beta (alpha)_beta, tabulated on `box` (default: the order box)."""
    if not T.is_diagonal():
        raise NotDiagonalError("operator has a term z^alpha d^beta with alpha != beta")
    if not T.is_real():
        raise NonRealError("multiplier data is rational; operator has complex coefficients")
    n = T.nvars
    if box is None:
        box = [max((beta[i] for _, beta in T._terms), default=0) for i in range(n)]

    def value(alpha: Exponent) -> Fraction:
        total = Fraction(0)
        for (_, beta), c in T._terms.items():
            total += c.re * math.prod(math.perm(a, b) for a, b in zip(alpha, beta))
        return total

    return MultiplierData.from_function(box, value)
