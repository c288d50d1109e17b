"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          EXACT REAL-ROOT ANALYSIS                             ║
║                                                                               ║
║  Sturm chains, root counting and isolation, hyperbolicity tests,              ║
║  interlacing, the proper-position relation and Hermite-Biehler stability      ║
║  of complex univariate polynomials. The kernels are sympy Polys over QQ;      ║
║  results cross back as UniPolys and Fractions.                                ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ

from .errors import NonRealError, PreconditionError, ZeroPolynomialError
from .polycore import UniPoly, rational_from_sympy, rational_to_sympy

logger = logging.getLogger(__name__)

_T = sympy.Symbol("t")

# refinement steps allowed for an isolating interval that ends on a root
_MAX_NUDGES = 64


# ══════════════════════════════════════════════════════════════════════════════
#  SYMPY BRIDGE
# ══════════════════════════════════════════════════════════════════════════════

def _to_poly(p: UniPoly) -> sympy.Poly:
    try:
        coeffs = p.real_coefficients()
    except NonRealError as exc:
        raise NonRealError("real-root routines need real coefficients") from exc
    if not coeffs:
        return sympy.Poly(0, _T, domain=QQ)
    return sympy.Poly([rational_to_sympy(c) for c in reversed(coeffs)], _T, domain=QQ)


def _from_poly(P: sympy.Poly) -> UniPoly:
    if P.is_zero:
        return UniPoly()
    return UniPoly.from_real(rational_from_sympy(c) for c in reversed(P.all_coeffs()))


def _require_nonzero(p: UniPoly) -> sympy.Poly:
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no well-defined root set")
    return _to_poly(p)


def _at(P: sympy.Poly, x: Fraction) -> Fraction:
    return rational_from_sympy(P.eval(rational_to_sympy(x)))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _closed_count(P: sympy.Poly, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    """Distinct real roots in [lo, hi]; None is the matching infinity."""
    if P.degree() <= 0:
        return 0
    inf = rational_to_sympy(lo) if lo is not None else None
    sup = rational_to_sympy(hi) if hi is not None else None
    return int(P.count_roots(inf, sup))


def _halfopen_count(P: sympy.Poly, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    """Distinct real roots in (lo, hi]."""
    count = _closed_count(P, lo, hi)
    if lo is not None and P.degree() > 0 and _at(P, lo) == 0:
        count -= 1
    return count


# ══════════════════════════════════════════════════════════════════════════════
#  STURM CHAINS
# ══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class SturmChain:
    """The monic square-free part of p, its derivative, then negated remainders."""

    polys: Tuple[sympy.Poly, ...]

    @classmethod
    def build(cls, P: sympy.Poly) -> "SturmChain":
        return cls(tuple(P.sturm()))

    def variations_at(self, x: Fraction) -> int:
        return _count_variations(_sign(_at(q, x)) for q in self.polys)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for q in self.polys:
            s = _sign(rational_from_sympy(q.LC()))
            if not positive and q.degree() % 2:
                s = -s
            signs.append(s)
        return _count_variations(signs)

    def as_unipolys(self) -> List[UniPoly]:
        return [_from_poly(q) for q in self.polys]


def _count_variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def sturm_chain(p: UniPoly) -> SturmChain:
    return SturmChain.build(_require_nonzero(p))


def count_real_roots(
    p: UniPoly,
    interval: Optional[Tuple[Optional[Fraction], Optional[Fraction]]] = None,
) -> int:
    """
    Number of distinct real roots of p in the half-open interval (lo, hi].

    `None` for either end means the corresponding infinity; the default is
    the whole real line.
    """
    P = _require_nonzero(p)
    lo, hi = interval if interval is not None else (None, None)
    lo = Fraction(lo) if lo is not None else None
    hi = Fraction(hi) if hi is not None else None
    return _halfopen_count(P, lo, hi)


# ══════════════════════════════════════════════════════════════════════════════
#  ISOLATION
# ══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class RootInterval:
    """
    One isolated real root.

    Either an exact rational root (lo == hi) or an open interval (lo, hi)
    whose rational ends are not roots and which contains exactly one root.
    """

    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _isolate(P: sympy.Poly) -> List[RootInterval]:
    """Isolating intervals of the distinct real roots of P, increasing."""
    if P.degree() <= 0:
        return []
    sqf = P.sqf_part()
    found = []
    for a, b in sqf.intervals(sqf=True):
        lo, hi = rational_from_sympy(a), rational_from_sympy(b)
        nudges = 0
        while lo != hi and (_at(sqf, lo) == 0 or _at(sqf, hi) == 0):
            if nudges == _MAX_NUDGES:
                raise PreconditionError(f"could not separate a root from the ends of ({lo}, {hi})")
            a, b = sqf.refine_root(a, b, steps=1)
            lo, hi = rational_from_sympy(a), rational_from_sympy(b)
            nudges += 1
        found.append(RootInterval(lo, hi))
    found.sort(key=lambda r: (r.lo, r.hi))
    return found


def isolate_real_roots(p: UniPoly) -> List[RootInterval]:
    """Isolating intervals for the distinct real roots of p, in increasing order."""
    return _isolate(_require_nonzero(p))


def refine_root(p: UniPoly, root: RootInterval, width: Fraction) -> RootInterval:
    """Shrink an isolating interval of p until it is narrower than `width`."""
    if root.is_exact:
        return root
    sqf = _require_nonzero(p).sqf_part()
    lo, hi = root.lo, root.hi
    if lo < 0 < hi:
        # sympy refines on one side of zero only
        if _at(sqf, Fraction(0)) == 0:
            return RootInterval(Fraction(0), Fraction(0))
        if _closed_count(sqf, lo, Fraction(0)):
            hi = Fraction(0)
        else:
            lo = Fraction(0)
    a, b = sqf.refine_root(rational_to_sympy(lo), rational_to_sympy(hi), eps=rational_to_sympy(Fraction(width)))
    return RootInterval(rational_from_sympy(a), rational_from_sympy(b))


def squarefree_part(p: UniPoly) -> UniPoly:
    return _from_poly(_require_nonzero(p).sqf_part())


def _sqf_factors(P: sympy.Poly) -> List[sympy.Poly]:
    """Entry i-1 is the monic product of the factors of multiplicity exactly i."""
    _, pairs = P.sqf_list()
    if not pairs:
        return []
    top = max(k for _, k in pairs)
    factors = [sympy.Poly(1, _T, domain=QQ) for _ in range(top)]
    for factor, k in pairs:
        factors[k - 1] = factors[k - 1] * factor.monic()
    return factors


def squarefree_decomposition(p: UniPoly) -> List[UniPoly]:
    """Monic square-free factors: entry i-1 collects the roots of multiplicity i."""
    return [_from_poly(f) for f in _sqf_factors(_require_nonzero(p))]


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    return _from_poly(_to_poly(p).gcd(_to_poly(q)))


# ══════════════════════════════════════════════════════════════════════════════
#  HYPERBOLICITY
# ══════════════════════════════════════════════════════════════════════════════

class SignClass(str, Enum):
    ALL_NONNEG = "AllNonneg"
    ALL_NONPOS = "AllNonpos"
    MIXED = "Mixed"
    NO_ROOTS = "NoRoots"


def _is_hyperbolic(P: sympy.Poly) -> bool:
    sqf = P.sqf_part()
    if sqf.degree() <= 0:
        return True
    return _closed_count(sqf, None, None) == sqf.degree()


def is_hyperbolic(p: UniPoly) -> bool:
    """Nonzero real polynomial with only real zeros (constants included)."""
    return _is_hyperbolic(_require_nonzero(p))


def is_strictly_hyperbolic(p: UniPoly) -> bool:
    P = _require_nonzero(p)
    if P.gcd(P.diff(_T)).degree() > 0:
        return False
    return _is_hyperbolic(P)


def roots_all_same_sign(p: UniPoly) -> SignClass:
    """
    Classify the zeros of a hyperbolic polynomial by sign.

    Zero roots fit either class; a polynomial whose only roots are zero
    reports ALL_NONPOS.
    """
    P = _require_nonzero(p)
    if not _is_hyperbolic(P):
        raise PreconditionError("sign classification needs a hyperbolic polynomial")
    if P.degree() <= 0:
        return SignClass.NO_ROOTS
    zero = Fraction(0)
    zero_root = 1 if _at(P, zero) == 0 else 0
    negative = _closed_count(P, None, zero) - zero_root
    positive = _closed_count(P, zero, None) - zero_root
    if positive and negative:
        return SignClass.MIXED
    if positive:
        return SignClass.ALL_NONNEG
    return SignClass.ALL_NONPOS


# ══════════════════════════════════════════════════════════════════════════════
#  INTERLACING AND PROPER POSITION
# ══════════════════════════════════════════════════════════════════════════════

class Relation(str, Enum):
    FIRST_LL_SECOND = "FirstLLSecond"
    SECOND_LL_FIRST = "SecondLLFirst"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class ProperPositionVerdict:
    relation: Relation
    witness: Optional[Fraction] = None
    reason: str = ""

    @property
    def first_ll_second(self) -> bool:
        return self.relation in (Relation.FIRST_LL_SECOND, Relation.BOTH)

    @property
    def second_ll_first(self) -> bool:
        return self.relation in (Relation.SECOND_LL_FIRST, Relation.BOTH)


def _blocks_interlace(blocks: Sequence[Tuple[int, int]]) -> bool:
    """
    Can the merged root sequence alternate A, B, A, ... ?

    Each block is (multiplicity in A, multiplicity in B) at one distinct
    root; labels inside a block can be ordered freely.
    """
    last: set = {None}
    for ma, mb in blocks:
        k = ma + mb
        nxt = set()
        for prev in last:
            for start in ("A", "B"):
                if start == prev:
                    continue
                first, second = (ma, mb) if start == "A" else (mb, ma)
                if first == (k + 1) // 2 and second == k // 2:
                    other = "B" if start == "A" else "A"
                    nxt.add(start if k % 2 else other)
        if not nxt:
            return False
        last = nxt
    return True


def interlace_check(roots_a: Sequence[Fraction], roots_b: Sequence[Fraction]) -> bool:
    """Do two sorted root multisets weave (repeated entries are multiplicities)?"""
    merged = {}
    for r in roots_a:
        ma, mb = merged.get(Fraction(r), (0, 0))
        merged[Fraction(r)] = (ma + 1, mb)
    for r in roots_b:
        ma, mb = merged.get(Fraction(r), (0, 0))
        merged[Fraction(r)] = (ma, mb + 1)
    return _blocks_interlace([merged[r] for r in sorted(merged)])


def _multiplicity_blocks(F: sympy.Poly, G: sympy.Poly) -> List[Tuple[int, int]]:
    """Per distinct real root of f*g, in increasing order: (mult in f, mult in g)."""
    roots = _isolate(F * G)
    factors_f = _sqf_factors(F)
    factors_g = _sqf_factors(G)

    def multiplicity(factors: List[sympy.Poly], root: RootInterval) -> int:
        for i, factor in enumerate(factors, start=1):
            if factor.degree() <= 0:
                continue
            if root.is_exact:
                if _at(factor, root.lo) == 0:
                    return i
            elif _closed_count(factor, root.lo, root.hi) == 1:
                return i
        return 0

    return [(multiplicity(factors_f, r), multiplicity(factors_g, r)) for r in roots]


def roots_interlace(f: UniPoly, g: UniPoly) -> bool:
    """Interlacing of the real zero multisets of two nonzero real polynomials."""
    return _blocks_interlace(_multiplicity_blocks(_require_nonzero(f), _require_nonzero(g)))


def wronskian(f: UniPoly, g: UniPoly) -> UniPoly:
    """W[f, g] = f'g - fg'."""
    return f.derivative() * g - f * g.derivative()


def _separating_points(P: sympy.Poly) -> List[Fraction]:
    """Rational non-roots of P, at least one in every gap between its real roots."""
    roots = _isolate(P)
    if not roots:
        return [Fraction(0)]
    points = [roots[0].lo - 1, roots[-1].hi + 1]
    for left, right in zip(roots, roots[1:]):
        points.append(right.lo if left.hi == right.lo else (left.hi + right.lo) / 2)
    return [x for x in points if _at(P, x) != 0]


def _nonpositive_everywhere(W: sympy.Poly) -> Tuple[bool, Optional[Fraction]]:
    """Decide W <= 0 on R exactly; on failure return a point where W > 0."""
    if W.is_zero:
        return True, None
    odd = sympy.Poly(1, _T, domain=QQ)
    for i, factor in enumerate(_sqf_factors(W), start=1):
        if i % 2:
            odd = odd * factor
    if not _isolate(odd) and rational_from_sympy(W.LC()) < 0:
        return True, None
    # W keeps one sign between consecutive roots, so these points see every sign it takes
    for x in _separating_points(W):
        if _at(W, x) > 0:
            return False, x
    raise AssertionError("sign change without a positive sample")


def proper_position(f: UniPoly, g: UniPoly) -> ProperPositionVerdict:
    """Decide f << g (and g << f) exactly for real univariate f, g."""
    A, B = _to_poly(f), _to_poly(g)
    if A.is_zero and B.is_zero:
        raise ZeroPolynomialError("proper position needs at least one nonzero polynomial")
    if A.is_zero or B.is_zero:
        other = B if A.is_zero else A
        if _is_hyperbolic(other):
            return ProperPositionVerdict(Relation.BOTH, reason="zero convention")
        return ProperPositionVerdict(Relation.NEITHER, reason="nonzero side is not hyperbolic")
    if not _is_hyperbolic(A) or not _is_hyperbolic(B):
        return ProperPositionVerdict(Relation.NEITHER, reason="not hyperbolic")
    if not _blocks_interlace(_multiplicity_blocks(A, B)):
        return ProperPositionVerdict(Relation.NEITHER, reason="zeros do not interlace")
    W = A.diff(_T) * B - A * B.diff(_T)
    if W.is_zero:
        return ProperPositionVerdict(Relation.BOTH, reason="proportional")
    le, witness_le = _nonpositive_everywhere(W)
    ge, _ = _nonpositive_everywhere(-W)
    if le:
        return ProperPositionVerdict(Relation.FIRST_LL_SECOND)
    if ge:
        return ProperPositionVerdict(Relation.SECOND_LL_FIRST)
    logger.debug("Wronskian changes sign; positive at %s", witness_le)
    return ProperPositionVerdict(Relation.NEITHER, witness=witness_le, reason="Wronskian changes sign")


def is_stable_complex(h: UniPoly) -> bool:
    """No zero in the open upper half-plane, via h = f + ig and g << f."""
    if h.is_zero:
        raise ZeroPolynomialError("the zero polynomial is not stable")
    f, g = h.real_part(), h.imag_part()
    return proper_position(g, f).first_ll_second


def has_real_root(h: UniPoly) -> bool:
    """Whether a (possibly complex) polynomial vanishes somewhere on R."""
    if h.is_zero:
        raise ZeroPolynomialError("the zero polynomial vanishes everywhere")
    common = _to_poly(h.real_part()).gcd(_to_poly(h.imag_part()))
    if common.degree() <= 0:
        return False
    return _closed_count(common, None, None) > 0


def is_strictly_stable_univariate(h: UniPoly) -> bool:
    """No zero with Im >= 0."""
    return is_stable_complex(h) and not has_real_root(h)
