"""Tests for Sturm chains, root isolation, interlacing and proper position."""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.errors import PreconditionError, ZeroPolynomialError
from src.polycore import GaussRat, UniPoly
from src.realroots import (
    Relation,
    SignClass,
    count_real_roots,
    gcd,
    has_real_root,
    interlace_check,
    is_hyperbolic,
    is_stable_complex,
    is_strictly_hyperbolic,
    is_strictly_stable_univariate,
    isolate_real_roots,
    proper_position,
    refine_root,
    roots_all_same_sign,
    roots_interlace,
    squarefree_decomposition,
    squarefree_part,
    sturm_chain,
    wronskian,
)

t = sympy.Symbol("t")


def random_real(rng, degree: int) -> UniPoly:
    coeffs = [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(degree)]
    coeffs.append(Fraction(int(rng.choice([-2, -1, 1, 3]))))
    return UniPoly.from_real(coeffs)


def to_sympy(p: UniPoly) -> sympy.Poly:
    return sympy.Poly(
        [sympy.Rational(c.re.numerator, c.re.denominator) for c in reversed(p.coeffs)], t, domain="QQ"
    )


def random_rooted(rng, degree: int, bound: int = 3) -> UniPoly:
    roots = [Fraction(int(rng.integers(-bound * 2, bound * 2 + 1)), 2) for _ in range(degree)]
    return UniPoly.from_roots(roots, lead=int(rng.choice([-2, 1, 3])))


def test_sturm_chain_of_cubic():
    p = UniPoly.from_real([-5, 3, -2, 1])
    chain = sturm_chain(p).as_unipolys()
    assert chain[0] == p
    assert chain[1] == UniPoly.from_real([3, -4, 3])
    assert chain[2] == UniPoly.from_real([Fraction(13, 3), Fraction(-10, 9)])
    assert chain[3] == UniPoly.from_real([Fraction(-3303, 100)])


def test_count_real_roots_matches_sympy(rng):
    for _ in range(40):
        p = random_real(rng, int(rng.integers(1, 7)))
        assert count_real_roots(p) == len(set(sympy.real_roots(to_sympy(p))))


def test_count_real_roots_in_interval():
    p = UniPoly.from_roots([-1, 0, 2])
    assert count_real_roots(p, (Fraction(-1), Fraction(2))) == 2
    assert count_real_roots(p, (None, Fraction(0))) == 2
    assert count_real_roots(p, (Fraction(0), None)) == 1


def test_isolation_contains_numpy_roots(rng):
    for _ in range(30):
        p = random_real(rng, int(rng.integers(1, 6)))
        intervals = isolate_real_roots(p)
        coeffs = [float(c.re) for c in reversed(p.coeffs)]
        numeric = sorted(r.real for r in np.roots(coeffs) if abs(r.imag) < 1e-9)
        distinct = [x for i, x in enumerate(numeric) if i == 0 or abs(x - numeric[i - 1]) > 1e-6]
        assert len(intervals) == len(distinct)
        for interval, x in zip(intervals, distinct):
            assert float(interval.lo) - 1e-6 <= x <= float(interval.hi) + 1e-6


def test_refine_root_narrows_interval():
    p = UniPoly.from_real([-2, 0, 1])
    (neg, pos) = isolate_real_roots(p)
    narrow = refine_root(p, pos, Fraction(1, 10**6))
    assert narrow.hi - narrow.lo < Fraction(1, 10**6)
    assert narrow.lo ** 2 < 2 < narrow.hi ** 2


def test_exact_rational_root_is_reported_exactly():
    p = UniPoly.from_roots([Fraction(1, 2), 3])
    intervals = isolate_real_roots(p)
    assert len(intervals) == 2
    for interval, root in zip(intervals, [Fraction(1, 2), Fraction(3)]):
        if interval.is_exact:
            assert interval.lo == root
        else:
            assert interval.lo < root < interval.hi


def test_hyperbolicity():
    assert is_hyperbolic(UniPoly.from_roots([1, 1, -2]))
    assert not is_strictly_hyperbolic(UniPoly.from_roots([1, 1, -2]))
    assert is_strictly_hyperbolic(UniPoly.from_roots([1, 0, -2]))
    assert not is_hyperbolic(UniPoly.from_real([1, 0, 1]))
    assert is_hyperbolic(UniPoly.from_real([5]))
    with pytest.raises(ZeroPolynomialError):
        is_hyperbolic(UniPoly())


def test_roots_all_same_sign():
    assert roots_all_same_sign(UniPoly.from_roots([-1, -3])) == SignClass.ALL_NONPOS
    assert roots_all_same_sign(UniPoly.from_roots([0, 2])) == SignClass.ALL_NONNEG
    assert roots_all_same_sign(UniPoly.from_roots([0, 0])) == SignClass.ALL_NONPOS
    assert roots_all_same_sign(UniPoly.from_roots([-1, 2])) == SignClass.MIXED
    assert roots_all_same_sign(UniPoly.from_real([4])) == SignClass.NO_ROOTS
    with pytest.raises(PreconditionError):
        roots_all_same_sign(UniPoly.from_real([1, 0, 1]))


def test_squarefree_and_gcd():
    p = UniPoly.from_roots([1, 1, 1, -2])
    assert squarefree_part(p) == UniPoly.from_roots([1, -2])
    assert squarefree_decomposition(p) == [UniPoly.from_roots([-2]), UniPoly([1]), UniPoly.from_roots([1])]
    assert gcd(p, UniPoly.from_roots([1, 5])) == UniPoly.from_roots([1])


def test_interlacing_with_multiplicities():
    assert interlace_check([0, 2], [1])
    assert interlace_check([0, 2], [1, 3])
    assert not interlace_check([0, 1], [2, 3])
    assert interlace_check([1, 1], [1])
    assert roots_interlace(UniPoly.from_roots([0, 2]), UniPoly.from_roots([1, 3]))
    assert not roots_interlace(UniPoly.from_roots([0, 1]), UniPoly.from_roots([2, 3]))


def test_wronskian_and_proper_position():
    f = UniPoly.from_roots([1])
    g = UniPoly.from_roots([0, 2])
    assert wronskian(f, g) == UniPoly.from_real([-2, 2, -1])
    assert proper_position(f, g).relation == Relation.FIRST_LL_SECOND
    assert proper_position(g, f).relation == Relation.SECOND_LL_FIRST
    assert proper_position(g, g * 3).relation == Relation.BOTH
    assert proper_position(UniPoly(), g).relation == Relation.BOTH
    assert proper_position(UniPoly.from_roots([0, 1]), UniPoly.from_roots([2, 3])).relation == Relation.NEITHER
    with pytest.raises(ZeroPolynomialError):
        proper_position(UniPoly(), UniPoly())


def test_complex_stability():
    assert is_stable_complex(UniPoly([GaussRat(0, 1), 1]))
    assert not is_stable_complex(UniPoly([GaussRat(0, -1), 1]))
    assert is_stable_complex(UniPoly.from_roots([2, -1]))
    assert not is_stable_complex(UniPoly.from_real([1, 0, 1]))
    assert has_real_root(UniPoly.from_roots([2, GaussRat(0, -1)]))
    assert not has_real_root(UniPoly([GaussRat(1, 1), 1]))
    assert is_strictly_stable_univariate(UniPoly([GaussRat(0, 1), 1]))
    assert not is_strictly_stable_univariate(UniPoly.from_roots([0]))


def test_complex_stability_from_root_locations(rng):
    for _ in range(40):
        degree = int(rng.integers(1, 5))
        roots = [
            GaussRat(int(rng.integers(-4, 5)), int(rng.integers(-3, 4))) for _ in range(degree)
        ]
        h = UniPoly.from_roots(roots)
        expected = all(r.im <= 0 for r in roots)
        assert is_stable_complex(h) == expected


@pytest.mark.slow
def test_obreschkoff_sampled_direction(rng):
    """Pairs in proper position have only hyperbolic-or-zero real combinations."""
    for _ in range(500):
        f = random_rooted(rng, int(rng.integers(1, 6)))
        g = random_rooted(rng, int(rng.integers(1, 6)))
        relation = proper_position(f, g).relation
        if relation == Relation.NEITHER:
            continue
        for _ in range(200):
            a = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
            b = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
            combo = f * a + g * b
            assert combo.is_zero or is_hyperbolic(combo)
