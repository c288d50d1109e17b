"""Tests for Gaussian rationals, sparse polynomials and matrices."""

from fractions import Fraction

import pytest
import sympy

from src.errors import DimensionError, NonRealError, NotExactError
from src.polycore import GaussianMatrix, GaussRat, I, MultiPoly, UniPoly, format_rational, parse_rational

X = sympy.symbols("x1:4")


def to_sympy(f: MultiPoly):
    total = sympy.Integer(0)
    for e, c in f:
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator
        )
        total += coeff * sympy.Mul(*(X[i] ** k for i, k in enumerate(e)))
    return sympy.expand(total)


def random_poly(rng, nvars: int, terms: int = 4, degree: int = 3, complex_coeffs: bool = False) -> MultiPoly:
    out = []
    for _ in range(terms):
        exp = [int(k) for k in rng.integers(0, degree + 1, size=nvars)]
        im = int(rng.integers(-3, 4)) if complex_coeffs else 0
        out.append((exp, GaussRat(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))), im)))
    return MultiPoly(nvars, out)


def test_rational_wire_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == Fraction(-4)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"
    with pytest.raises(TypeError):
        parse_rational(True)
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_gauss_rat_field_operations():
    a = GaussRat(1, 2)
    b = GaussRat("1/2", -1)
    assert a * b == GaussRat(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert a.conjugate() == GaussRat(1, -2)
    assert I ** 2 == -1
    assert GaussRat(3) == 3
    assert str(GaussRat(0, -1)) == "-i"
    assert str(GaussRat("1/2", 3)) == "1/2+3i"
    with pytest.raises(NonRealError):
        GaussRat(1, 1).real_value()
    with pytest.raises(ZeroDivisionError):
        a / GaussRat(0)


def test_multiplication_matches_sympy(rng):
    for _ in range(25):
        f = random_poly(rng, 3, complex_coeffs=True)
        g = random_poly(rng, 3, complex_coeffs=True)
        assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
        assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))


def test_derivative_matches_sympy(rng):
    for _ in range(15):
        f = random_poly(rng, 2, terms=6, degree=4)
        assert to_sympy(f.derivative(1, 2)) == sympy.expand(sympy.diff(to_sympy(f), X[1], 2))


def test_zero_polynomial_conventions():
    zero = MultiPoly.zero(2)
    assert zero.is_zero
    assert zero.degree() == -1
    assert MultiPoly(2, [((1, 0), 1), ((1, 0), -1)]).is_zero
    assert UniPoly([0, 0]).is_zero


def test_dimension_errors(z2):
    z1, _ = z2
    with pytest.raises(DimensionError):
        MultiPoly(2, [((1,), 1)])
    with pytest.raises(DimensionError):
        z1 + MultiPoly.variable(3, 0)
    with pytest.raises(DimensionError):
        z1.evaluate([1])


def test_exact_divide(z2):
    z1, w = z2
    f = (z1 + w) * (z1 * w - 3)
    assert f.exact_divide(z1 + w) == z1 * w - 3
    with pytest.raises(NotExactError):
        f.exact_divide(z1 - w + 1)


def test_substitute_and_evaluate(z2):
    z1, w = z2
    f = z1 * z1 * w + I * w - 2
    g = f.substitute_constant(0, 2)
    assert g.nvars == 1
    assert g == MultiPoly(1, [((1,), GaussRat(4, 1)), ((0,), -2)])
    assert f.evaluate([2, 1]) == GaussRat(2, 1)
    assert f([0, 0]) == -2


def test_restrict_to_line(z2):
    z1, z2_ = z2
    f = 1 - z1 * z2_
    p = f.restrict_to_line([0, 0], [1, 1])
    assert p == UniPoly([1, 0, -1])
    q = f.restrict_to_line([1, Fraction(1, 2)], [0, 2])
    assert q == UniPoly([Fraction(1, 2), -2])


def test_homogenize_round_trip(z2):
    z1, w = z2
    f = z1 * z1 + 3 * w - 1
    fh = f.homogenize()
    assert fh.nvars == 3
    assert fh.is_homogeneous()
    assert fh.dehomogenize() == f


def test_coefficients_in_splits_selected_variables():
    x, y, w = MultiPoly.variables(3)
    f = x * w * w + y * w - 4
    pieces = f.coefficients_in([2])
    assert sorted(pieces) == [(0,), (1,), (2,)]
    assert pieces[(2,)] == x
    assert pieces[(1,)] == y
    assert pieces[(0,)] == MultiPoly.constant(3, -4)


def test_embed_and_scale_variables(z2):
    z1, w = z2
    f = z1 * w + z1
    g = f.embed(3, [2, 0])
    x, y, z = MultiPoly.variables(3)
    assert g == z * x + z
    assert f.scale_variables([2, -1]) == -2 * z1 * w + 2 * z1


def test_leading_and_dominating_part(z2):
    z1, w = z2
    f = z1 * z1 + 2 * z1 * w + w - 7
    lead, top = f.leading_and_dominating_part()
    assert lead.exponent == (2, 0)
    assert top == z1 * z1 + 2 * z1 * w


def test_unipoly_roots_and_derivatives():
    p = UniPoly.from_roots([1, -2, Fraction(1, 3)])
    assert p.degree == 3
    assert p(Fraction(1, 3)) == 0
    assert p.derivative(3) == UniPoly([6])
    assert p.is_real()
    assert (p * UniPoly([0, 1])).to_multi(2, 1).degree_in(1) == 4


def test_matrix_algebra():
    A = GaussianMatrix([[2, GaussRat(1, 1)], [GaussRat(1, -1), 3]])
    assert A.is_hermitian()
    assert not A.is_real_symmetric()
    assert A.conj_transpose() == A
    assert A * GaussianMatrix.identity(2) == A
    assert A.principal_minor(0) == GaussianMatrix([[3]])
    with pytest.raises(DimensionError):
        GaussianMatrix([[1, 2]])


def test_sympy_bridge(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, complex_coeffs=True)
        expr = f.to_sympy(X[:n])
        assert sympy.expand(expr - to_sympy(f)) == 0
        assert MultiPoly.from_sympy(expr, X[:n]) == f
    assert GaussRat.from_sympy(sympy.Rational(3, 2) - 2 * sympy.I) == GaussRat(Fraction(3, 2), -2)
    with pytest.raises(NotExactError):
        GaussRat.from_sympy(sympy.sqrt(2))
    with pytest.raises(DimensionError):
        MultiPoly.variable(2, 0).to_sympy(X[:1])
    assert GaussianMatrix([[1, I], [-I, 2]]).to_sympy() == sympy.Matrix([[1, sympy.I], [-sympy.I, 2]])
