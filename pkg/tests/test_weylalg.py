"""Tests for Weyl-algebra operators, symbols, products and multiplier data."""

import itertools
from fractions import Fraction

import pytest

from src.config import SampleConfig
from src.errors import DimensionError, NonRealError, NotDiagonalError
from src.generator import random_hermitian, random_psd
from src.pencils import certify_pencil_operator
from src.polycore import GaussRat, I, MultiPoly, UniPoly
from src.stability import sample_stable
from src.verdicts import StabilityClass
from src.weylalg import (
    MultiplierData,
    WeylOp,
    adjoint,
    apply,
    compose,
    derivative_operator,
    diag_from_sequence,
    multiplication_operator,
    op_from_symbol,
    polynomial_in_derivatives,
    sequence_from_diag,
    star_product,
    symbol,
    symbol_negate_w,
)


def random_op(rng, nvars: int, order: int = 3, terms: int = 4) -> WeylOp:
    out = []
    for _ in range(terms):
        alpha = [int(k) for k in rng.integers(0, order + 1, size=nvars)]
        beta = [int(k) for k in rng.integers(0, order + 1, size=nvars)]
        out.append(((alpha, beta), int(rng.integers(-3, 4))))
    return WeylOp(nvars, out)


def random_complex_op(rng, nvars: int, order: int = 2, terms: int = 3) -> WeylOp:
    return random_op(rng, nvars, order, terms) + random_op(rng, nvars, order, terms).scale(I)


def monomials(nvars: int, degree: int):
    for e in itertools.product(range(degree + 1), repeat=nvars):
        if sum(e) <= degree:
            yield MultiPoly.monomial(e)


def test_apply_term_by_term():
    z, = MultiPoly.variables(1)
    T = WeylOp(1, [(((1,), (2,)), 1), (((0,), (0,)), 3)])
    assert apply(T, z ** 3) == 6 * z ** 2 + 3 * z ** 3
    assert T(MultiPoly.one(1)) == 3


def test_symbol_round_trip_and_negation():
    T = WeylOp(1, [(((2,), (1,)), 5), (((0,), (2,)), GaussRat(1, 1))])
    F = symbol(T)
    z, w = MultiPoly.variables(2)
    assert F == 5 * z * z * w + GaussRat(1, 1) * w * w
    assert op_from_symbol(F) == T
    assert symbol_negate_w(T) == -5 * z * z * w + GaussRat(1, 1) * w * w
    with pytest.raises(DimensionError):
        op_from_symbol(MultiPoly.variable(3, 0))


def test_constructors():
    x, y = MultiPoly.variables(2)
    M = multiplication_operator(x * y + 1)
    assert M(x) == x * x * y + x
    D = derivative_operator(2, 1, 2)
    assert D(y ** 3 * x) == 6 * y * x
    P = polynomial_in_derivatives(UniPoly.from_real([-1, 0, 1]))
    z, = MultiPoly.variables(1)
    assert P(z ** 2) == 2 - z ** 2
    with pytest.raises(DimensionError):
        derivative_operator(2, 2)


def test_commutator_of_d_and_z():
    z = multiplication_operator(MultiPoly.variable(1, 0))
    d = derivative_operator(1, 0)
    assert compose(d, z) - compose(z, d) == WeylOp.identity(1)


def test_star_product_of_z_and_w():
    z, w = MultiPoly.variables(2)
    assert star_product(z, w) == z * w - 1
    assert star_product(w, z) == z * w


def test_adjoint():
    d = derivative_operator(1, 0)
    assert adjoint(d) == multiplication_operator(MultiPoly.variable(1, 0))
    T = WeylOp(2, [(((1, 0), (0, 2)), GaussRat(2, -3))])
    assert adjoint(T) == WeylOp(2, [(((0, 2), (1, 0)), GaussRat(2, 3))])
    assert adjoint(adjoint(T)) == T


def test_operator_arithmetic():
    a = WeylOp(1, [(((1,), (0,)), 1)])
    b = WeylOp(1, [(((1,), (0,)), -1), (((0,), (1,)), I)])
    assert (a + b) == WeylOp(1, [(((0,), (1,)), I)])
    assert (a - a).is_zero
    assert (2 * a).terms[((1,), (0,))] == 2
    assert not b.is_real()
    assert a.order() == 0
    with pytest.raises(DimensionError):
        a + WeylOp.identity(2)


def test_composition_matches_monomial_action(rng):
    """Symbol-product composition agrees with applying S after T on monomials."""
    for _ in range(100):
        n = int(rng.integers(1, 3))
        S, T = random_op(rng, n), random_op(rng, n)
        ST = compose(S, T)
        for m in monomials(n, 8):
            assert apply(ST, m) == apply(S, apply(T, m))



def test_composition_is_associative(rng):
    for _ in range(40):
        n = int(rng.integers(1, 3))
        S, T, U = (random_complex_op(rng, n) for _ in range(3))
        assert compose(compose(S, T), U) == compose(S, compose(T, U))


def test_adjoint_reverses_composition(rng):
    for _ in range(40):
        n = int(rng.integers(1, 3))
        S, T = random_complex_op(rng, n), random_complex_op(rng, n)
        assert adjoint(compose(S, T)) == compose(adjoint(T), adjoint(S))


def test_adjoint_is_conjugate_linear(rng):
    a, b = GaussRat(2, -1), GaussRat(Fraction(1, 3), 4)
    for _ in range(20):
        S, T = random_complex_op(rng, 2), random_complex_op(rng, 2)
        lhs = adjoint(S.scale(a) + T.scale(b))
        assert lhs == adjoint(S).scale(a.conjugate()) + adjoint(T).scale(b.conjugate())


def test_symbol_and_inverse_are_linear(rng):
    a, b = GaussRat(Fraction(-3, 2), 1), GaussRat(0, 5)
    for _ in range(20):
        n = int(rng.integers(1, 3))
        S, T = random_complex_op(rng, n), random_complex_op(rng, n)
        FS, FT = symbol(S), symbol(T)
        assert symbol(S.scale(a) + T.scale(b)) == FS.scale(a) + FT.scale(b)
        assert op_from_symbol(FS.scale(a) + FT.scale(b)) == S.scale(a) + T.scale(b)
        assert op_from_symbol(FT) == T


def test_star_product_is_the_reversed_composition_symbol(rng):
    """Star products of negated-w symbols give the negated-w symbol of TS."""
    for _ in range(40):
        n = int(rng.integers(1, 3))
        S, T = random_complex_op(rng, n), random_complex_op(rng, n)
        star = star_product(symbol_negate_w(S), symbol_negate_w(T))
        assert star == symbol_negate_w(compose(T, S))


def test_multiplier_data_and_diagonal_bridge():
    lam = MultiplierData.from_function((4,), lambda a: a[0] * a[0] + 1)
    T = diag_from_sequence(lam)
    assert T.is_diagonal()
    z, = MultiPoly.variables(1)
    for k in range(5):
        assert apply(T, z ** k) == (k * k + 1) * z ** k
    assert sequence_from_diag(T, (4,)) == lam


def test_multiplier_data_two_variables():
    lam = MultiplierData.from_function((2, 3), lambda a: Fraction(a[0] + 1, a[1] + 1))
    T = diag_from_sequence(lam)
    x, y = MultiPoly.variables(2)
    assert apply(T, x ** 2 * y ** 3) == Fraction(3, 4) * x ** 2 * y ** 3
    assert sequence_from_diag(T, lam.box) == lam
    assert lam.support()[0] == (0, 0)
    with pytest.raises(DimensionError):
        lam((3, 0))


def test_sequence_from_diag_preconditions():
    with pytest.raises(NotDiagonalError):
        sequence_from_diag(derivative_operator(1, 0))
    with pytest.raises(NonRealError):
        sequence_from_diag(WeylOp(1, [(((1,), (1,)), I)]))


@pytest.mark.slow
def test_star_products_of_certified_preservers_are_real_stable(rng):
    cfg = SampleConfig(trials=64, seed=11)
    checked = 0
    for _ in range(25):
        ops = []
        for _ in range(2):
            order = int(rng.integers(1, 3))
            A = random_psd(rng, order, complex_entries=False)
            B = random_psd(rng, order, complex_entries=False)
            C = random_hermitian(rng, order, complex_entries=False)
            try:
                ops.append(certify_pencil_operator(A, B, C))
            except ValueError:
                break
        if len(ops) < 2:
            continue
        (S, _), (T, _) = ops
        star = star_product(symbol_negate_w(S), symbol_negate_w(T))
        assert star == symbol_negate_w(compose(T, S))
        verdict = sample_stable(star, StabilityClass.HR, cfg)
        assert verdict.passed, verdict.witness
        checked += 1
    assert checked > 0
