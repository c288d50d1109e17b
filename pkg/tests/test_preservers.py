"""Tests for preserver certification, multipliers, compositions and strict preservers."""

import math
from fractions import Fraction

import pytest

from src.config import SampleConfig
from src.errors import NonRealError, NotDiagonalError, PreconditionError, ZeroPolynomialError
from src.generator import random_hermitian, random_psd, random_rational
from src.pencils import certify_pencil_operator
from src.polycore import GaussRat, I, MultiPoly, UniPoly
from src.preservers import (
    certified_image,
    certify_preserver,
    coefficient_criterion,
    dominating_part,
    duality_check,
    finite_multiplier_certify,
    homotopy_operator,
    multiplier_structure_check,
    polya_curve,
    reflected_symbol,
    schur_composition,
    schur_malo_szego,
    strict_necessary_check,
    strict_sufficient_check,
)
from src.realroots import SignClass, is_hyperbolic, roots_all_same_sign
from src.stability import CertifiedPoly, check_stable, check_strictly_stable
from src.verdicts import (
    CertificateKind,
    PreserverOutcome,
    SignPattern,
    StabilityClass,
    TheoremPath,
    VerdictStatus,
)
from src.weylalg import (
    MultiplierData,
    WeylOp,
    adjoint,
    apply,
    compose,
    derivative_operator,
    multiplication_operator,
    polynomial_in_derivatives,
    sequence_from_diag,
    symbol,
)


def d_poly(*coeffs) -> WeylOp:
    return polynomial_in_derivatives(UniPoly.from_real([Fraction(c) for c in coeffs]))


def z_op() -> WeylOp:
    return multiplication_operator(MultiPoly.variable(1, 0))


# ══════════════════════════════════════════════════════════════════════════════
#  SYMBOL TEST
# ══════════════════════════════════════════════════════════════════════════════

def test_hyperbolic_polynomial_in_d_is_certified(cfg):
    T = d_poly(-1, 0, 1)
    for cls in (StabilityClass.HC, StabilityClass.HR):
        verdict = certify_preserver(T, cls, cfg)
        assert verdict.outcome == PreserverOutcome.CERTIFIED
        assert verdict.inner.certificate == CertificateKind.UNIVARIATE
    assert certify_preserver(T, StabilityClass.HR, cfg).theorem_path == TheoremPath.REAL_SYMBOL_TEST


def test_theorem_path_wire_names(cfg):
    T = d_poly(-1, 0, 1)
    assert certify_preserver(T, StabilityClass.HC, cfg).model_dump(mode="json")["theorem_path"] == "SymbolTest_T13"
    assert certify_preserver(T, StabilityClass.HR, cfg).model_dump(mode="json")["theorem_path"] == "SymbolTest_T14"
    assert strict_necessary_check(T, cfg).theorem_path.value == "StrictNecessary_T62"
    assert strict_sufficient_check(T, StabilityClass.HC, cfg).theorem_path.value == "StrictSufficient_T66"


def test_refuted_operator_pulls_back_a_failing_input(cfg):
    T = d_poly(1, 0, 1)
    verdict = certify_preserver(T, StabilityClass.HR, cfg)
    assert verdict.refuted
    assert verdict.pullback_attempted
    refutation = verdict.refutation
    assert refutation is not None
    assert refutation.input_certificate == CertificateKind.LINEAR_FACTOR_PRODUCT
    f = refutation.input.to_poly()
    image = refutation.image.to_poly()
    assert apply(T, f) == image
    assert refutation.image_verdict.refuted
    assert check_stable(f, StabilityClass.HR).passed


def test_complex_operator_certified(cfg):
    T = WeylOp(1, [(((0,), (0,)), 1), (((0,), (1,)), I)])
    assert certify_preserver(T, StabilityClass.HC, cfg).certified
    with pytest.raises(NonRealError):
        certify_preserver(T, StabilityClass.HR, cfg)


def test_certify_preserver_preconditions(cfg):
    with pytest.raises(ZeroPolynomialError):
        certify_preserver(WeylOp.zero(1), StabilityClass.HC, cfg)
    with pytest.raises(ValueError):
        certify_preserver(d_poly(0, 1), StabilityClass.HC_STRICT, cfg)


def test_pull_back_can_be_skipped(cfg):
    verdict = certify_preserver(d_poly(1, 0, 1), StabilityClass.HR, cfg, pull_back=False)
    assert verdict.refuted
    assert not verdict.pullback_attempted
    assert verdict.refutation is None


def test_duality_of_d_and_z(cfg):
    report = duality_check(derivative_operator(1, 0), StabilityClass.HC, cfg)
    assert report.agree
    assert report.reflection_ok
    assert report.adjoint.to_op() == z_op()
    transferred = report.transferred_verdict
    assert transferred.theorem_path == TheoremPath.DUALITY_TRANSFER
    assert transferred.outcome == report.adjoint_verdict.outcome
    assert transferred.symbol == report.adjoint_verdict.symbol
    assert transferred.model_dump(mode="json")["theorem_path"] == "DualityTransfer_T16"


def test_reflected_symbol_is_adjoint_symbol():
    T = WeylOp(2, [(((1, 0), (0, 1)), GaussRat(1, 2)), (((0, 0), (2, 0)), -3)])
    assert symbol(adjoint(T)) == reflected_symbol(T)


@pytest.mark.slow
def test_duality_agreement_on_constructed_corpus(rng):
    cfg = SampleConfig(trials=24, seed=5)
    for preserves in (True, False):
        for _ in range(100):
            roots = [Fraction(int(rng.integers(-6, 7)), 2) for _ in range(int(rng.integers(1, 4)))]
            q = UniPoly.from_roots([int(rng.integers(-4, 5)) for _ in range(int(rng.integers(0, 3)))])
            p = UniPoly.from_roots(roots)
            if not preserves:
                a = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 3)))
                p = p * UniPoly.from_real([a * a, 0, 1])
            T = compose(multiplication_operator(q.to_multi(1, 0)), polynomial_in_derivatives(p))
            report = duality_check(T, StabilityClass.HR, cfg)
            assert report.agree
            assert report.reflection_ok
            assert report.operator_verdict.passed == preserves


# ══════════════════════════════════════════════════════════════════════════════
#  CERTIFIED IMAGES AND HOMOTOPY
# ══════════════════════════════════════════════════════════════════════════════

def test_certified_image_is_exact(cfg):
    T = d_poly(-1, 0, 1)
    preserver = certify_preserver(T, StabilityClass.HR, cfg)
    z = MultiPoly.variable(1, 0)
    f = z ** 3 - z
    source = CertifiedPoly(f, check_stable(f, StabilityClass.HR))
    image = certified_image(T, preserver, source, cfg)
    assert image.poly == 6 * z - z ** 3 + z
    assert image.verdict.certificate == CertificateKind.CERTIFIED_IMAGE
    assert image.verdict.class_checked == StabilityClass.HR


def test_certified_image_of_zero(cfg):
    T = derivative_operator(1, 0)
    preserver = certify_preserver(T, StabilityClass.HC, cfg)
    one = MultiPoly.one(1)
    image = certified_image(T, preserver, CertifiedPoly(one, check_stable(one)), cfg)
    assert image.verdict.status == VerdictStatus.PROVEN_ZERO


def test_certified_image_needs_an_input_of_the_preserved_class(cfg):
    T = d_poly(-1, 0, 1)
    preserver = certify_preserver(T, StabilityClass.HR, cfg)
    assert preserver.certified
    z = MultiPoly.variable(1, 0)
    f = z + I
    source = CertifiedPoly(f, check_stable(f, StabilityClass.HC))
    assert source.is_exact
    image = certified_image(T, preserver, source, cfg)
    assert image.poly == -z - I
    assert image.verdict.certificate != CertificateKind.CERTIFIED_IMAGE
    assert image.verdict.refuted
    assert image.verdict == check_stable(image.poly, StabilityClass.HR, cfg)


def test_real_stable_input_carries_into_the_complex_class(cfg):
    T = d_poly(-1, 0, 1)
    preserver = certify_preserver(T, StabilityClass.HC, cfg)
    z = MultiPoly.variable(1, 0)
    f = z * z - 1
    image = certified_image(T, preserver, CertifiedPoly(f, check_stable(f, StabilityClass.HR)), cfg)
    assert image.verdict.certificate == CertificateKind.CERTIFIED_IMAGE
    assert image.verdict.class_checked == StabilityClass.HC


def test_homotopy_scalars_broadcast():
    T = WeylOp(1, [(((1,), (1,)), 1), (((0,), (2,)), 1)])
    H = homotopy_operator(T, Fraction(1, 2), 3)
    assert H == WeylOp(1, [(((1,), (1,)), Fraction(3, 2)), (((0,), (2,)), 9)])
    assert homotopy_operator(T, [1], [1]) == T


@pytest.mark.slow
def test_homotopy_keeps_preservers_certified(rng):
    cfg = SampleConfig(trials=24, seed=9)
    grid = [Fraction(k, 4) for k in range(5)]
    preservers = []
    while len(preservers) < 10:
        roots = [Fraction(int(rng.integers(-6, 7)), 2) for _ in range(int(rng.integers(1, 4)))]
        preservers.append(polynomial_in_derivatives(UniPoly.from_roots(roots)))
    while len(preservers) < 20:
        A, B = random_psd(rng, 2, complex_entries=False), random_psd(rng, 2, complex_entries=False)
        try:
            C = random_psd(rng, 2, complex_entries=False) - random_psd(rng, 2, complex_entries=False)
            T, _ = certify_pencil_operator(A, B, C)
        except ZeroPolynomialError:
            continue
        preservers.append(T)
    for T in preservers:
        assert certify_preserver(T, StabilityClass.HR, cfg).passed
        for mu in grid:
            for lam in grid:
                H = homotopy_operator(T, mu, lam)
                if H.is_zero:
                    continue
                assert certify_preserver(H, StabilityClass.HR, cfg, pull_back=False).passed


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIPLIER SEQUENCES
# ══════════════════════════════════════════════════════════════════════════════

def test_constant_multiplier_passes():
    report = multiplier_structure_check(MultiplierData.from_function((3, 2), lambda a: 1))
    assert report.passed
    assert report.sign_pattern == SignPattern.SAME_SIGN
    assert report.factor_decomposition is not None


def test_product_multiplier_passes():
    lam = MultiplierData.from_function((3, 3), lambda a: a[0] * a[1])
    report = multiplier_structure_check(lam)
    assert report.rank1_relations_ok
    assert report.support_is_box
    assert report.univariate_slices_ok
    assert report.passed


def test_rank_one_violation():
    lam = MultiplierData((1, 1), {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2})
    report = multiplier_structure_check(lam)
    assert not report.rank1_relations_ok
    assert report.factor_decomposition is None
    assert not report.passed


def test_alternating_and_violated_sign_patterns():
    alternating = MultiplierData.from_function((3,), lambda a: (-1) ** a[0])
    assert multiplier_structure_check(alternating).sign_pattern == SignPattern.ALTERNATING_SIGN
    violated = MultiplierData((3,), {(0,): 1, (1,): -1, (2,): -1, (3,): 1})
    assert multiplier_structure_check(violated).sign_pattern == SignPattern.VIOLATED


def test_gappy_support_is_not_a_box():
    lam = MultiplierData((3,), {(0,): 1, (2,): 1})
    report = multiplier_structure_check(lam)
    assert not report.support_is_box


def test_empty_multiplier_rejected():
    with pytest.raises(PreconditionError):
        multiplier_structure_check(MultiplierData((2,), {}))


def test_finite_multiplier_examples():
    bad = WeylOp(1, [(((0,), (0,)), 1), (((1,), (1,)), -1)])
    verdict = finite_multiplier_certify(bad)
    assert not verdict.certified
    assert verdict.rank_one

    product = WeylOp(2, [
        (((0, 0), (0, 0)), 1),
        (((1, 0), (1, 0)), 1),
        (((0, 1), (0, 1)), 1),
        (((1, 1), (1, 1)), 1),
    ])
    good = finite_multiplier_certify(product)
    assert good.certified
    assert good.factors == [["1", "1"], ["1", "1"]]

    coupled = WeylOp(2, [(((0, 0), (0, 0)), 1), (((1, 1), (1, 1)), 1)])
    assert not finite_multiplier_certify(coupled).rank_one


def test_finite_multiplier_preconditions():
    with pytest.raises(NotDiagonalError):
        finite_multiplier_certify(derivative_operator(1, 0))
    with pytest.raises(NonRealError):
        finite_multiplier_certify(WeylOp(1, [(((1,), (1,)), I)]))
    with pytest.raises(ZeroPolynomialError):
        finite_multiplier_certify(WeylOp.zero(1))


def _truncations_ok(T: WeylOp, top: int = 12) -> bool:
    lam = sequence_from_diag(T, (top,))
    for m in range(top + 1):
        image = UniPoly.from_real([math.comb(m, k) * lam((k,)) for k in range(m + 1)])
        if image.is_zero:
            continue
        if not is_hyperbolic(image) or roots_all_same_sign(image) == SignClass.MIXED:
            return False
    return True


def test_finite_multiplier_agrees_with_truncation_images():
    """Every monic f with 1..3 integer roots in [-3, 3]; the symbol is f(zw)."""
    seen = 0
    for degree in range(1, 4):
        for roots in _root_multisets(degree):
            f = UniPoly.from_roots(roots)
            T = WeylOp(1, [(((k,), (k,)), c) for k, c in enumerate(f.coeffs)])
            assert finite_multiplier_certify(T).certified == _truncations_ok(T)
            seen += 1
    assert seen == 7 + 28 + 84


def _root_multisets(degree: int):
    def rec(start: int, left: int):
        if not left:
            yield []
            return
        for r in range(start, 4):
            for rest in rec(r, left - 1):
                yield [r] + rest

    return rec(-3, degree)


# ══════════════════════════════════════════════════════════════════════════════
#  COMPOSITIONS AND CURVES
# ══════════════════════════════════════════════════════════════════════════════

def test_schur_composition():
    z = MultiPoly.variable(1, 0)
    out = schur_composition(UniPoly.from_real([1, 1]), (1 + z) ** 2)
    assert out.poly == 1 + 2 * z
    assert out.verdict.passed


def test_schur_composition_acts_on_one_variable(cfg):
    x, y = MultiPoly.variables(2)
    F = (1 + x) * (2 + y) * (y - 1)
    out = schur_composition(UniPoly.from_real([1, 2]), F, 1, cfg)
    assert out.poly == (1 + x) * (2 * y - 2)
    assert not out.verdict.refuted


def test_schur_malo_szego():
    out = schur_malo_szego(UniPoly.from_roots([-1, -1]), UniPoly.from_roots([1, 3]))
    z = MultiPoly.variable(1, 0)
    assert out.poly == 3 - 8 * z + 2 * z * z
    assert out.verdict.passed


def test_schur_preconditions():
    z = MultiPoly.variable(1, 0)
    with pytest.raises(PreconditionError):
        schur_composition(UniPoly.from_roots([1]), z + 1)
    with pytest.raises(ZeroPolynomialError):
        schur_composition(UniPoly.from_roots([-1]), MultiPoly.zero(1))
    with pytest.raises(PreconditionError):
        schur_malo_szego(UniPoly.from_roots([-1]), UniPoly.from_real([1, 0, 1]))


def test_coefficient_criterion(cfg):
    z = MultiPoly.variable(1, 0)
    assert coefficient_criterion(z_op() - derivative_operator(1, 0), cfg).passed
    report = coefficient_criterion(multiplication_operator(z * z + 1), cfg)
    assert not report.passed
    assert report.failing == [0]


def test_polya_curve(cfg):
    report = polya_curve([1, 2, 1], UniPoly.from_real([-1, 0, 1]), cfg)
    x, y = MultiPoly.variables(2)
    assert report.curve.to_poly() == y * y + 4 * x * y + 2 * x * x - 1
    assert report.intersection.passed


def test_polya_curve_preconditions(cfg):
    f = UniPoly.from_real([-1, 0, 1])
    with pytest.raises(PreconditionError):
        polya_curve([1, 2], f, cfg)
    with pytest.raises(PreconditionError):
        polya_curve([1, -2, 1], f, cfg)
    with pytest.raises(PreconditionError):
        polya_curve([1, 2, 1], UniPoly.from_real([1, 0, 1]), cfg)
    with pytest.raises(PreconditionError):
        polya_curve([1, 1, 1], f, cfg)


# ══════════════════════════════════════════════════════════════════════════════
#  STRICT PRESERVERS AND DOMINATING PART
# ══════════════════════════════════════════════════════════════════════════════

def test_identity_is_a_strict_preserver(cfg):
    verdict = strict_sufficient_check(WeylOp.identity(1), StabilityClass.HC, cfg)
    assert verdict.outcome == PreserverOutcome.CERTIFIED


def test_derivative_passes_necessary_but_not_sufficient(cfg):
    d = derivative_operator(1, 0)
    assert strict_necessary_check(d, cfg).outcome == PreserverOutcome.SAMPLED_PASS
    assert strict_sufficient_check(d, StabilityClass.HC, cfg).outcome == PreserverOutcome.INCONCLUSIVE


def test_necessary_check_is_not_sufficient(cfg):
    z = MultiPoly.variable(1, 0)
    S = multiplication_operator(2 * z + 1) + compose(multiplication_operator(z * z + z), derivative_operator(1, 0))
    assert strict_necessary_check(S, cfg).outcome == PreserverOutcome.SAMPLED_PASS
    image = apply(S, MultiPoly.one(1))
    assert image == 2 * z + 1
    assert check_strictly_stable(image, cfg).refuted


def test_necessary_check_refutes_at_a_boundary_point(cfg):
    z = MultiPoly.variable(1, 0)
    T = multiplication_operator(z)
    verdict = strict_necessary_check(T, cfg)
    assert verdict.refuted
    assert verdict.boundary_point == [("0", "0")]
    assert verdict.note


def test_strict_sufficient_requires_real_operator_for_hr(cfg):
    with pytest.raises(NonRealError):
        strict_sufficient_check(WeylOp(1, [(((0,), (0,)), I)]), StabilityClass.HR, cfg)


def test_dominating_part():
    T = WeylOp(1, [(((2,), (1,)), 1), (((1,), (2,)), 1)])
    part = dominating_part(T)
    assert part.kappa == (1,)
    assert part.diagonal == WeylOp(1, [(((1,), (1,)), 1)])
    assert part.group == WeylOp(1, [(((2,), (1,)), 1)])

    d = dominating_part(derivative_operator(1, 0))
    assert d.kappa == (-1,)
    assert d.diagonal == WeylOp(1, [(((1,), (1,)), 1)])
    assert d.group == derivative_operator(1, 0)


@pytest.mark.slow
def test_dominating_parts_of_certified_operators_are_multipliers(rng):
    checked = 0
    for _ in range(40):
        order = int(rng.integers(1, 4))
        A = random_psd(rng, order, complex_entries=False)
        B = random_psd(rng, order, complex_entries=False)
        C = random_hermitian(rng, order, complex_entries=False)
        try:
            T, verdict = certify_pencil_operator(A, B, C, random_rational(rng) or Fraction(1))
        except ZeroPolynomialError:
            continue
        assert verdict.outcome == PreserverOutcome.CERTIFIED
        # the square of a preserver is a preserver with a richer shift group
        for op in (T, compose(T, T)):
            part = dominating_part(op)
            assert part.diagonal.is_diagonal()
            finite = finite_multiplier_certify(part.diagonal)
            assert finite.certified, finite.reason
            assert multiplier_structure_check(sequence_from_diag(part.diagonal)).passed
        checked += 1
    assert checked > 0
