"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          STABILITY PRESERVERS                                 ║
║                                                                               ║
║  Symbol tests for operators preserving stability and real stability, the      ║
║  duality check, multiplier-sequence structure and finite multipliers,         ║
║  Schur-type compositions, coefficient and curve criteria, strict-preserver    ║
║  tests, dominating parts and the homotopy family of a symbol.                 ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .codec import OperatorDocument, PolyDocument, gauss_pair, rational_string
from .config import SampleConfig
from .errors import NonRealError, NotDiagonalError, PreconditionError, ZeroPolynomialError
from .polycore import I, Exponent, GaussRat, MultiPoly, UniPoly
from .realroots import SignClass, is_hyperbolic, roots_all_same_sign
from .stability import (
    CertifiedPoly,
    LineSampler,
    check_stable,
    check_strictly_stable,
    intersection_property,
)
from .verdicts import (
    CertificateKind,
    CoefficientEntry,
    CoefficientReport,
    DualityReport,
    FiniteMultiplierVerdict,
    MultiplierReport,
    PolyaCurveReport,
    PreserverOutcome,
    PreserverVerdict,
    Refutation,
    SignPattern,
    Slope,
    StabilityClass,
    StabilityVerdict,
    TheoremPath,
    VerdictStatus,
)
from .weylalg import (
    MultiplierData,
    WeylOp,
    adjoint,
    apply,
    op_from_symbol,
    symbol,
    symbol_negate_w,
)

logger = logging.getLogger(__name__)

PULLBACK_MAX_DEGREE = 6
PULLBACK_TRIALS = 32
INNER_TRIALS = 32

_OUTCOMES = {
    VerdictStatus.PROVEN_STABLE: PreserverOutcome.CERTIFIED,
    VerdictStatus.SAMPLED_PASS: PreserverOutcome.SAMPLED_PASS,
    VerdictStatus.REFUTED: PreserverOutcome.REFUTED,
}


def _preserver_class(cls: Union[StabilityClass, str]) -> StabilityClass:
    cls = StabilityClass(cls)
    if cls not in (StabilityClass.HC, StabilityClass.HR):
        raise ValueError(f"preserver classes are HC and HR, got {cls.value}")
    return cls


def _require_nonzero(T: WeylOp) -> None:
    if T.is_zero:
        raise ZeroPolynomialError("the zero operator preserves nothing")


# ══════════════════════════════════════════════════════════════════════════════
#  SYMBOL TEST
# ══════════════════════════════════════════════════════════════════════════════

def _pullback_inputs(T: WeylOp, cls: StabilityClass) -> Iterator[MultiPoly]:
    """Certified-stable test inputs: powers of (z_i + c) and their products over i."""
    n = T.nvars
    shifts: List[Union[int, Fraction, GaussRat]] = [0, 1, -1, 2, Fraction(1, 2)]
    if cls == StabilityClass.HC:
        shifts += [I, 1 + I]
    top = min(max(T.order(), 1) + 3, PULLBACK_MAX_DEGREE)
    zs = MultiPoly.variables(n)
    seen = set()
    for k in range(top + 1):
        for c in shifts:
            factors = [(z + c) ** k for z in zs]
            candidates = list(factors)
            if n > 1:
                candidates.append(math.prod(factors[1:], start=factors[0]))
            for f in candidates:
                if f not in seen:
                    seen.add(f)
                    yield f


def _pull_back(T: WeylOp, cls: StabilityClass, cfg: SampleConfig) -> Optional[Refutation]:
    budget = cfg.with_trials(min(cfg.trials, PULLBACK_TRIALS))
    for f in _pullback_inputs(T, cls):
        image = apply(T, f)
        if image.is_zero:
            continue
        verdict = check_stable(image, cls, budget)
        if verdict.refuted:
            logger.debug("pull-back input %s maps to refuted %s", f, image)
            return Refutation(
                input=PolyDocument.from_poly(f),
                input_certificate=CertificateKind.LINEAR_FACTOR_PRODUCT,
                image=PolyDocument.from_poly(image),
                image_verdict=verdict,
            )
    return None


def certify_preserver(
    T: WeylOp,
    cls: Union[StabilityClass, str] = StabilityClass.HC,
    cfg: Optional[SampleConfig] = None,
    pull_back: bool = True,
) -> PreserverVerdict:
    """
    T preserves (real) stability iff F_T(z, -w) is (real) stable in 2n
    variables. A refuted symbol triggers a search for a concrete certified
    input whose image is refuted.
    """
    cls = _preserver_class(cls)
    cfg = cfg or SampleConfig()
    _require_nonzero(T)
    if cls.is_real and not T.is_real():
        raise NonRealError("real stability preservers have real coefficients")
    negated = symbol_negate_w(T)
    inner = check_stable(negated, cls, cfg)
    outcome = _OUTCOMES[inner.status]
    path = TheoremPath.REAL_SYMBOL_TEST if cls.is_real else TheoremPath.COMPLEX_SYMBOL_TEST
    refutation = None
    attempted = False
    if outcome == PreserverOutcome.REFUTED and pull_back:
        attempted = True
        refutation = _pull_back(T, cls, cfg)
        if refutation is None:
            logger.warning("no certified input with a refuted image found for %r", T)
    return PreserverVerdict(
        theorem_path=path,
        outcome=outcome,
        symbol=PolyDocument.from_poly(negated),
        inner=inner,
        refutation=refutation,
        pullback_attempted=attempted,
    )


def reflected_symbol(T: WeylOp) -> MultiPoly:
    """conj F_T(w, z): the symbol of the adjoint."""
    n = T.nvars
    swap = [n + i for i in range(n)] + list(range(n))
    return symbol(T).embed(2 * n, swap).conjugate()


def duality_check(
    T: WeylOp,
    cls: Union[StabilityClass, str] = StabilityClass.HC,
    cfg: Optional[SampleConfig] = None,
) -> DualityReport:
    """
    Certify T and its adjoint; the two verdicts must agree. The adjoint's
    verdict, carried over to T, is reported as the transferred verdict.
    """
    _require_nonzero(T)
    star = adjoint(T)
    own = certify_preserver(T, cls, cfg, pull_back=False)
    dual = certify_preserver(star, cls, cfg, pull_back=False)
    agree = own.passed == dual.passed
    if not agree:
        logger.warning("duality disagreement: %s vs %s", own.outcome.value, dual.outcome.value)
    transferred = PreserverVerdict(
        theorem_path=TheoremPath.DUALITY_TRANSFER,
        outcome=dual.outcome,
        symbol=dual.symbol,
        inner=dual.inner,
        note="decided on the symbol of the adjoint",
    )
    return DualityReport(
        operator=OperatorDocument.from_op(T),
        adjoint=OperatorDocument.from_op(star),
        operator_verdict=own,
        adjoint_verdict=dual,
        agree=agree,
        reflection_ok=symbol(star) == reflected_symbol(T),
        transferred_verdict=transferred,
    )


# exact certificates in the key class also cover the listed classes
_CONTAINED_IN = {
    StabilityClass.HR: (StabilityClass.HR, StabilityClass.HR_STRICT),
    StabilityClass.HC: (StabilityClass.HC, StabilityClass.HR, StabilityClass.HC_STRICT, StabilityClass.HR_STRICT),
    StabilityClass.HC_STRICT: (StabilityClass.HC_STRICT,),
}

_PRESERVED_CLASS = {
    TheoremPath.REAL_SYMBOL_TEST: StabilityClass.HR,
    TheoremPath.COMPLEX_SYMBOL_TEST: StabilityClass.HC,
    TheoremPath.STRICT_SUFFICIENT: StabilityClass.HC_STRICT,
}


def _preserved_class(preserver: PreserverVerdict) -> StabilityClass:
    if preserver.theorem_path == TheoremPath.DUALITY_TRANSFER and preserver.inner is not None:
        return preserver.inner.class_checked
    return _PRESERVED_CLASS.get(preserver.theorem_path, StabilityClass.HC)


def _input_covers(f: CertifiedPoly, cls: StabilityClass) -> bool:
    """Does the input's exact certificate put it in class `cls`?"""
    if not f.is_exact or f.verdict.class_checked not in _CONTAINED_IN.get(cls, (cls,)):
        return False
    return f.poly.is_real() or not cls.is_real


def certified_image(
    T: WeylOp,
    preserver: PreserverVerdict,
    f: CertifiedPoly,
    cfg: Optional[SampleConfig] = None,
) -> CertifiedPoly:
    """
    T(f) with a certificate: exact when the preserver verdict is an exact
    proof and f is proven to lie in the class T preserves; re-checked by
    sampling otherwise.
    """
    cls = _preserved_class(preserver)
    image = apply(T, f.poly)
    if image.is_zero:
        return CertifiedPoly(image, StabilityVerdict(status=VerdictStatus.PROVEN_ZERO, class_checked=cls))
    if preserver.certified and _input_covers(f, cls):
        verdict = StabilityVerdict(
            status=VerdictStatus.PROVEN_STABLE,
            class_checked=cls,
            certificate=CertificateKind.CERTIFIED_IMAGE,
        )
        return CertifiedPoly(image, verdict)
    verdict = check_stable(image, cls, cfg)
    if preserver.passed and _input_covers(f, cls) and verdict.refuted:
        logger.warning("image of a stable input under a passing preserver was refuted")
    return CertifiedPoly(image, verdict)


def homotopy_operator(
    T: WeylOp,
    mu: Union[Fraction, int, Sequence[Union[Fraction, int]]],
    lam: Union[Fraction, int, Sequence[Union[Fraction, int]]],
) -> WeylOp:
    """op_from_symbol(F_T(mu z, lam w)); scalars apply to every coordinate."""
    n = T.nvars
    mus = [mu] * n if isinstance(mu, (int, Fraction)) else list(mu)
    lams = [lam] * n if isinstance(lam, (int, Fraction)) else list(lam)
    return op_from_symbol(symbol(T).scale_variables(mus + lams))


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIPLIER SEQUENCES
# ══════════════════════════════════════════════════════════════════════════════

def _axis_point(base: Exponent, axis: int, k: int) -> Exponent:
    return base[:axis] + (k,) + base[axis + 1:]


def _slice_ok(values: Sequence[Fraction]) -> bool:
    """Every truncation image T[(1+z)^m] is hyperbolic with same-sign zeros, or zero."""
    for m in range(len(values)):
        image = UniPoly.from_real([math.comb(m, k) * values[k] for k in range(m + 1)])
        if image.is_zero:
            continue
        if not is_hyperbolic(image) or roots_all_same_sign(image) == SignClass.MIXED:
            return False
    return True


def _sign_pattern(lam: MultiplierData) -> SignPattern:
    values = [(alpha, lam(alpha)) for alpha in lam.support()]
    if len({v > 0 for _, v in values}) <= 1:
        return SignPattern.SAME_SIGN
    if len({(v > 0) == (sum(alpha) % 2 == 0) for alpha, v in values}) <= 1:
        return SignPattern.ALTERNATING_SIGN
    return SignPattern.VIOLATED


def _rank_one_factors(lam: MultiplierData) -> Optional[List[List[Fraction]]]:
    """Univariate factors whose product reproduces lam on the box, if they exist."""
    support = lam.support()
    if not support:
        return None
    base = support[0]
    pivot = lam(base)
    factors = [[lam(_axis_point(base, i, k)) for k in range(edge + 1)] for i, edge in enumerate(lam.box)]
    scale = pivot ** (lam.nvars - 1)
    factors[0] = [x / scale for x in factors[0]]
    for alpha in lam.points():
        product = math.prod((factors[i][a] for i, a in enumerate(alpha)), start=Fraction(1))
        if product != lam(alpha):
            return None
    return factors


def multiplier_structure_check(lam: MultiplierData) -> MultiplierReport:
    """Necessary structure of a multiplier sequence restricted to a finite box."""
    support = lam.support()
    if not support:
        raise PreconditionError("multiplier data has no nonzero value")
    n = lam.nvars

    rank_ok = True
    for gamma in lam.points():
        for i, j in itertools.combinations(range(n), 2):
            if gamma[i] + 1 > lam.box[i] or gamma[j] + 1 > lam.box[j]:
                continue
            gi = _axis_point(gamma, i, gamma[i] + 1)
            gj = _axis_point(gamma, j, gamma[j] + 1)
            gij = _axis_point(gi, j, gamma[j] + 1)
            if lam(gamma) * lam(gij) != lam(gi) * lam(gj):
                rank_ok = False
                break
        if not rank_ok:
            break

    lows = [min(a[i] for a in support) for i in range(n)]
    highs = [max(a[i] for a in support) for i in range(n)]
    hull = set(itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))))
    box_ok = hull == set(support)

    base = support[0]
    slices_ok = all(
        _slice_ok([lam(_axis_point(base, i, k)) for k in range(edge + 1)])
        for i, edge in enumerate(lam.box)
    )

    factors = _rank_one_factors(lam) if rank_ok and box_ok else None
    return MultiplierReport(
        rank1_relations_ok=rank_ok,
        support_is_box=box_ok,
        sign_pattern=_sign_pattern(lam),
        univariate_slices_ok=slices_ok,
        factor_decomposition=[[rational_string(x) for x in f] for f in factors] if factors else None,
    )


def finite_multiplier_certify(T: WeylOp) -> FiniteMultiplierVerdict:
    """
    A diagonal operator with symbol g(z_1 w_1, ..., z_n w_n) preserves real
    stability iff g = f_1(t_1) ... f_n(t_n) with every f_i having only real
    nonpositive zeros.
    """
    _require_nonzero(T)
    if not T.is_diagonal():
        raise NotDiagonalError("finite multiplier certification needs a diagonal operator")
    if not T.is_real():
        raise NonRealError("multiplier sequences are real")
    n = T.nvars
    coeffs: Dict[Exponent, Fraction] = {beta: c.re for (_, beta), c in T}
    box = [max(beta[i] for beta in coeffs) for i in range(n)]
    base = min(coeffs)
    pivot = coeffs[base]
    factors = [
        [coeffs.get(_axis_point(base, i, k), Fraction(0)) for k in range(edge + 1)]
        for i, edge in enumerate(box)
    ]
    factors[0] = [x / pivot ** (n - 1) for x in factors[0]]
    for beta in itertools.product(*(range(edge + 1) for edge in box)):
        product = math.prod((factors[i][b] for i, b in enumerate(beta)), start=Fraction(1))
        if product != coeffs.get(beta, Fraction(0)):
            return FiniteMultiplierVerdict(certified=False, rank_one=False, reason="symbol does not factor")

    roots_ok = True
    for f in factors:
        p = UniPoly.from_real(f)
        if not is_hyperbolic(p) or roots_all_same_sign(p) not in (SignClass.ALL_NONPOS, SignClass.NO_ROOTS):
            roots_ok = False
    return FiniteMultiplierVerdict(
        certified=roots_ok,
        rank_one=True,
        factors=[[rational_string(x) for x in f] for f in factors],
        factor_roots_ok=roots_ok,
        reason="" if roots_ok else "a factor has a nonreal or positive zero",
    )


# ══════════════════════════════════════════════════════════════════════════════
#  SCHUR-TYPE COMPOSITION
# ══════════════════════════════════════════════════════════════════════════════

def _require_nonpositive_rooted(f: UniPoly, name: str = "f") -> None:
    if f.is_zero or not f.is_real():
        raise PreconditionError(f"{name} must be a nonzero real polynomial")
    if not is_hyperbolic(f) or roots_all_same_sign(f) not in (SignClass.ALL_NONPOS, SignClass.NO_ROOTS):
        raise PreconditionError(f"{name} must have only real nonpositive zeros")


def schur_composition(
    f: UniPoly, F: MultiPoly, var: int = 0, cfg: Optional[SampleConfig] = None
) -> CertifiedPoly:
    """
    sum_k k! a_k Q_k z_var^k, where f = sum a_k t^k and F = sum Q_k z_var^k.

    The output of a stable F is stable or zero; the attached verdict is the
    re-check of that claim.
    """
    _require_nonpositive_rooted(f)
    if F.is_zero:
        raise ZeroPolynomialError("the composition needs a nonzero polynomial")
    pieces = F.coefficients_in([var])
    out = MultiPoly.zero(F.nvars)
    for (k,), q in pieces.items():
        if k < len(f.coeffs) and f.coeffs[k]:
            weight = f.coeffs[k] * math.factorial(k)
            out = out + q * MultiPoly.variable(F.nvars, var) ** k * weight
    cls = StabilityClass.HR if F.is_real() else StabilityClass.HC
    verdict = check_stable(out, cls, cfg)
    if verdict.refuted:
        logger.warning("Schur composition output refuted; is the input stable?")
    return CertifiedPoly(out, verdict)


def schur_malo_szego(f: UniPoly, g: UniPoly) -> CertifiedPoly:
    """sum_k k! a_k b_k z^k for f with nonpositive zeros and hyperbolic g."""
    if g.is_zero or not g.is_real() or not is_hyperbolic(g):
        raise PreconditionError("g must be hyperbolic")
    return schur_composition(f, g.to_multi(1, 0), 0)


# ══════════════════════════════════════════════════════════════════════════════
#  COEFFICIENT AND CURVE CRITERIA
# ══════════════════════════════════════════════════════════════════════════════

def coefficient_criterion(T: WeylOp, cfg: Optional[SampleConfig] = None) -> CoefficientReport:
    """Every w-coefficient Q_alpha(z) of F_T must be stable; one failure refutes T."""
    _require_nonzero(T)
    n = T.nvars
    F = symbol(T)
    entries = []
    failing = []
    for k, (wexp, q) in enumerate(F.coefficients_in(range(n, 2 * n)).items()):
        q = MultiPoly(n, {e[:n]: c for e, c in q.terms.items()})
        verdict = check_stable(q, StabilityClass.HC, cfg)
        if verdict.refuted:
            failing.append(k)
        entries.append(CoefficientEntry(wexp=list(wexp), coefficient=PolyDocument.from_poly(q), verdict=verdict))
    return CoefficientReport(passed=not failing, entries=entries, failing=failing or None)


def polya_curve(
    b: Sequence[Union[Fraction, int]], f: UniPoly, cfg: Optional[SampleConfig] = None
) -> PolyaCurveReport:
    """
    G(x, y) = sum_{k <= deg f} b_k x^k f^(k)(y), which meets every line of
    positive slope in deg G real points when f is hyperbolic and the b_k come
    from a hyperbolic polynomial with b_0, ..., b_n > 0.
    """
    if f.is_zero or not f.is_real() or not is_hyperbolic(f):
        raise PreconditionError("f must be hyperbolic")
    n = f.degree
    bs = [Fraction(x) for x in b]
    if len(bs) < n + 1:
        raise PreconditionError(f"need at least {n + 1} coefficients b_0..b_{n}")
    if any(x <= 0 for x in bs[: n + 1]):
        raise PreconditionError(f"b_0..b_{n} must be positive")
    if not is_hyperbolic(UniPoly.from_real(bs)):
        raise PreconditionError("the b-polynomial must be hyperbolic")
    x = MultiPoly.variable(2, 0)
    G = MultiPoly.zero(2)
    for k in range(n + 1):
        G = G + (x ** k) * f.derivative(k).to_multi(2, 1) * bs[k]
    report = intersection_property(G, Slope.I_PLUS, cfg)
    return PolyaCurveReport(curve=PolyDocument.from_poly(G), intersection=report)


# ══════════════════════════════════════════════════════════════════════════════
#  STRICT PRESERVERS
# ══════════════════════════════════════════════════════════════════════════════

def _closed_half_plane_point(sampler: LineSampler, trial: int, n: int) -> List[GaussRat]:
    if trial == 0:
        return [GaussRat(0)] * n
    point = []
    for _ in range(n):
        re = sampler.rational(*sampler.cfg.coordinate_box)
        on_axis = sampler.rng.random() < sampler.cfg.boundary_probability
        point.append(GaussRat(re, 0 if on_axis else sampler.positive()))
    return point


def strict_necessary_check(T: WeylOp, cfg: Optional[SampleConfig] = None) -> PreserverVerdict:
    """
    Necessary condition for strict preservers: for z0 in the closed upper
    half-plane, w -> F_T(z0, -w) is not identically zero and has no zero
    with every Im(w_k) > 0.
    """
    _require_nonzero(T)
    cfg = cfg or SampleConfig()
    n = T.nvars
    negated = symbol_negate_w(T)
    inner_cfg = cfg.with_trials(min(cfg.trials, INNER_TRIALS))
    sampler = LineSampler(n, cfg)
    for trial in range(cfg.trials):
        z0 = _closed_half_plane_point(sampler, trial, n)
        g = negated
        for c in z0:
            g = g.substitute_constant(0, c)
        inner = check_stable(g, StabilityClass.HC, inner_cfg)
        if not inner.passed:
            logger.debug("strict necessary condition fails at z0 = %s", [str(c) for c in z0])
            return PreserverVerdict(
                theorem_path=TheoremPath.STRICT_NECESSARY,
                outcome=PreserverOutcome.REFUTED,
                symbol=PolyDocument.from_poly(negated),
                inner=inner,
                boundary_point=[gauss_pair(c) for c in z0],
                note="symbol vanishes identically in w" if g.is_zero else "",
            )
    return PreserverVerdict(
        theorem_path=TheoremPath.STRICT_NECESSARY,
        outcome=PreserverOutcome.SAMPLED_PASS,
        symbol=PolyDocument.from_poly(negated),
        note=f"{cfg.trials} boundary points",
    )


def strict_sufficient_check(
    T: WeylOp,
    cls: Union[StabilityClass, str] = StabilityClass.HC,
    cfg: Optional[SampleConfig] = None,
) -> PreserverVerdict:
    """
    Sufficient condition for strict preservers: F_T(z, -w) strictly stable.
    In two or more variables strict real stability is strict stability with
    real coefficients, so both classes run the same test. A failure is
    inconclusive.
    """
    cls = _preserver_class(cls)
    _require_nonzero(T)
    if cls.is_real and not T.is_real():
        raise NonRealError("real strict preservers have real coefficients")
    negated = symbol_negate_w(T)
    inner = check_strictly_stable(negated, cfg, StabilityClass.HC_STRICT)
    if inner.status == VerdictStatus.PROVEN_STABLE:
        outcome = PreserverOutcome.CERTIFIED
    elif inner.status == VerdictStatus.SAMPLED_PASS:
        outcome = PreserverOutcome.SAMPLED_PASS
    else:
        outcome = PreserverOutcome.INCONCLUSIVE
    return PreserverVerdict(
        theorem_path=TheoremPath.STRICT_SUFFICIENT,
        outcome=outcome,
        symbol=PolyDocument.from_poly(negated),
        inner=inner,
    )


# ══════════════════════════════════════════════════════════════════════════════
#  DOMINATING PART
# ══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class DominatingPart:
    """The shift kappa, the diagonal operator T_kappa and the terms of T with that shift."""

    kappa: Tuple[int, ...]
    diagonal: WeylOp
    group: WeylOp


def dominating_part(T: WeylOp) -> DominatingPart:
    """
    Write T = sum_gamma z^gamma T_gamma with gamma = alpha - beta; kappa is
    the lexicographically largest gamma of largest coordinate sum.
    """
    _require_nonzero(T)
    shifts: Dict[Tuple[int, ...], list] = {}
    for (alpha, beta), c in T:
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        shifts.setdefault(gamma, []).append(((alpha, beta), c))
    top = max(sum(g) for g in shifts)
    kappa = max(g for g in shifts if sum(g) == top)
    group = shifts[kappa]
    diagonal = WeylOp(T.nvars, [((beta, beta), c) for (_, beta), c in group])
    return DominatingPart(kappa=kappa, diagonal=diagonal, group=WeylOp(T.nvars, group))
