"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          MULTIVARIATE STABILITY                               ║
║                                                                               ║
║  Exact deciders where one exists (constants, one active variable, real        ║
║  multi-affine polynomials in two variables) and a seeded rational             ║
║  line sampler everywhere else. Sampling can refute with a witness line but    ║
║  never proves: its pass is reported as SampledPass.                           ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .codec import gauss_pair, rational_string
from .config import SampleConfig
from .errors import DimensionError, NonRealError, ZeroPolynomialError
from .polycore import I, MultiPoly, UniPoly
from .realroots import (
    is_hyperbolic,
    is_stable_complex,
    is_strictly_hyperbolic,
    is_strictly_stable_univariate,
    isolate_real_roots,
    refine_root,
)
from .verdicts import (
    CertificateKind,
    FailureKind,
    IntersectionReport,
    IntersectionWitness,
    LineWitness,
    Slope,
    StabilityClass,
    StabilityVerdict,
    VerdictStatus,
)

logger = logging.getLogger(__name__)

Line = Tuple[List[Fraction], List[Fraction]]

POINT_LINES = 32
POINT_WIDTH = Fraction(1, 1024)


@dataclass(frozen=True)
class CertifiedPoly:
    """A polynomial together with the verdict that vouches for it."""

    poly: MultiPoly
    verdict: StabilityVerdict

    @property
    def is_exact(self) -> bool:
        return self.verdict.status == VerdictStatus.PROVEN_STABLE


# ══════════════════════════════════════════════════════════════════════════════
#  LINE SAMPLER
# ══════════════════════════════════════════════════════════════════════════════

class LineSampler:
    """
    Seeded source of rational lines alpha + v t.

    Trial 0 is always the diagonal through the origin (alpha = 0, v = 1).
    Later trials draw alpha from the coordinate box and v from the
    half-open direction box. With `allow_boundary`, direction coordinates
    are zeroed with the configured probability (never all of them).
    """

    def __init__(self, nvars: int, cfg: SampleConfig, allow_boundary: bool = False):
        self.nvars = nvars
        self.cfg = cfg
        self.allow_boundary = allow_boundary
        self.rng = np.random.default_rng(cfg.seed)

    def rational(self, lo: int, hi: int) -> Fraction:
        q = int(self.rng.integers(1, self.cfg.denominator_bound + 1))
        return Fraction(int(self.rng.integers(lo * q, hi * q + 1)), q)

    def positive(self) -> Fraction:
        lo, hi = self.cfg.v_box
        q = int(self.rng.integers(1, self.cfg.denominator_bound + 1))
        return Fraction(int(self.rng.integers(lo * q + 1, hi * q + 1)), q)

    def sample(self, trial: int) -> Line:
        n = self.nvars
        if trial == 0:
            return [Fraction(0)] * n, [Fraction(1)] * n
        alpha = [self.rational(*self.cfg.coordinate_box) for _ in range(n)]
        v = [self.positive() for _ in range(n)]
        if self.allow_boundary and n > 1:
            mask = self.rng.random(n) < self.cfg.boundary_probability
            if mask.all():
                mask[int(self.rng.integers(n))] = False
            v = [Fraction(0) if hit else x for hit, x in zip(mask, v)]
        return alpha, v

    def lines(self, trials: int) -> Iterator[Tuple[int, List[Fraction], List[Fraction]]]:
        for trial in range(trials):
            alpha, v = self.sample(trial)
            yield trial, alpha, v


# ══════════════════════════════════════════════════════════════════════════════
#  VERDICT HELPERS
# ══════════════════════════════════════════════════════════════════════════════

def line_witness(
    alpha: Sequence[Fraction],
    v: Sequence[Fraction],
    failure: FailureKind,
    p: UniPoly,
    trial: Optional[int] = None,
) -> LineWitness:
    return LineWitness(
        trial=trial,
        alpha=[rational_string(a) for a in alpha],
        v=[rational_string(b) for b in v],
        failure=failure,
        restriction=[gauss_pair(c) for c in p.coeffs],
    )


def _proven(cls: StabilityClass, kind: CertificateKind) -> StabilityVerdict:
    return StabilityVerdict(status=VerdictStatus.PROVEN_STABLE, class_checked=cls, certificate=kind)


def _refuted(cls: StabilityClass, witness: LineWitness, trials: Optional[int] = None) -> StabilityVerdict:
    return StabilityVerdict(status=VerdictStatus.REFUTED, class_checked=cls, witness=witness, trials=trials)


def _diagonal_line(nvars: int) -> Line:
    return [Fraction(0)] * nvars, [Fraction(1)] * nvars


def line_failure(p: UniPoly, cls: StabilityClass) -> Optional[FailureKind]:
    """Exact univariate test of one restriction; None when it passes."""
    if p.is_zero:
        return FailureKind.IDENTICALLY_ZERO
    if cls == StabilityClass.HC:
        return None if is_stable_complex(p) else FailureKind.UPPER_HALF_PLANE_ROOT
    if cls == StabilityClass.HC_STRICT:
        return None if is_strictly_stable_univariate(p) else FailureKind.CLOSED_HALF_PLANE_ROOT
    if not p.is_real():
        return FailureKind.NONREAL_COEFFICIENT
    if not is_hyperbolic(p):
        return FailureKind.NOT_REAL_ROOTED
    if cls == StabilityClass.HR_STRICT and not is_strictly_hyperbolic(p):
        return FailureKind.MULTIPLE_ROOT
    return None


def _nonreal_refutation(f: MultiPoly, cls: StabilityClass) -> StabilityVerdict:
    alpha, v = _diagonal_line(f.nvars)
    p = f.restrict_to_line(alpha, v)
    return _refuted(cls, line_witness(alpha, v, FailureKind.NONREAL_COEFFICIENT, p))


def _single_variable(f: MultiPoly, cls: StabilityClass) -> StabilityVerdict:
    alpha, v = _diagonal_line(f.nvars)
    p = f.restrict_to_line(alpha, v)
    failure = line_failure(p, cls)
    logger.debug("one active variable: %s", failure or "pass")
    if failure is None:
        return _proven(cls, CertificateKind.UNIVARIATE)
    return _refuted(cls, line_witness(alpha, v, failure, p))


def sample_stable(f: MultiPoly, cls: StabilityClass, cfg: SampleConfig) -> StabilityVerdict:
    """Line sampling only, skipping every exact shortcut."""
    sampler = LineSampler(f.nvars, cfg, allow_boundary=cls == StabilityClass.HC_STRICT)
    for trial, alpha, v in sampler.lines(cfg.trials):
        p = f.restrict_to_line(alpha, v)
        failure = line_failure(p, cls)
        if failure is not None:
            logger.debug("trial %d refutes %s: %s", trial, cls.value, failure.value)
            return _refuted(cls, line_witness(alpha, v, failure, p, trial), trials=trial + 1)
    return StabilityVerdict(
        status=VerdictStatus.SAMPLED_PASS, class_checked=cls, trials=cfg.trials
    )


# ══════════════════════════════════════════════════════════════════════════════
#  TWO-VARIABLE MULTI-AFFINE CRITERION
# ══════════════════════════════════════════════════════════════════════════════

def _pair_coefficients(f: MultiPoly, i: int, j: int) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(a00, a10, a01, a11) for f = a00 + a10 z_i + a01 z_j + a11 z_i z_j."""
    out = []
    for di, dj in ((0, 0), (1, 0), (0, 1), (1, 1)):
        e = [0] * f.nvars
        e[i], e[j] = di, dj
        out.append(f.coefficient(e).re)
    return tuple(out)


def multi_affine_determinant(f: MultiPoly, i: int, j: int) -> Fraction:
    a00, a10, a01, a11 = _pair_coefficients(f, i, j)
    return a00 * a11 - a01 * a10


def _multi_affine_pair(f: MultiPoly, cls: StabilityClass) -> StabilityVerdict:
    i, j = f.active_variables()
    n = f.nvars
    a00, a10, a01, a11 = _pair_coefficients(f, i, j)
    det = a00 * a11 - a01 * a10
    logger.debug("multi-affine pair (z%d, z%d): det = %s", i + 1, j + 1, det)
    if det <= 0:
        return _proven(cls, CertificateKind.TWO_BY_TWO_MULTI_AFFINE)

    alpha = [Fraction(0)] * n
    v = [Fraction(1)] * n
    if a11:
        # centred: f = a11 (x y + det / a11^2) on the diagonal through the centre
        alpha[i], alpha[j] = -a01 / a11, -a10 / a11
    else:
        # a10 and a01 have opposite signs; this direction kills the linear part
        v[i], v[j] = abs(a01), abs(a10)
        alpha[i] = -a00 / a10
    p = f.restrict_to_line(alpha, v)
    failure = line_failure(p, cls)
    if failure is None:
        raise AssertionError("positive determinant without a failing line")
    return _refuted(cls, line_witness(alpha, v, failure, p))


# ══════════════════════════════════════════════════════════════════════════════
#  PUBLIC DECIDERS
# ══════════════════════════════════════════════════════════════════════════════

def check_stable(
    f: MultiPoly,
    cls: StabilityClass = StabilityClass.HC,
    cfg: Optional[SampleConfig] = None,
) -> StabilityVerdict:
    """
    Decide membership of f in a stability class.

    Dispatch: zero -> ProvenZero; no active variable -> NonzeroConstant;
    one active variable -> exact univariate test; two active variables,
    multi-affine, real coefficients -> determinant criterion; otherwise
    cfg.trials sampled lines. Strict classes go to check_strictly_stable.
    """
    cls = StabilityClass(cls)
    cfg = cfg or SampleConfig()
    if f.is_zero:
        return StabilityVerdict(status=VerdictStatus.PROVEN_ZERO, class_checked=cls)
    if cls.is_strict:
        return check_strictly_stable(f, cfg, cls)
    if cls.is_real and not f.is_real():
        return _nonreal_refutation(f, cls)
    active = f.active_variables()
    if not active:
        return _proven(cls, CertificateKind.NONZERO_CONSTANT)
    if len(active) == 1:
        return _single_variable(f, cls)
    if len(active) == 2 and f.is_multi_affine() and f.is_real():
        return _multi_affine_pair(f, cls)
    return sample_stable(f, cls, cfg)


def check_strictly_stable(
    f: MultiPoly,
    cfg: Optional[SampleConfig] = None,
    cls: StabilityClass = StabilityClass.HC_STRICT,
) -> StabilityVerdict:
    """
    Strict stability: no zero on the closed upper half-plane polydomain.

    The complex class samples directions with some zero coordinates so
    boundary points are reached; the real class asks every restriction to
    be strictly hyperbolic.
    """
    cls = StabilityClass(cls)
    if not cls.is_strict:
        raise ValueError(f"{cls.value} is not a strict class")
    cfg = cfg or SampleConfig()
    if f.is_zero:
        raise ZeroPolynomialError("the zero polynomial is not strictly stable")
    if cls.is_real and not f.is_real():
        return _nonreal_refutation(f, cls)
    active = f.active_variables()
    if not active:
        return _proven(cls, CertificateKind.NONZERO_CONSTANT)
    if len(active) == 1:
        return _single_variable(f, cls)
    return sample_stable(f, cls, cfg)


def verify_witness(f: MultiPoly, verdict: StabilityVerdict) -> bool:
    """Recompute the witness restriction of a Refuted verdict and re-run its test."""
    w = verdict.witness
    if verdict.status != VerdictStatus.REFUTED or w is None:
        return False
    alpha, v = w.alpha_values(), w.v_values()
    if w.failure == FailureKind.NONREAL_COEFFICIENT:
        return not f.is_real()
    if w.failure == FailureKind.VANISHES_IN_DIRECTION:
        return not f.evaluate(v)
    p = f.restrict_to_line(alpha, v)
    if [gauss_pair(c) for c in p.coeffs] != [tuple(pair) for pair in w.restriction]:
        return False
    return line_failure(p, verdict.class_checked) is not None


# ══════════════════════════════════════════════════════════════════════════════
#  PROPER POSITION
# ══════════════════════════════════════════════════════════════════════════════

def _require_real_pair(f: MultiPoly, g: MultiPoly) -> None:
    if f.nvars != g.nvars:
        raise DimensionError(f"polynomials live in {f.nvars} and {g.nvars} variables")
    if not (f.is_real() and g.is_real()):
        raise NonRealError("proper position is defined for real polynomials")


def proper_position_multi(
    f: MultiPoly, g: MultiPoly, cfg: Optional[SampleConfig] = None
) -> StabilityVerdict:
    """f << g, decided as stability of g + i f."""
    _require_real_pair(f, g)
    return check_stable(g + f.scale(I), StabilityClass.HC, cfg)


def proper_position_extra_variable(
    f: MultiPoly, g: MultiPoly, cfg: Optional[SampleConfig] = None
) -> StabilityVerdict:
    """f << g, decided as real stability of g + z_{n+1} f."""
    _require_real_pair(f, g)
    n = f.nvars
    lifted_f = f.embed(n + 1, range(n))
    lifted_g = g.embed(n + 1, range(n))
    return check_stable(lifted_g + lifted_f * MultiPoly.variable(n + 1, n), StabilityClass.HR, cfg)


# ══════════════════════════════════════════════════════════════════════════════
#  INTERSECTION PROPERTY
# ══════════════════════════════════════════════════════════════════════════════

def _curve_points(p: UniPoly, slope: Fraction, intercept: Fraction) -> List[Tuple[str, str]]:
    points = []
    for root in isolate_real_roots(p):
        z = refine_root(p, root, POINT_WIDTH).midpoint
        points.append((rational_string(z), rational_string(slope * z + intercept)))
    return points


def intersection_property(
    f: MultiPoly,
    which: Slope = Slope.I_PLUS,
    cfg: Optional[SampleConfig] = None,
) -> IntersectionReport:
    """
    Does the real curve f(z, w) = 0 meet sampled lines w = a z + b in deg f
    real points, counted with multiplicity?

    I_plus uses slopes a > 0, I_minus slopes a < 0; trial 0 is the slope
    +-1 line through the origin. A restriction of lower degree is reported
    as DegreeDrop. Real intersection points of the first lines are returned
    for plotting.
    """
    which = Slope(which)
    cfg = cfg or SampleConfig()
    if f.nvars != 2:
        raise DimensionError(f"the intersection property needs 2 variables, got {f.nvars}")
    if f.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no curve")
    if not f.is_real():
        raise NonRealError("the intersection property is defined for real polynomials")
    d = f.degree()
    sign = 1 if which == Slope.I_PLUS else -1
    sampler = LineSampler(2, cfg)
    points: List[Tuple[str, str]] = []
    for trial in range(cfg.trials):
        if trial == 0:
            slope, intercept = Fraction(sign), Fraction(0)
        else:
            slope = sign * sampler.positive()
            intercept = sampler.rational(*cfg.coordinate_box)
        p = f.restrict_to_line([Fraction(0), intercept], [Fraction(1), slope])
        failure = None
        if p.is_zero:
            failure = FailureKind.IDENTICALLY_ZERO
        elif p.degree != d:
            failure = FailureKind.DEGREE_DROP
        elif not is_hyperbolic(p):
            failure = FailureKind.NOT_REAL_ROOTED
        if failure is not None:
            logger.debug("line w = %s z + %s fails %s: %s", slope, intercept, which.value, failure.value)
            witness = IntersectionWitness(
                slope=rational_string(slope),
                intercept=rational_string(intercept),
                failure=failure,
                restriction=[rational_string(c.re) for c in p.coeffs],
            )
            return IntersectionReport(
                which=which,
                status=VerdictStatus.REFUTED,
                degree=d,
                trials=trial + 1,
                witness=witness,
                points=points,
            )
        if trial < POINT_LINES:
            points.extend(_curve_points(p, slope, intercept))
    return IntersectionReport(
        which=which, status=VerdictStatus.SAMPLED_PASS, degree=d, trials=cfg.trials, points=points
    )
