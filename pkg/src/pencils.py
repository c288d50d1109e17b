"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                        DETERMINANTAL CONSTRUCTIONS                            ║
║                                                                               ║
║  Stable polynomials from positive semidefinite pencils, multivariate          ║
║  characteristic polynomials and their minors, the Christoffel-Darboux         ║
║  identity, the homogenization test and verification of determinantal          ║
║  representations of bivariate polynomials.                                    ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from .codec import PolyDocument, rational_string
from .config import SampleConfig
from .errors import DimensionError, NonRealError, PreconditionError, ZeroPolynomialError
from .polycore import GaussianMatrix, GaussRat, MultiPoly, sympy_gens
from .realroots import SignClass, is_hyperbolic, roots_all_same_sign, roots_interlace
from .stability import (
    CertifiedPoly,
    LineSampler,
    line_witness,
    check_stable,
    line_failure,
    proper_position_multi,
)
from .verdicts import (
    CauchyPoincareReport,
    CertificateKind,
    FailureKind,
    LaxReport,
    PreserverOutcome,
    PreserverVerdict,
    PSDCertificate,
    StabilityClass,
    StabilityVerdict,
    TheoremPath,
    VerdictStatus,
)
from .weylalg import WeylOp, op_from_symbol, symbol_negate_w

__all__ = [
    "GaussianMatrix",
    "determinant",
    "is_psd",
    "pencil_polynomial",
    "char_poly_multi",
    "cauchy_poincare_check",
    "christoffel_darboux_verify",
    "garding_direction_check",
    "lax_verify",
    "operator_from_pencil",
    "certify_pencil_operator",
]

logger = logging.getLogger(__name__)

MAX_ORDER = 8

PolyMatrix = List[List[MultiPoly]]

_T = sympy.Symbol("t")


# ══════════════════════════════════════════════════════════════════════════════
#  DETERMINANTS
# ══════════════════════════════════════════════════════════════════════════════

def determinant(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """
    Fraction-free (Bareiss) determinant of a square matrix of polynomials,
    computed by sympy on z1..zn and read back exactly.
    """
    m = [list(row) for row in rows]
    d = len(m)
    if any(len(row) != d for row in m):
        raise DimensionError("determinant of a non-square matrix")
    if d > MAX_ORDER:
        raise PreconditionError(f"determinant expansion is limited to order {MAX_ORDER}, got {d}")
    if d == 0:
        raise DimensionError("determinant of an empty matrix")
    gens = sympy_gens(m[0][0].nvars)
    M = sympy.Matrix([[x.to_sympy(gens) for x in row] for row in m])
    return MultiPoly.from_sympy(sympy.cancel(M.det(method="bareiss")), gens)


def _constant_rows(A: GaussianMatrix, nvars: int) -> PolyMatrix:
    return [[MultiPoly.constant(nvars, x) for x in row] for row in A.rows]


def _linear_combination(terms: Sequence[tuple], nvars: int) -> PolyMatrix:
    """Sum of coefficient-polynomial times matrix, entry by entry."""
    order = terms[0][1].order
    out = [[MultiPoly.zero(nvars) for _ in range(order)] for _ in range(order)]
    for coeff, A in terms:
        if A.order != order:
            raise DimensionError(f"matrix orders {order} and {A.order} differ")
        for i in range(order):
            for j in range(order):
                if A[i, j]:
                    out[i][j] = out[i][j] + coeff * A[i, j]
    return out


def _require_hermitian(A: GaussianMatrix, name: str = "matrix") -> None:
    if not A.is_hermitian():
        raise PreconditionError(f"{name} is not Hermitian")


# ══════════════════════════════════════════════════════════════════════════════
#  PENCILS
# ══════════════════════════════════════════════════════════════════════════════

def is_psd(A: GaussianMatrix) -> PSDCertificate:
    """PSD iff every coefficient of det(tI + A) is nonnegative."""
    _require_hermitian(A)
    char = (-A.to_sympy()).charpoly(_T)
    # a Hermitian matrix has a real characteristic polynomial
    coeffs = [GaussRat.from_sympy(c).real_value() for c in reversed(char.all_coeffs())]
    return PSDCertificate(
        char_poly=[rational_string(c) for c in coeffs],
        sign_pattern_ok=all(c >= 0 for c in coeffs),
    )


def pencil_polynomial(As: Sequence[GaussianMatrix], B: GaussianMatrix) -> CertifiedPoly:
    """det(z_1 A_1 + ... + z_n A_n + B), real stable or identically zero."""
    if not As:
        raise DimensionError("a pencil needs at least one matrix A_i")
    for k, A in enumerate(As):
        if A.order != B.order:
            raise DimensionError(f"A_{k + 1} has order {A.order}, B has order {B.order}")
        if not is_psd(A).is_psd:
            raise PreconditionError(f"A_{k + 1} is not positive semidefinite")
    _require_hermitian(B, "B")
    n = len(As)
    terms = [(MultiPoly.variable(n, i), A) for i, A in enumerate(As)]
    terms.append((MultiPoly.one(n), B))
    f = determinant(_linear_combination(terms, n))
    if f.is_zero:
        verdict = StabilityVerdict(status=VerdictStatus.PROVEN_ZERO, class_checked=StabilityClass.HR)
    else:
        verdict = StabilityVerdict(
            status=VerdictStatus.PROVEN_STABLE,
            class_checked=StabilityClass.HR,
            certificate=CertificateKind.PENCIL,
        )
    logger.debug("pencil of order %d in %d variables: %s", B.order, n, verdict.status.value)
    return CertifiedPoly(f, verdict)


def char_poly_multi(A: GaussianMatrix) -> MultiPoly:
    """C(A, z) = det(Z - A) with Z = diag(z_1, ..., z_d)."""
    _require_hermitian(A)
    d = A.order
    rows = _constant_rows(-A, d)
    for i in range(d):
        rows[i][i] = rows[i][i] + MultiPoly.variable(d, i)
    return determinant(rows)


def cauchy_poincare_check(
    A: GaussianMatrix, j: int, cfg: Optional[SampleConfig] = None
) -> CauchyPoincareReport:
    """
    C(A^{jj}, z without z_j) << C(A, z), checked three ways: the exact
    identity d/dz_j C(A, z) = C(A^{jj}), proper position of the pair, and
    interlacing of the eigenvalues of A and A^{jj}.
    """
    _require_hermitian(A)
    d = A.order
    if d < 2:
        raise DimensionError("the interlacing check needs order at least 2")
    if not 0 <= j < d:
        raise DimensionError(f"index {j} out of range for order {d}")
    full = char_poly_multi(A)
    minor = char_poly_multi(A.principal_minor(j)).embed(d, [k for k in range(d) if k != j])
    identity_ok = full.derivative(j) == minor
    verdict = proper_position_multi(minor, full, cfg)
    ones = [Fraction(1)] * d
    origin = [Fraction(0)] * d
    eigen_ok = roots_interlace(minor.restrict_to_line(origin, ones), full.restrict_to_line(origin, ones))
    return CauchyPoincareReport(
        j=j, derivative_identity=identity_ok, proper_position=verdict, eigen_interlacing=eigen_ok
    )


def _adjugate_entry(rows: PolyMatrix, i: int, j: int) -> MultiPoly:
    """(i, j) entry of adj(M): signed determinant of M without row j and column i."""
    minor = [[x for c, x in enumerate(row) if c != i] for r, row in enumerate(rows) if r != j]
    if not minor:
        return MultiPoly.one(rows[0][0].nvars)
    value = determinant(minor)
    return value if (i + j) % 2 == 0 else -value


def christoffel_darboux_verify(A: GaussianMatrix, i: int, j: int) -> bool:
    """
    Check C(A,y) C_ij(A,x) - C(A,x) C_ij(A,y) = sum_k (y_k - x_k) C_ik(A,x) C_kj(A,y)
    exactly, where C_ij is the (i, j) entry of adj(Z - A). Holds for every
    square matrix.
    """
    d = A.order
    if not (0 <= i < d and 0 <= j < d):
        raise DimensionError(f"indices ({i}, {j}) out of range for order {d}")
    n = 2 * d

    def shifted(offset: int) -> PolyMatrix:
        rows = _constant_rows(-A, n)
        for k in range(d):
            rows[k][k] = rows[k][k] + MultiPoly.variable(n, offset + k)
        return rows

    mx, my = shifted(0), shifted(d)
    cx, cy = determinant(mx), determinant(my)
    adj_x = {(a, b): _adjugate_entry(mx, a, b) for a in range(d) for b in range(d) if a == i or b == j}
    adj_y = {(a, b): _adjugate_entry(my, a, b) for a in range(d) for b in range(d) if a == i or b == j}
    lhs = cy * adj_x[i, j] - cx * adj_y[i, j]
    rhs = MultiPoly.zero(n)
    for k in range(d):
        gap = MultiPoly.variable(n, d + k) - MultiPoly.variable(n, k)
        rhs = rhs + gap * adj_x[i, k] * adj_y[k, j]
    return lhs == rhs


# ══════════════════════════════════════════════════════════════════════════════
#  HYPERBOLICITY AND DETERMINANTAL REPRESENTATIONS
# ══════════════════════════════════════════════════════════════════════════════

def garding_direction_check(f: MultiPoly, cfg: Optional[SampleConfig] = None) -> StabilityVerdict:
    """
    Real stability through the homogenization f_H: for sampled directions
    v = (v_1, ..., v_n, 0) with v_i > 0 and base points alpha, f_H(v) must
    be nonzero and f_H(alpha + v t) hyperbolic. Witnesses refer to f_H.
    """
    cfg = cfg or SampleConfig()
    if f.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no homogenization")
    if not f.is_real():
        raise NonRealError("hyperbolicity is defined for real polynomials")
    fh = f.homogenize()
    n = fh.nvars
    sampler = LineSampler(n, cfg)
    cls = StabilityClass.HR
    for trial in range(cfg.trials):
        if trial == 0:
            alpha = [Fraction(0)] * (n - 1) + [Fraction(1)]
            v = [Fraction(1)] * (n - 1) + [Fraction(0)]
        else:
            alpha, v = sampler.sample(trial)
            v[-1] = Fraction(0)
        p = fh.restrict_to_line(alpha, v)
        if not fh.evaluate(v):
            failure: Optional[FailureKind] = FailureKind.VANISHES_IN_DIRECTION
        else:
            failure = line_failure(p, cls)
        if failure is not None:
            logger.debug("homogenized trial %d fails: %s", trial, failure.value)
            return StabilityVerdict(
                status=VerdictStatus.REFUTED,
                class_checked=cls,
                trials=trial + 1,
                witness=line_witness(alpha, v, failure, p, trial),
                note="witness refers to the homogenized polynomial",
            )
    return StabilityVerdict(status=VerdictStatus.SAMPLED_PASS, class_checked=cls, trials=cfg.trials)


def _require_real_symmetric(A: GaussianMatrix, name: str) -> None:
    if not A.is_real_symmetric():
        raise PreconditionError(f"{name} is not real symmetric")


def _require_psd(A: GaussianMatrix, name: str) -> None:
    _require_real_symmetric(A, name)
    if not is_psd(A).is_psd:
        raise PreconditionError(f"{name} is not positive semidefinite")


def lax_verify(
    A: GaussianMatrix,
    B: GaussianMatrix,
    C: GaussianMatrix,
    alpha: Fraction = Fraction(1),
    cfg: Optional[SampleConfig] = None,
) -> LaxReport:
    """
    Verify a determinantal representation f(x, y) = alpha det(xA + yB + C).

    Checks real stability of f, that det(A + tB) has only nonpositive zeros,
    and flags whether A + B = I.
    """
    _require_psd(A, "A")
    _require_psd(B, "B")
    _require_real_symmetric(C, "C")
    if not (A.order == B.order == C.order):
        raise DimensionError("A, B and C must share one order")
    alpha = Fraction(alpha)
    if not alpha:
        raise PreconditionError("alpha must be nonzero")
    x, y = MultiPoly.variables(2)
    f = determinant(_linear_combination([(x, A), (y, B), (MultiPoly.one(2), C)], 2)).scale(alpha)
    verdict = check_stable(f, StabilityClass.HR, cfg)

    t = MultiPoly.variable(1, 0)
    pencil = determinant(_linear_combination([(MultiPoly.one(1), A), (t, B)], 1))
    nonpositive: Optional[bool] = None
    if not pencil.is_zero:
        p = pencil.as_univariate(0)
        nonpositive = is_hyperbolic(p) and roots_all_same_sign(p) in (SignClass.ALL_NONPOS, SignClass.NO_ROOTS)
    return LaxReport(
        polynomial=PolyDocument.from_poly(f),
        verdict=verdict,
        pencil_roots_nonpositive=nonpositive,
        identity_sum=(A + B) == GaussianMatrix.identity(A.order),
    )


# ══════════════════════════════════════════════════════════════════════════════
#  PENCIL OPERATORS
# ══════════════════════════════════════════════════════════════════════════════

def operator_from_pencil(
    A: GaussianMatrix, B: GaussianMatrix, C: GaussianMatrix, alpha: Fraction = Fraction(1)
) -> WeylOp:
    """The operator on one variable whose symbol is alpha det(zA - wB + C)."""
    _require_psd(A, "A")
    _require_psd(B, "B")
    _require_real_symmetric(C, "C")
    z, w = MultiPoly.variables(2)
    F = determinant(_linear_combination([(z, A), (-w, B), (MultiPoly.one(2), C)], 2))
    return op_from_symbol(F.scale(Fraction(alpha)))


def certify_pencil_operator(
    A: GaussianMatrix, B: GaussianMatrix, C: GaussianMatrix, alpha: Fraction = Fraction(1)
) -> Tuple[WeylOp, PreserverVerdict]:
    """
    Build the pencil operator and certify it exactly: its negated-w symbol is
    alpha det(zA + wB + C), a pencil polynomial.
    """
    T = operator_from_pencil(A, B, C, alpha)
    if T.is_zero:
        raise ZeroPolynomialError("the pencil determinant vanishes identically")
    certified = pencil_polynomial([A, B], C)
    negated = symbol_negate_w(T)
    if certified.poly.scale(Fraction(alpha)) != negated:
        raise AssertionError("pencil symbol does not match its determinant")
    verdict = PreserverVerdict(
        theorem_path=TheoremPath.REAL_SYMBOL_TEST,
        outcome=PreserverOutcome.CERTIFIED,
        symbol=PolyDocument.from_poly(negated),
        inner=certified.verdict,
    )
    return T, verdict
