"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                          VERDICTS AND REPORTS                                 ║
║                                                                               ║
║  Pydantic models returned by every decider. A verdict never claims more       ║
║  than was checked: exact proofs, exact refutations with a re-checkable        ║
║  witness, and sampled passes are kept apart.                                  ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .codec import OperatorDocument, PolyDocument

GaussPair = Tuple[str, str]


class StabilityClass(str, Enum):
    HC = "HC"
    HR = "HR"
    HC_STRICT = "HCs"
    HR_STRICT = "HRs"

    @property
    def is_real(self) -> bool:
        return self in (StabilityClass.HR, StabilityClass.HR_STRICT)

    @property
    def is_strict(self) -> bool:
        return self in (StabilityClass.HC_STRICT, StabilityClass.HR_STRICT)


class VerdictStatus(str, Enum):
    PROVEN_STABLE = "ProvenStable"
    REFUTED = "Refuted"
    SAMPLED_PASS = "SampledPass"
    PROVEN_ZERO = "ProvenZero"


class CertificateKind(str, Enum):
    NONZERO_CONSTANT = "NonzeroConstant"
    UNIVARIATE = "Univariate"
    TWO_BY_TWO_MULTI_AFFINE = "TwoByTwoMultiAffine"
    PENCIL = "PencilCertificate"
    CERTIFIED_IMAGE = "SymbolOfCertifiedPreserverAppliedToCertified"
    LINEAR_FACTOR_PRODUCT = "LinearFactorProduct"


class FailureKind(str, Enum):
    UPPER_HALF_PLANE_ROOT = "UpperHalfPlaneRoot"
    CLOSED_HALF_PLANE_ROOT = "ClosedHalfPlaneRoot"
    NOT_REAL_ROOTED = "NotRealRooted"
    MULTIPLE_ROOT = "MultipleRoot"
    IDENTICALLY_ZERO = "IdenticallyZero"
    NONREAL_COEFFICIENT = "NonrealCoefficient"
    DEGREE_DROP = "DegreeDrop"
    VANISHES_IN_DIRECTION = "VanishesInDirection"


class _Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)


# ══════════════════════════════════════════════════════════════════════════════
#  STABILITY
# ══════════════════════════════════════════════════════════════════════════════

class LineWitness(_Verdict):
    """
    The line alpha + v t on which the exact univariate test failed.

    `restriction` holds the coefficients of f(alpha + v t), lowest degree
    first, so the failure can be re-checked without the original sampler.
    `trial` is None for lines constructed by an exact criterion.
    """

    trial: Optional[int] = None
    alpha: List[str]
    v: List[str]
    failure: FailureKind
    restriction: List[GaussPair] = []

    def alpha_values(self) -> List[Fraction]:
        return [Fraction(a) for a in self.alpha]

    def v_values(self) -> List[Fraction]:
        return [Fraction(b) for b in self.v]


class StabilityVerdict(_Verdict):
    status: VerdictStatus
    class_checked: StabilityClass
    certificate: Optional[CertificateKind] = None
    trials: Optional[int] = None
    witness: Optional[LineWitness] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (VerdictStatus.PROVEN_STABLE, VerdictStatus.SAMPLED_PASS)

    @property
    def is_exact(self) -> bool:
        return self.status != VerdictStatus.SAMPLED_PASS

    @property
    def refuted(self) -> bool:
        return self.status == VerdictStatus.REFUTED


class Slope(str, Enum):
    I_PLUS = "I_plus"
    I_MINUS = "I_minus"


class IntersectionWitness(_Verdict):
    slope: str
    intercept: str
    failure: FailureKind
    restriction: List[str] = []


class IntersectionReport(_Verdict):
    which: Slope
    status: VerdictStatus
    degree: int
    trials: int
    witness: Optional[IntersectionWitness] = None
    points: List[Tuple[str, str]] = []

    @property
    def passed(self) -> bool:
        return self.status == VerdictStatus.SAMPLED_PASS


# ══════════════════════════════════════════════════════════════════════════════
#  PRESERVERS
# ══════════════════════════════════════════════════════════════════════════════

class TheoremPath(str, Enum):
    """Criterion behind a preserver verdict; values are the stable wire names."""

    COMPLEX_SYMBOL_TEST = "SymbolTest_T13"
    REAL_SYMBOL_TEST = "SymbolTest_T14"
    STRICT_NECESSARY = "StrictNecessary_T62"
    STRICT_SUFFICIENT = "StrictSufficient_T66"
    DUALITY_TRANSFER = "DualityTransfer_T16"


class PreserverOutcome(str, Enum):
    CERTIFIED = "Certified"
    SAMPLED_PASS = "SampledPass"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


class Refutation(_Verdict):
    """A certified-stable input whose image fails an exact univariate test."""

    input: PolyDocument
    input_certificate: CertificateKind
    image: PolyDocument
    image_verdict: StabilityVerdict


class PreserverVerdict(_Verdict):
    theorem_path: TheoremPath
    outcome: PreserverOutcome
    symbol: PolyDocument
    inner: Optional[StabilityVerdict] = None
    refutation: Optional[Refutation] = None
    pullback_attempted: bool = False
    boundary_point: Optional[List[GaussPair]] = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.outcome == PreserverOutcome.CERTIFIED

    @property
    def passed(self) -> bool:
        return self.outcome in (PreserverOutcome.CERTIFIED, PreserverOutcome.SAMPLED_PASS)

    @property
    def refuted(self) -> bool:
        return self.outcome == PreserverOutcome.REFUTED


class DualityReport(_Verdict):
    operator: OperatorDocument
    adjoint: OperatorDocument
    operator_verdict: PreserverVerdict
    adjoint_verdict: PreserverVerdict
    agree: bool
    reflection_ok: Optional[bool] = None
    transferred_verdict: Optional[PreserverVerdict] = None


class CoefficientEntry(_Verdict):
    wexp: List[int]
    coefficient: PolyDocument
    verdict: StabilityVerdict


class CoefficientReport(_Verdict):
    passed: bool
    entries: List[CoefficientEntry]
    failing: Optional[List[int]] = None


# ══════════════════════════════════════════════════════════════════════════════
#  MULTIPLIERS
# ══════════════════════════════════════════════════════════════════════════════

class SignPattern(str, Enum):
    SAME_SIGN = "SameSign"
    ALTERNATING_SIGN = "AlternatingSign"
    VIOLATED = "Violated"


class MultiplierReport(_Verdict):
    rank1_relations_ok: bool
    support_is_box: bool
    sign_pattern: SignPattern
    univariate_slices_ok: bool
    factor_decomposition: Optional[List[List[str]]] = None

    @property
    def passed(self) -> bool:
        return (
            self.rank1_relations_ok
            and self.support_is_box
            and self.sign_pattern != SignPattern.VIOLATED
            and self.univariate_slices_ok
        )


class FiniteMultiplierVerdict(_Verdict):
    """Certification of a diagonal operator through its factored symbol."""

    certified: bool
    rank_one: bool
    factors: Optional[List[List[str]]] = None
    factor_roots_ok: Optional[bool] = None
    reason: str = ""


class PolyaCurveReport(_Verdict):
    curve: PolyDocument
    intersection: IntersectionReport


# ══════════════════════════════════════════════════════════════════════════════
#  MATRICES
# ══════════════════════════════════════════════════════════════════════════════

class PSDCertificate(_Verdict):
    char_poly: List[str]
    sign_pattern_ok: bool

    @property
    def is_psd(self) -> bool:
        return self.sign_pattern_ok


class CauchyPoincareReport(_Verdict):
    j: int
    derivative_identity: bool
    proper_position: StabilityVerdict
    eigen_interlacing: bool

    @property
    def passed(self) -> bool:
        return self.derivative_identity and self.proper_position.passed and self.eigen_interlacing


class LaxReport(_Verdict):
    polynomial: PolyDocument
    verdict: StabilityVerdict
    pencil_roots_nonpositive: Optional[bool] = None
    identity_sum: bool
