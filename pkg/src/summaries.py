"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                           VERDICT SUMMARIES                                   ║
║                                                                               ║
║  One-line human readable descriptions of verdicts. The CLI logs them; the     ║
║  corpus generator stores them next to each item.                              ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

from typing import Iterable, Optional, Union

from .verdicts import (
    CertificateKind,
    IntersectionReport,
    LineWitness,
    PreserverOutcome,
    PreserverVerdict,
    StabilityVerdict,
    VerdictStatus,
)


# ══════════════════════════════════════════════════════════════════════════════
#  TEMPLATES
# ══════════════════════════════════════════════════════════════════════════════

STATUS_TEMPLATES = {
    VerdictStatus.PROVEN_STABLE: "{cls}: proven stable ({certificate}).",
    VerdictStatus.SAMPLED_PASS: "{cls}: no counterexample on {trials} sampled lines (not a proof).",
    VerdictStatus.REFUTED: "{cls}: refuted, {witness}.",
    VerdictStatus.PROVEN_ZERO: "{cls}: the polynomial is identically zero.",
}

CERTIFICATE_TEXT = {
    CertificateKind.NONZERO_CONSTANT: "nonzero constant",
    CertificateKind.UNIVARIATE: "exact univariate test",
    CertificateKind.TWO_BY_TWO_MULTI_AFFINE: "multi-affine determinant criterion",
    CertificateKind.PENCIL: "positive semidefinite pencil",
    CertificateKind.CERTIFIED_IMAGE: "certified preserver applied to a certified input",
    CertificateKind.LINEAR_FACTOR_PRODUCT: "product of stable linear factors",
}

OUTCOME_TEMPLATES = {
    PreserverOutcome.CERTIFIED: "{path}: certified preserver.",
    PreserverOutcome.SAMPLED_PASS: "{path}: symbol passed sampling (not a proof).",
    PreserverOutcome.REFUTED: "{path}: not a preserver{detail}.",
    PreserverOutcome.INCONCLUSIVE: "{path}: inconclusive, the sufficient condition failed.",
}


def format_line(values: Iterable[str]) -> str:
    """Render a coordinate list as (a, b, ...)."""
    return "(" + ", ".join(values) + ")"


def format_witness(witness: Optional[LineWitness]) -> str:
    if witness is None:
        return "no witness"
    where = f"line {format_line(witness.alpha)} + t{format_line(witness.v)}"
    if witness.trial is not None:
        where += f" at trial {witness.trial}"
    return f"{witness.failure.value} on {where}"


def summarize_stability(verdict: StabilityVerdict) -> str:
    template = STATUS_TEMPLATES[verdict.status]
    certificate = CERTIFICATE_TEXT.get(verdict.certificate, "") if verdict.certificate else ""
    return template.format(
        cls=verdict.class_checked.value,
        certificate=certificate,
        trials=verdict.trials,
        witness=format_witness(verdict.witness),
    )


def summarize_preserver(verdict: PreserverVerdict) -> str:
    detail = ""
    if verdict.refutation is not None:
        detail = f"; stable input {len(verdict.refutation.input.terms)}-term polynomial maps outside the class"
    elif verdict.pullback_attempted:
        detail = "; no concrete failing input found"
    elif verdict.boundary_point is not None:
        detail = f"; symbol vanishes over z = {format_line(re for re, _ in verdict.boundary_point)}"
    return OUTCOME_TEMPLATES[verdict.outcome].format(path=verdict.theorem_path.value, detail=detail)


def summarize_intersection(report: IntersectionReport) -> str:
    if report.passed:
        return f"{report.which.value}: {report.trials} lines met in {report.degree} real points."
    w = report.witness
    return f"{report.which.value}: line w = {w.slope} z + {w.intercept} fails ({w.failure.value})."


def summarize(verdict: Union[StabilityVerdict, PreserverVerdict, IntersectionReport, object]) -> str:
    """One line describing any verdict; unknown reports fall back to their class name."""
    if isinstance(verdict, StabilityVerdict):
        return summarize_stability(verdict)
    if isinstance(verdict, PreserverVerdict):
        return summarize_preserver(verdict)
    if isinstance(verdict, IntersectionReport):
        return summarize_intersection(verdict)
    passed = getattr(verdict, "passed", None)
    if passed is None:
        passed = getattr(verdict, "certified", None)
    state = "" if passed is None else (" passed" if passed else " failed")
    return f"{type(verdict).__name__}{state}."
