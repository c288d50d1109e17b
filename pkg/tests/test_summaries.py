"""Tests for the one-line verdict summaries."""

from src.polycore import MultiPoly, UniPoly
from src.preservers import certify_preserver, finite_multiplier_certify
from src.stability import check_stable, intersection_property
from src.summaries import format_line, summarize
from src.verdicts import Slope, StabilityClass
from src.weylalg import WeylOp, polynomial_in_derivatives


def test_stability_summaries(cfg):
    z1, z2, z3 = MultiPoly.variables(3)
    proven = check_stable(1 - z1 * z2, StabilityClass.HR)
    assert summarize(proven) == "HR: proven stable (multi-affine determinant criterion)."
    assert summarize(check_stable(MultiPoly.zero(2))) == "HC: the polynomial is identically zero."
    sampled = check_stable((z1 + z2 + z3) * (z1 + 2 * z2 - 1), StabilityClass.HR, cfg)
    assert summarize(sampled) == f"HR: no counterexample on {cfg.trials} sampled lines (not a proof)."


def test_refutation_names_the_line():
    z1, z2 = MultiPoly.variables(2)
    verdict = check_stable(1 + z1 * z2, StabilityClass.HR)
    text = summarize(verdict)
    assert text.startswith("HR: refuted, ")
    assert verdict.witness.failure.value in text
    assert format_line(verdict.witness.alpha) in text
    assert "trial" not in text


def test_preserver_and_intersection_summaries(cfg):
    T = polynomial_in_derivatives(UniPoly.from_real([-1, 0, 1]))
    verdict = certify_preserver(T, StabilityClass.HR, cfg)
    assert summarize(verdict) == f"{verdict.theorem_path.value}: certified preserver."

    z, w = MultiPoly.variables(2)
    report = intersection_property(z * w - 1, Slope.I_PLUS, cfg)
    assert summarize(report) == f"I_plus: {report.trials} lines met in 2 real points."


def test_fallback_summary():
    euler = WeylOp(1, [(((1,), (1,)), 1)])
    assert summarize(finite_multiplier_certify(euler)) == "FiniteMultiplierVerdict passed."
    assert summarize(object()) == "object."
