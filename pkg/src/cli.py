"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                              STABKIT CLI                                      ║
║                                                                               ║
║  One subcommand per certification operation. Inputs are JSON documents,       ║
║  outputs are ResultRecord envelopes with sorted keys (or CSV/SVG/PNG for      ║
║  symbol curves). Exit codes: 0 pass, 1 refuted or failed, 2 input error.      ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from core import OutputWriter, ResultRecord
from . import __version__
from .codec import (
    OperatorDocument,
    PolyDocument,
    read_matrix,
    read_multiplier,
    read_operator,
    read_poly,
)
from .config import DEFAULT_TRIALS, TRIALS_ENV, CorpusConfig, SampleConfig, default_trials
from .contour import symbol_curve
from .errors import InputFormatError, StabkitError
from .generator import CorpusGenerator
from .pencils import (
    cauchy_poincare_check,
    christoffel_darboux_verify,
    garding_direction_check,
    lax_verify,
    pencil_polynomial,
)
from .polycore import parse_rational
from .preservers import (
    certify_preserver,
    coefficient_criterion,
    dominating_part,
    duality_check,
    finite_multiplier_certify,
    multiplier_structure_check,
    polya_curve,
    schur_composition,
    strict_necessary_check,
    strict_sufficient_check,
)
from .stability import CertifiedPoly, check_stable, check_strictly_stable
from .summaries import summarize
from .verdicts import StabilityClass
from .weylalg import adjoint, compose, star_product

logger = logging.getLogger(__name__)

TOOL = "stabkit"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

Outcome = Tuple[Any, bool]


# ══════════════════════════════════════════════════════════════════════════════
#  INPUT / OUTPUT HELPERS
# ══════════════════════════════════════════════════════════════════════════════

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read input: {exc.strerror}", path) from exc


def _poly(path: str):
    return read_poly(_read(path), path)


def _operator(path: str):
    return read_operator(_read(path), path)


def _matrix(path: str):
    return read_matrix(_read(path), path)


def _rationals(text: str) -> List[Fraction]:
    try:
        return [parse_rational(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"not a rational list: {text!r}", "argv") from exc


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, CertifiedPoly):
        return {
            "polynomial": PolyDocument.from_poly(value.poly).model_dump(mode="json"),
            "verdict": value.verdict.model_dump(mode="json"),
        }
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def sample_config(args: argparse.Namespace) -> SampleConfig:
    return SampleConfig(trials=args.trials, seed=args.seed, denominator_bound=args.denominator_bound)


# ══════════════════════════════════════════════════════════════════════════════
#  COMMANDS
# ══════════════════════════════════════════════════════════════════════════════

def cmd_check_stable(args: argparse.Namespace) -> Outcome:
    verdict = check_stable(_poly(args.file), StabilityClass(args.cls or "HC"), sample_config(args))
    logger.info(summarize(verdict))
    return verdict, not verdict.refuted


def cmd_check_strict(args: argparse.Namespace) -> Outcome:
    verdict = check_strictly_stable(_poly(args.file), sample_config(args), StabilityClass(args.cls or "HCs"))
    logger.info(summarize(verdict))
    return verdict, not verdict.refuted


def cmd_certify_preserver(args: argparse.Namespace) -> Outcome:
    T = _operator(args.file)
    cfg = sample_config(args)
    cls = StabilityClass(args.cls or "HC")
    if args.method == "duality":
        report = duality_check(T, cls, cfg)
        return report, report.agree and report.operator_verdict.passed
    if args.method == "necessary":
        verdict = strict_necessary_check(T, cfg)
    elif args.method == "sufficient":
        verdict = strict_sufficient_check(T, cls, cfg)
    elif args.method == "coefficients":
        report = coefficient_criterion(T, cfg)
        return report, report.passed
    elif args.method == "dominating":
        part = dominating_part(T)
        result = {
            "kappa": list(part.kappa),
            "dominating_part": OperatorDocument.from_op(part.diagonal),
            "group": OperatorDocument.from_op(part.group),
            "multiplier": finite_multiplier_certify(part.diagonal) if part.diagonal.is_real() else None,
        }
        return result, True
    else:
        verdict = certify_preserver(T, cls, cfg)
    logger.info(summarize(verdict))
    return verdict, verdict.passed


def cmd_adjoint(args: argparse.Namespace) -> Outcome:
    return OperatorDocument.from_op(adjoint(_operator(args.file))), True


def cmd_compose(args: argparse.Namespace) -> Outcome:
    return OperatorDocument.from_op(compose(_operator(args.first), _operator(args.second))), True


def cmd_weyl_product(args: argparse.Namespace) -> Outcome:
    return PolyDocument.from_poly(star_product(_poly(args.first), _poly(args.second))), True


def cmd_multiplier_check(args: argparse.Namespace) -> Outcome:
    report = multiplier_structure_check(read_multiplier(_read(args.file), args.file))
    return report, report.passed


def cmd_finite_multiplier(args: argparse.Namespace) -> Outcome:
    verdict = finite_multiplier_certify(_operator(args.file))
    return verdict, verdict.certified


def cmd_schur_compose(args: argparse.Namespace) -> Outcome:
    f = _poly(args.f)
    if f.nvars != 1:
        raise InputFormatError("f must be a polynomial in one variable", f"{args.f}:nvars")
    image = schur_composition(f.as_univariate(0), _poly(args.file), args.var - 1, sample_config(args))
    logger.info(summarize(image.verdict))
    return image, not image.verdict.refuted


def cmd_polya_curve(args: argparse.Namespace) -> Outcome:
    f = _poly(args.file)
    if f.nvars != 1:
        raise InputFormatError("f must be a polynomial in one variable", f"{args.file}:nvars")
    report = polya_curve(_rationals(args.b), f.as_univariate(0), sample_config(args))
    logger.info(summarize(report.intersection))
    return report, report.intersection.passed


def cmd_pencil_expand(args: argparse.Namespace) -> Outcome:
    result = pencil_polynomial([_matrix(p) for p in args.matrices], _matrix(args.b))
    logger.info(summarize(result.verdict))
    return result, True


def cmd_cp_check(args: argparse.Namespace) -> Outcome:
    A = _matrix(args.matrix)
    if not 1 <= args.j <= A.order:
        raise InputFormatError(f"j must lie in 1..{A.order}", "argv:j")
    report = cauchy_poincare_check(A, args.j - 1, sample_config(args))
    return report, report.passed


def cmd_cd_verify(args: argparse.Namespace) -> Outcome:
    A = _matrix(args.matrix)
    for name in ("i", "j"):
        if not 1 <= getattr(args, name) <= A.order:
            raise InputFormatError(f"{name} must lie in 1..{A.order}", f"argv:{name}")
    holds = christoffel_darboux_verify(A, args.i - 1, args.j - 1)
    return {"holds": holds, "i": args.i, "j": args.j}, holds


def cmd_garding_check(args: argparse.Namespace) -> Outcome:
    verdict = garding_direction_check(_poly(args.file), sample_config(args))
    logger.info(summarize(verdict))
    return verdict, not verdict.refuted


def cmd_lax_verify(args: argparse.Namespace) -> Outcome:
    alpha = _rationals(args.alpha)
    if len(alpha) != 1:
        raise InputFormatError("alpha must be a single rational", "argv:alpha")
    report = lax_verify(_matrix(args.a), _matrix(args.b), _matrix(args.c), alpha[0], sample_config(args))
    logger.info(summarize(report.verdict))
    return report, not report.verdict.refuted


def cmd_symbol_curve(args: argparse.Namespace) -> Outcome:
    lo, hi = (_rationals(w)[0] for w in args.window)
    curve = symbol_curve(_operator(args.file), (lo, hi), args.resolution)
    logger.info("symbol curve: %d segments", len(curve.segments))
    return curve, True


def cmd_generate_corpus(args: argparse.Namespace) -> Outcome:
    config = CorpusConfig(
        num_samples=args.num_samples,
        random_seed=args.seed,
        output_dir=Path(args.output),
        render_curves=not args.no_curves,
        **({"kinds": args.kind} if args.kind else {}),
    )
    logger.info("Generating %d corpus items into %s", config.num_samples, config.output_dir)
    items = CorpusGenerator(config).generate_dataset()
    OutputWriter(config.output_dir).write_dataset(items)
    summary = {
        "output_dir": str(config.output_dir),
        "items": [item.item_id for item in items],
        "kinds": sorted({item.kind for item in items}),
    }
    return summary, True


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "check-stable": cmd_check_stable,
    "check-strict": cmd_check_strict,
    "certify-preserver": cmd_certify_preserver,
    "adjoint": cmd_adjoint,
    "compose": cmd_compose,
    "weyl-product": cmd_weyl_product,
    "multiplier-check": cmd_multiplier_check,
    "finite-multiplier": cmd_finite_multiplier,
    "schur-compose": cmd_schur_compose,
    "polya-curve": cmd_polya_curve,
    "pencil-expand": cmd_pencil_expand,
    "cp-check": cmd_cp_check,
    "cd-verify": cmd_cd_verify,
    "garding-check": cmd_garding_check,
    "lax-verify": cmd_lax_verify,
    "symbol-curve": cmd_symbol_curve,
    "generate-corpus": cmd_generate_corpus,
}


# ══════════════════════════════════════════════════════════════════════════════
#  PARSER
# ══════════════════════════════════════════════════════════════════════════════

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", choices=[c.value for c in StabilityClass], default=None,
                        help="Stability class (default depends on the command)")
    common.add_argument("--trials", type=int, default=None,
                        help=f"Sampled lines per decision (default {DEFAULT_TRIALS}, or ${TRIALS_ENV})")
    common.add_argument("--seed", type=int, default=0, help="Sampling seed")
    common.add_argument("--denominator-bound", type=int, default=64, help="Largest sampled denominator")
    common.add_argument("--out", default=None, help="Write output here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "svg", "png"], default="json")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")

    parser = argparse.ArgumentParser(prog=TOOL, description="Certify stable polynomials and stability preservers")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    add("check-stable", "Decide stability of a polynomial").add_argument("file")
    add("check-strict", "Decide strict stability of a polynomial").add_argument("file")

    p = add("certify-preserver", "Certify a Weyl-algebra operator as a stability preserver")
    p.add_argument("file")
    p.add_argument("--method", default="symbol",
                   choices=["symbol", "duality", "necessary", "sufficient", "coefficients", "dominating"])

    add("adjoint", "Adjoint of an operator").add_argument("file")
    for name, help_text in (("compose", "Compose two operators S T"), ("weyl-product", "Star product of two symbols")):
        p = add(name, help_text)
        p.add_argument("first")
        p.add_argument("second")

    add("multiplier-check", "Structure tests for multiplier data on a box").add_argument("file")
    add("finite-multiplier", "Certify a diagonal operator").add_argument("file")

    p = add("schur-compose", "Schur-type composition with a nonpositive-rooted f")
    p.add_argument("f", help="Univariate polynomial file with nonpositive zeros")
    p.add_argument("file", help="Stable polynomial file")
    p.add_argument("--var", type=int, default=1, help="1-based variable index")

    p = add("polya-curve", "Build the curve sum b_k x^k f^(k)(y) and test I_plus")
    p.add_argument("file", help="Hyperbolic univariate polynomial file")
    p.add_argument("--b", required=True, help="Comma separated coefficients b_0,b_1,...")

    p = add("pencil-expand", "Expand det(sum z_i A_i + B)")
    p.add_argument("matrices", nargs="+", help="PSD matrix files A_1 ... A_n")
    p.add_argument("--b", required=True, help="Hermitian matrix file B")

    p = add("cp-check", "Cauchy-Poincare check for a principal minor")
    p.add_argument("matrix")
    p.add_argument("j", type=int, help="1-based row/column to delete")

    p = add("cd-verify", "Verify the Christoffel-Darboux identity")
    p.add_argument("matrix")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)

    add("garding-check", "Hyperbolicity of the homogenization in positive directions").add_argument("file")

    p = add("lax-verify", "Verify f(x, y) = alpha det(xA + yB + C)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--alpha", default="1")

    p = add("symbol-curve", "Contour of F_T(z, w) = 0 for a one-variable operator")
    p.add_argument("file")
    p.add_argument("--window", nargs=2, default=["-3", "3"], metavar=("LO", "HI"))
    p.add_argument("--resolution", type=int, default=48)

    p = add("generate-corpus", "Write a seeded random corpus")
    p.add_argument("--num-samples", type=int, required=True)
    p.add_argument("--output", default="data/corpus")
    p.add_argument("--kind", action="append", default=None, help="Restrict to these kinds (repeatable)")
    p.add_argument("--no-curves", action="store_true", help="Skip symbol-curve SVGs")
    return parser


# ══════════════════════════════════════════════════════════════════════════════
#  ENTRY POINT
# ══════════════════════════════════════════════════════════════════════════════

def _emit(args: argparse.Namespace, result: Any) -> None:
    out = Path(args.out) if args.out else None
    if args.command == "symbol-curve":
        if args.format == "csv":
            OutputWriter.emit_text(result.to_csv(), out, sys.stdout)
            return
        if args.format == "svg":
            OutputWriter.emit_text(result.to_svg(), out, sys.stdout)
            return
        if args.format == "png":
            if out is None:
                raise InputFormatError("PNG output needs --out", "argv:--out")
            OutputWriter.save_image(result.to_png(), out)
            return
        result = {
            "window": [str(result.window[0]), str(result.window[1])],
            "resolution": result.resolution,
            "segments": [[[str(c) for c in a], [str(c) for c in b]] for a, b in result.segments],
        }
    elif args.format != "json":
        raise InputFormatError(f"{args.command} only writes JSON", "argv:--format")
    record = ResultRecord(
        tool=TOOL, version=__version__, command=args.command, seed=args.seed, result=_jsonable(result)
    )
    OutputWriter.emit_text(OutputWriter.dump_record(record), out, sys.stdout)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.trials is None:
            args.trials = default_trials()
        if args.command != "generate-corpus" and args.trials < 1:
            raise InputFormatError("--trials must be positive", "argv:--trials")
        result, ok = COMMANDS[args.command](args)
        _emit(args, result)
    except (StabkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
