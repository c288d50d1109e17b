"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                         RANDOM CORPUS GENERATOR                               ║
║                                                                               ║
║  Seeded corpora of stable and unstable polynomials and of certified and       ║
║  refuted operators. Every item carries the certificate that decided it and    ║
║  the expected answer, so the deciders can be cross-checked in bulk.           ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

import json
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from core import BaseGenerator, CorpusItem
from .codec import MatrixDocument, OperatorDocument, PolyDocument
from .config import CorpusConfig, SampleConfig
from .contour import symbol_curve
from .pencils import certify_pencil_operator, pencil_polynomial
from .polycore import GaussianMatrix, GaussRat, MultiPoly, UniPoly
from .preservers import certify_preserver, finite_multiplier_certify
from .stability import check_stable
from .summaries import summarize
from .verdicts import StabilityClass
from .weylalg import WeylOp, polynomial_in_derivatives

logger = logging.getLogger(__name__)

CHECK_TRIALS = 64
UNIQUE_ATTEMPTS = 25


# ══════════════════════════════════════════════════════════════════════════════
#  RANDOM MATRICES
# ══════════════════════════════════════════════════════════════════════════════

def random_rational(rng: np.random.Generator, bound: int = 3, denominator_bound: int = 4) -> Fraction:
    q = int(rng.integers(1, denominator_bound + 1))
    return Fraction(int(rng.integers(-bound * q, bound * q + 1)), q)


def random_square(
    rng: np.random.Generator, order: int, bound: int = 3, denominator_bound: int = 4, complex_entries: bool = True
) -> GaussianMatrix:
    def entry() -> GaussRat:
        im = random_rational(rng, bound, denominator_bound) if complex_entries else 0
        return GaussRat(random_rational(rng, bound, denominator_bound), im)

    return GaussianMatrix([[entry() for _ in range(order)] for _ in range(order)])


def random_hermitian(
    rng: np.random.Generator, order: int, bound: int = 3, denominator_bound: int = 4, complex_entries: bool = True
) -> GaussianMatrix:
    """(M + M*) / 2 for a random Gaussian-rational M."""
    M = random_square(rng, order, bound, denominator_bound, complex_entries)
    return (M + M.conj_transpose()).scale(Fraction(1, 2))


def random_psd(
    rng: np.random.Generator, order: int, bound: int = 3, denominator_bound: int = 4, complex_entries: bool = True
) -> GaussianMatrix:
    """M M* for a random M, optionally of deficient rank."""
    M = random_square(rng, order, bound, denominator_bound, complex_entries)
    if order > 1 and rng.random() < 0.25:
        rows = [list(M[i, j] for j in range(order)) for i in range(order)]
        rows[-1] = [GaussRat(0)] * order
        M = GaussianMatrix(rows)
    return M * M.conj_transpose()


# ══════════════════════════════════════════════════════════════════════════════
#  GENERATOR
# ══════════════════════════════════════════════════════════════════════════════

class CorpusGenerator(BaseGenerator):
    """
    Cycles through the configured kinds:

        pencil            det(sum z_i A_i + B), proven stable
        perturbed         a pencil polynomial times (z_1^2 + c^2), unstable
        operator          one-variable pencil operator, certified preserver
        refuted_operator  p(d/dz) with p not hyperbolic
        diagonal          symbol f(zw) with integer roots, multiplier test
    """

    def __init__(self, config: CorpusConfig):
        super().__init__(config)
        self._seen_signatures: set[str] = set()
        self.sample_config = SampleConfig(trials=CHECK_TRIALS, seed=config.random_seed or 0)
        self._builders: Dict[str, Callable[[], Dict[str, Any]]] = {
            "pencil": self._pencil_item,
            "perturbed": self._perturbed_item,
            "operator": self._operator_item,
            "refuted_operator": self._refuted_operator_item,
            "diagonal": self._diagonal_item,
        }
        unknown = set(config.kinds) - set(self._builders)
        if unknown:
            raise ValueError(f"unknown corpus kinds: {sorted(unknown)}")

    def generate_item(self, item_id: str, index: int) -> CorpusItem:
        kind = self.config.kinds[index % len(self.config.kinds)]
        data = self._unique(kind)
        return CorpusItem(item_id=item_id, domain=self.config.domain, kind=kind, **data)

    def _unique(self, kind: str) -> Dict[str, Any]:
        data = self._builders[kind]()
        for _ in range(UNIQUE_ATTEMPTS):
            signature = self._build_signature(kind, data["payload"])
            if signature not in self._seen_signatures:
                self._seen_signatures.add(signature)
                return data
            data = self._builders[kind]()
        # give up on uniqueness and keep the last draw
        return data

    @staticmethod
    def _build_signature(kind: str, payload: Dict[str, Any]) -> str:
        body = {k: v for k, v in payload.items() if k != "summary"}
        return f"{kind}|" + json.dumps(body, sort_keys=True)

    # ── random pieces ────────────────────────────────────────────────────────

    def _rational(self) -> Fraction:
        return random_rational(self.rng, self.config.coefficient_bound, self.config.denominator_bound)

    def _pick(self, bounds) -> int:
        lo, hi = bounds
        return int(self.rng.integers(lo, hi + 1))

    def _psd(self, order: int, real: bool = False) -> GaussianMatrix:
        return random_psd(
            self.rng, order, self.config.coefficient_bound, self.config.denominator_bound, not real
        )

    def _hermitian(self, order: int, real: bool = False) -> GaussianMatrix:
        return random_hermitian(
            self.rng, order, self.config.coefficient_bound, self.config.denominator_bound, not real
        )

    # ── kinds ────────────────────────────────────────────────────────────────

    def _pencil(self) -> Dict[str, Any]:
        order = self._pick(self.config.matrix_order)
        n = self._pick(self.config.nvars)
        As = [self._psd(order) for _ in range(n)]
        B = self._hermitian(order)
        certified = pencil_polynomial(As, B)
        return {"As": As, "B": B, "certified": certified}

    def _pencil_item(self) -> Dict[str, Any]:
        pencil = self._pencil()
        certified = pencil["certified"]
        payload = {
            "As": [MatrixDocument.from_matrix(A).model_dump(mode="json") for A in pencil["As"]],
            "B": MatrixDocument.from_matrix(pencil["B"]).model_dump(mode="json"),
            "polynomial": PolyDocument.from_poly(certified.poly).model_dump(mode="json"),
            "summary": summarize(certified.verdict),
        }
        certificate = certified.verdict.certificate
        return {
            "payload": payload,
            "certificate": certificate.value if certificate else certified.verdict.status.value,
            "expected_stable": not certified.poly.is_zero,
        }

    def _perturbed_item(self) -> Dict[str, Any]:
        certified = self._pencil()["certified"]
        f = certified.poly if not certified.poly.is_zero else MultiPoly.one(certified.poly.nvars)
        c = abs(self._rational()) or Fraction(1)
        z1 = MultiPoly.variable(f.nvars, 0)
        g = f * (z1 * z1 + c * c)
        verdict = check_stable(g, StabilityClass.HR, self.sample_config)
        if not verdict.refuted:
            logger.debug("sampling missed the instability of a perturbed pencil polynomial")
        payload = {
            "polynomial": PolyDocument.from_poly(g),
            "summary": summarize(verdict),
        }
        return {
            "payload": _jsonable(payload),
            "certificate": verdict.status.value,
            "expected_stable": False,
        }

    def _operator_item(self) -> Dict[str, Any]:
        order = self._pick(self.config.matrix_order)
        for _ in range(UNIQUE_ATTEMPTS):
            A, B = self._psd(order, real=True), self._psd(order, real=True)
            C = self._hermitian(order, real=True)
            alpha = self._rational() or Fraction(1)
            try:
                T, verdict = certify_pencil_operator(A, B, C, alpha)
            except ValueError:
                continue
            break
        else:
            T, verdict = certify_pencil_operator(
                GaussianMatrix.identity(order), GaussianMatrix.identity(order), GaussianMatrix.zeros(order)
            )
        payload = {"operator": OperatorDocument.from_op(T), "summary": summarize(verdict)}
        return {
            "payload": _jsonable(payload),
            "certificate": verdict.inner.certificate.value,
            "expected_stable": True,
            "curve_svg": self._curve(T),
        }

    def _refuted_operator_item(self) -> Dict[str, Any]:
        a = abs(self._rational()) or Fraction(1)
        b = self._rational()
        roots = [self._rational() for _ in range(self._pick((0, 2)))]
        p = UniPoly.from_real([b * b + a * a, -2 * b, 1]) * UniPoly.from_roots(roots)
        T = polynomial_in_derivatives(p)
        verdict = certify_preserver(T, StabilityClass.HR, self.sample_config)
        payload = {"operator": OperatorDocument.from_op(T), "summary": summarize(verdict)}
        return {
            "payload": _jsonable(payload),
            "certificate": verdict.outcome.value,
            "expected_stable": False,
            "curve_svg": self._curve(T),
        }

    def _diagonal_item(self) -> Dict[str, Any]:
        roots = [int(self.rng.integers(-3, 4)) for _ in range(self._pick((1, 3)))]
        f = UniPoly.from_roots(roots)
        T = WeylOp(1, [(((k,), (k,)), c) for k, c in enumerate(f.coeffs)])
        verdict = finite_multiplier_certify(T)
        payload = {
            "operator": OperatorDocument.from_op(T),
            "roots": roots,
            "summary": summarize(verdict),
        }
        return {
            "payload": _jsonable(payload),
            "certificate": "certified" if verdict.certified else "refuted",
            "expected_stable": all(r <= 0 for r in roots),
            "curve_svg": self._curve(T),
        }

    def _curve(self, T: WeylOp) -> Optional[str]:
        if not self.config.render_curves:
            return None
        lo, hi = self.config.curve_window
        curve = symbol_curve(T, (Fraction(lo), Fraction(hi)), self.config.curve_resolution)
        return curve.to_svg(self.config.image_size)


def _jsonable(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v.model_dump(mode="json") if hasattr(v, "model_dump") else v for k, v in payload.items()}


def generate_corpus(config: CorpusConfig) -> List[CorpusItem]:
    return CorpusGenerator(config).generate_dataset()
