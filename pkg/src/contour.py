"""
Symbol curves: the real zero set of a bivariate symbol F(z, w).

Marching squares on an exact rational grid. Corner values are evaluated
exactly into an object array; the sign grid and the per-cell case indices
are numpy array operations, and only the cells the curve enters are visited.
Edge crossings are linear interpolations between exact corner values, so
every reported point lies on a grid edge where F changes sign (or on a grid
vertex where F vanishes). Saddle cells are resolved with the exact value at
the cell centre.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from core import CurveRenderer, OutputWriter
from .errors import DimensionError, NonRealError, ZeroPolynomialError
from .polycore import MultiPoly
from .weylalg import WeylOp, symbol

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]
Segment = Tuple[Point, Point]

# corner order: (i, j), (i+1, j), (i+1, j+1), (i, j+1); edge k joins corner k and k+1
_EDGES = ((0, 1), (1, 2), (2, 3), (3, 0))


@dataclass
class SymbolCurve:
    """Contour segments of F = 0 inside the square window."""

    window: Tuple[Fraction, Fraction]
    resolution: int
    segments: List[Segment] = field(default_factory=list)

    def points(self) -> List[Point]:
        """Distinct segment endpoints in first-seen order."""
        seen: Dict[Point, None] = {}
        for a, b in self.segments:
            seen.setdefault(a, None)
            seen.setdefault(b, None)
        return list(seen)

    def float_segments(self) -> List[Tuple[Tuple[float, float], Tuple[float, float]]]:
        return [((float(a[0]), float(a[1])), (float(b[0]), float(b[1]))) for a, b in self.segments]

    def to_csv(self) -> str:
        rows = [(_decimal(z), _decimal(w)) for z, w in self.points()]
        return OutputWriter.dump_csv(("z", "w"), rows)

    def to_svg(self, image_size: Tuple[int, int] = (480, 480)) -> str:
        return self._renderer(image_size).render_svg(self.float_segments())

    def to_png(self, image_size: Tuple[int, int] = (480, 480)):
        return self._renderer(image_size).render_png(self.float_segments())

    def _renderer(self, image_size: Tuple[int, int]) -> CurveRenderer:
        return CurveRenderer(image_size=image_size, window=(float(self.window[0]), float(self.window[1])))


def _decimal(q: Fraction) -> str:
    return f"{float(q):.10g}"


def _crossing(p: Point, q: Point, fp: Fraction, fq: Fraction) -> Point:
    t = fp / (fp - fq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _real_value(F: MultiPoly, z: Fraction, w: Fraction) -> Fraction:
    return F.evaluate([z, w]).re


def cell_cases(positive: np.ndarray) -> np.ndarray:
    """Marching-squares case index per cell; bit k is set when corner k is positive.

    Cases 0 and 15 are cells the curve does not enter.
    """
    positive = np.asarray(positive, dtype=bool)
    if positive.ndim != 2 or min(positive.shape) < 2:
        raise DimensionError("the sign grid needs at least 2 x 2 corners")
    return (
        positive[:-1, :-1].astype(np.uint8)
        | positive[1:, :-1].astype(np.uint8) << 1
        | positive[1:, 1:].astype(np.uint8) << 2
        | positive[:-1, 1:].astype(np.uint8) << 3
    )


def extract_curve(
    F: MultiPoly,
    window: Tuple[Fraction, Fraction] = (Fraction(-3), Fraction(3)),
    resolution: int = 48,
) -> SymbolCurve:
    """Contour of the real bivariate polynomial F over window x window."""
    if F.nvars != 2:
        raise DimensionError(f"symbol curves live in 2 variables, got {F.nvars}")
    if F.is_zero:
        raise ZeroPolynomialError("the zero polynomial vanishes on the whole window")
    if not F.is_real():
        raise NonRealError("symbol curves need real coefficients")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if hi <= lo:
        raise ValueError("window must have lo < hi")

    step = (hi - lo) / resolution
    ticks = [lo + k * step for k in range(resolution + 1)]
    values = np.array([[_real_value(F, z, w) for w in ticks] for z in ticks], dtype=object)
    positive = np.greater(values, 0).astype(bool)
    case = cell_cases(positive)
    active = np.argwhere((case != 0) & (case != 15))

    curve = SymbolCurve(window=(lo, hi), resolution=resolution)
    for i, j in active.tolist():
        corners = ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1))
        inside = [bool(case[i, j] >> k & 1) for k in range(4)]
        pts = [(ticks[a], ticks[b]) for a, b in corners]
        vals = [values[a, b] for a, b in corners]
        hits = [
            _crossing(pts[s], pts[t], vals[s], vals[t])
            for s, t in _EDGES
            if inside[s] != inside[t]
        ]
        if len(hits) == 2:
            curve.segments.append((hits[0], hits[1]))
            continue
        # saddle: four crossings on edges 0..3 in order
        centre = _real_value(F, ticks[i] + step / 2, ticks[j] + step / 2)
        if (centre > 0) == inside[0]:
            curve.segments.append((hits[0], hits[1]))
            curve.segments.append((hits[2], hits[3]))
        else:
            curve.segments.append((hits[3], hits[0]))
            curve.segments.append((hits[1], hits[2]))
    logger.debug("extracted %d segments at resolution %d", len(curve.segments), resolution)
    return curve


def symbol_curve(
    T: WeylOp,
    window: Tuple[Fraction, Fraction] = (Fraction(-3), Fraction(3)),
    resolution: int = 48,
) -> SymbolCurve:
    """The curve F_T(z, w) = 0 of a one-variable real operator."""
    if T.nvars != 1:
        raise DimensionError("symbol curves are drawn for one-variable operators")
    if not T.is_real():
        raise NonRealError("symbol curves need a real operator")
    return extract_curve(symbol(T), window, resolution)


def sign_changes(F: MultiPoly, curve: SymbolCurve) -> bool:
    """Every segment endpoint lies on a grid edge whose endpoints straddle F = 0."""
    lo, _ = curve.window
    step = (curve.window[1] - lo) / curve.resolution
    for z, w in curve.points():
        fz, fw = (z - lo) / step, (w - lo) / step
        if fz.denominator == 1:
            a = (z, lo + (fw.numerator // fw.denominator) * step)
            b = (z, a[1] + step)
        elif fw.denominator == 1:
            a = (lo + (fz.numerator // fz.denominator) * step, w)
            b = (a[0] + step, w)
        else:
            return False
        fa, fb = _real_value(F, *a), _real_value(F, *b)
        if _real_value(F, z, w) != 0 and (fa > 0) == (fb > 0):
            return False
    return True
