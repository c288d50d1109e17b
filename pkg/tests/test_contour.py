"""Tests for symbol-curve extraction and rendering."""

from fractions import Fraction

import numpy as np
import pytest

from src.contour import cell_cases, extract_curve, sign_changes, symbol_curve
from src.errors import DimensionError, NonRealError, ZeroPolynomialError
from src.polycore import I, MultiPoly
from src.weylalg import WeylOp, symbol

WINDOW = (Fraction(-3), Fraction(3))

# 1 + z d/dz, symbol 1 + zw
EULER = WeylOp(1, [(((0,), (0,)), 1), (((1,), (1,)), 1)])


def test_hyperbola_points_lie_on_the_curve():
    curve = symbol_curve(EULER, WINDOW, 12)
    F = symbol(EULER)
    assert curve.segments
    assert sign_changes(F, curve)
    for z, w in curve.points():
        # F is affine along grid edges, so interpolated crossings are exact
        assert F.evaluate([z, w]) == 0
        assert z * w < 0
        assert WINDOW[0] <= z <= WINDOW[1]


def test_curve_csv():
    curve = symbol_curve(EULER, WINDOW, 12)
    lines = curve.to_csv().splitlines()
    assert lines[0] == "z,w"
    assert len(lines) == len(curve.points()) + 1
    z, w = (float(x) for x in lines[1].split(","))
    assert z * w == pytest.approx(-1.0)


def test_empty_curve():
    z, w = MultiPoly.variables(2)
    curve = extract_curve(z * z + w * w + 1, WINDOW, 8)
    assert curve.segments == []
    assert sign_changes(z * z + w * w + 1, curve)
    assert curve.to_csv().splitlines() == ["z,w"]


def test_circle_is_closed():
    z, w = MultiPoly.variables(2)
    curve = extract_curve(z * z + w * w - 4, WINDOW, 16)
    endpoints = {}
    for a, b in curve.segments:
        endpoints[a] = endpoints.get(a, 0) + 1
        endpoints[b] = endpoints.get(b, 0) + 1
    assert endpoints
    assert all(count == 2 for count in endpoints.values())


def test_cell_cases():
    positive = np.array([[True, False, False], [True, True, False]])
    # corners (i, j), (i+1, j), (i+1, j+1), (i, j+1) carry bits 0..3
    assert cell_cases(positive).tolist() == [[7, 2]]
    assert cell_cases(np.ones((3, 3), dtype=bool)).tolist() == [[15, 15], [15, 15]]
    with pytest.raises(DimensionError):
        cell_cases(np.ones((1, 4), dtype=bool))


def test_saddle_cell_gets_two_segments():
    z, w = MultiPoly.variables(2)
    F = (z - Fraction(1, 2)) * (w - Fraction(1, 2)) - Fraction(1, 100)
    # the cell [0, 1] x [0, 1] alternates in sign around its corners; two more cells carry one segment each
    curve = extract_curve(F, (Fraction(-1), Fraction(1)), 2)
    assert len(curve.segments) == 4
    assert sign_changes(F, curve)
    for z0, w0 in curve.points():
        assert F.evaluate([z0, w0]) == 0


def test_curve_errors():
    with pytest.raises(NonRealError):
        symbol_curve(WeylOp(1, [(((1,), (0,)), I)]), WINDOW, 8)
    with pytest.raises(ZeroPolynomialError):
        symbol_curve(WeylOp(1, []), WINDOW, 8)
    with pytest.raises(DimensionError):
        symbol_curve(WeylOp.identity(2), WINDOW, 8)
    with pytest.raises(DimensionError):
        extract_curve(MultiPoly.variable(3, 0), WINDOW, 8)
    with pytest.raises(ValueError):
        extract_curve(symbol(EULER), WINDOW, 1)
    with pytest.raises(ValueError):
        extract_curve(symbol(EULER), (Fraction(1), Fraction(1)), 8)


def test_svg_rendering():
    curve = symbol_curve(EULER, WINDOW, 12)
    svg = curve.to_svg((200, 200))
    assert svg.startswith("<svg")
    assert 'width="200"' in svg
    # diagonal and both axes are drawn under the curve
    assert svg.count("<polyline") == len(curve.segments) + 3
    assert svg.rstrip().endswith("</svg>")


def test_png_rendering():
    curve = symbol_curve(EULER, WINDOW, 12)
    image = curve.to_png((120, 90))
    assert image.size == (120, 90)
    assert image.mode == "RGB"
    colors = {color for _, color in image.getcolors(maxcolors=120 * 90)}
    assert (37, 99, 235) in colors
