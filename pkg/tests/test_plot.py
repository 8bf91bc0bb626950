import re
import xml.etree.ElementTree as ET

import pytest

from rtinfluence import CurvePoint
from rtinfluence.exceptions import EmptyCurveError
from rtinfluence.plot import render_svg

NS = {"svg": "http://www.w3.org/2000/svg"}


def _points(means):
    return [CurvePoint(i + 1, m, 0.01, 100) for i, m in enumerate(means)]


def test_three_markers():
    root = ET.fromstring(render_svg(_points([0.2, 0.3, 0.25])))
    assert len(root.findall(".//svg:circle[@class='point']", NS)) == 3
    assert len(root.findall(".//svg:line[@class='errbar']", NS)) == 3


def test_deterministic():
    pts = _points([0.1, 0.5])
    assert render_svg(pts) == render_svg(list(pts))


def test_monotone_curve_rises():
    svg = render_svg(_points([0.1, 0.2, 0.35, 0.5, 0.51]))
    root = ET.fromstring(svg)
    poly = root.find(".//svg:polyline[@class='curve']", NS)
    ys = [float(pair.split(",")[1]) for pair in poly.get("points").split()]
    assert all(a > b for a, b in zip(ys, ys[1:]))


def test_error_bar_length():
    # half-width 1.96 * sqrt(0.01 / 100) = 0.0196 of the unit y range
    root = ET.fromstring(render_svg([CurvePoint(1, 0.5, 0.01, 100), CurvePoint(2, 0.5, 0.01, 100)]))
    bar = root.find(".//svg:line[@class='errbar']", NS)
    length = abs(float(bar.get("y1")) - float(bar.get("y2")))
    from rtinfluence.plot import BOTTOM, HEIGHT, TOP
    assert length == pytest.approx(2 * 0.0196 * (HEIGHT - TOP - BOTTOM), abs=0.02)


def test_single_point_and_empty():
    assert len(re.findall(r'class="point"', render_svg(_points([0.4])))) == 1
    with pytest.raises(EmptyCurveError):
        render_svg([])
