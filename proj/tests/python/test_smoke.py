import math

import pytest

import envelopes as ev


def test_parse_and_differentiate():
    e = ev.parse("t^2 + 1")
    assert e.tree() == "add(pow(t,2),1)"
    d = ev.differentiate(ev.parse("m*t*sqrt(1-t^2)"))
    assert ev.evaluate(d, 0.0, {"m": 1.0}) == pytest.approx(1.0, abs=1e-15)


def test_parse_error_carries_offset():
    with pytest.raises(ev.ParseError) as info:
        ev.parse("t +* 2")
    assert "offset" in str(info.value)


def test_domain_error():
    with pytest.raises(ev.DomainError):
        ev.evaluate(ev.parse("sqrt(1-t^2)"), 1.5)


def test_intersect_circles():
    assert ev.intersect_circles((0, 0), 1, (2, 0), 1) == ("external", (1.0, 0.0))
    assert ev.intersect_circles((0, 0), 1, (5, 0), 1) == ("disjoint",)
    kind, p, q = ev.intersect_circles((0, 0), 1, (1, 0), 1)
    assert kind == "two_points"
    assert abs(p[1]) == pytest.approx(math.sqrt(3) / 2)


def test_tprime_envelope_on_ellipse():
    f = ev.tprime_family(1.0)
    (lo, hi), = ev.envelope_support(f)
    assert lo == pytest.approx(math.sin(math.pi / 8), abs=1e-9)
    assert hi == pytest.approx(math.cos(math.pi / 8), abs=1e-9)
    kind, pts = ev.discriminant_envelope(f, 0.6)
    assert kind == "pair"
    for x, y in pts:
        assert (x - 0.5) ** 2 / 2 + y**2 - 0.25 == pytest.approx(0.0, abs=1e-12)
    p1, p2 = ev.limiting_envelope(f, 0.6)
    assert p1 == pytest.approx(pts[0], abs=1e-12)
    assert p2 == pytest.approx(pts[1], abs=1e-12)


def test_ert_shape_and_sampling():
    a = [[0, 1], [0, 1]]
    shape = ev.ert_shape(a)
    assert shape["kind"] == "ellipse"
    assert shape["semi_minor"] == pytest.approx(0.5)
    pts = ev.sample_numerical_range(a, 2000, 3)
    assert pts == ev.sample_numerical_range(a, 2000, 3)
    assert max(ev.numerical_range_value(a, complex(x, y)) for x, y in pts) <= 1e-12


def test_horocycle_constants():
    h = ev.horocycle_constants(0.5, 1.0)
    assert (h["c1"], h["R1"], h["c2"], h["R2"]) == (0.25, 0.75, 0.75, 0.25)


def test_oracle_line_family():
    f = ev.line_family(0.5)
    cells, cell, occupied = ev.rasterize_boundary(f, (-1.3, 1.3, -1.3, 1.3), 200, 1000)
    d1, d2 = ev.line_boundary(0.5)
    assert d1 == pytest.approx((0.0, -0.75, 1.25))
    assert occupied > 0
    truth = []
    for i in range(400):
        s = -1 + 2 * i / 399
        x = 1.25 * s / (1 + 0.25 * s * s)
        y = 0.5 * (1 - s * s) / (1 + 0.25 * s * s)
        truth += [(x, y), (x, -y)]
    assert ev.hausdorff(cells, truth) <= 2 * cell


def test_invalid_family_rejected():
    with pytest.raises(ev.Error):
        ev.CircleFamily("t", "0", "1", 1.0, 0.0)
