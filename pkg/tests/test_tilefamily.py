from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from monotile.geom import GeometryError, interior_angles, is_simple, shoelace_area, similarity_between
from monotile.numeric import ONE, QS3, SQRT3, ParseError, parse_qs3
from monotile.tilefamily import (
    A_EDGES, B_EDGES, LABELS, SIGN_STEPS, SignTable, build_tile, derive_sign_table,
    format_sign_table, load_sign_table, named_tile, parse_sign_table, raw_angle_sum,
    raw_edge_lengths2, trace, verify_prop2,
)

from conftest import unit_rationals

HAT_A = QS3(Fraction(-1, 2), Fraction(1, 2))

# Areas of the named tiles from their kite assemblies: n kites of area sqrt3,
# shrunk by the assembly scale s, give n*sqrt3/s^2.
KITE_AREAS = {
    "hat": SQRT3 * 8 / (1 + SQRT3) ** 2,
    "turtle": SQRT3 * 10 / (1 + SQRT3) ** 2,
    "t01": SQRT3 * 12 / (2 * SQRT3) ** 2,
    "t10": SQRT3 * 24 / (2 * SQRT3) ** 2,
}


def test_kite_area_oracle_values():
    assert KITE_AREAS["hat"] == QS3(-12, 8)
    assert KITE_AREAS["turtle"] == QS3(-15, 10)
    assert KITE_AREAS["t01"] == SQRT3
    assert KITE_AREAS["t10"] == 2 * SQRT3


def test_shipped_sign_table_regenerates():
    derived = derive_sign_table()
    assert derived[0] == load_sign_table()
    assert len(derived) == 1


def test_sign_table_text_roundtrip():
    signs = load_sign_table()
    assert parse_sign_table(format_sign_table(signs)) == signs
    text = resources.files("monotile").joinpath("data/signs.txt").read_text()
    assert parse_sign_table(text) == signs
    with pytest.raises(ValueError):
        parse_sign_table("D +\nF -\n")


@pytest.mark.parametrize("step", SIGN_STEPS)
def test_every_flipped_sign_breaks_the_tile(step):
    signs = load_sign_table().flipped(step)
    a = QS3(Fraction(37, 100))
    pts, _ = trace(a, signs)
    from monotile.geom import Polygon
    closes = (pts[-1] - pts[0]).norm2() == a * a
    assert not (closes and is_simple(Polygon(pts)))


@pytest.mark.parametrize("name, area", sorted(KITE_AREAS.items()))
def test_named_tile_area_matches_kites(name, area):
    assert shoelace_area(named_tile(name).normalized) == area


def test_area_is_a_quadratic_form_in_a_and_b():
    # fit c0 + c1 a + c2 a^2 through t01, t10 and hat, then predict the rest
    a_h = HAT_A
    q0, q1, qh = KITE_AREAS["t01"], KITE_AREAS["t10"], KITE_AREAS["hat"]
    # q(a) = q0 + c1 a + c2 a^2 with q0 + c1 + c2 = q1
    c2 = (qh - q0 - (q1 - q0) * a_h) / (a_h * a_h - a_h)
    c1 = q1 - q0 - c2
    for expr in ("1/2", "(3-sqrt3)/2", "1/3"):
        a = parse_qs3(expr)
        assert shoelace_area(build_tile(a).normalized) == q0 + c1 * a + c2 * a * a
    turtle_a = parse_qs3("(3-sqrt3)/2")
    assert q0 + c1 * turtle_a + c2 * turtle_a ** 2 == KITE_AREAS["turtle"]


def test_raw_vertices_and_labels(hat):
    assert len(hat.raw) == 14
    assert hat.vertex("A") == hat.raw[0]
    assert hat.vertex("B") == hat.raw[1]
    lengths = raw_edge_lengths2(hat)
    assert set(lengths) == set(LABELS)
    assert sorted(A_EDGES + B_EDGES) == list(LABELS)


def test_hat_edge_lengths_and_angles(hat):
    lengths = raw_edge_lengths2(hat)
    assert all(lengths[e] == hat.a ** 2 for e in A_EDGES)
    assert all(lengths[e] == hat.b ** 2 for e in B_EDGES)
    assert raw_angle_sum(hat) == 2160
    assert len(hat.normalized) == 13
    assert set(interior_angles(hat.normalized)) == {3, 4, 8, 9}


def test_degenerate_members():
    t01 = build_tile(0)
    t10 = build_tile(1)
    assert len(t01.normalized) == 6
    assert len(t10.normalized) == 7
    # Tile(1,0) is a chevron: all unit edges except the straight run A-B-C of length 2
    lengths = sorted(float((q - p).norm2()) for p, q in t10.normalized.edges())
    assert lengths == [1, 1, 1, 1, 1, 1, 4]
    assert is_simple(t01.normalized) and is_simple(t10.normalized)


def test_named_params():
    assert named_tile("hat").a == HAT_A
    assert named_tile("turtle").a == parse_qs3("(3-sqrt3)/2")
    assert named_tile("t11").a == parse_qs3("1/2")
    with pytest.raises(ValueError):
        named_tile("spectre")


def test_hat_and_turtle_swap_a_and_b():
    hat, turtle = named_tile("hat"), named_tile("turtle")
    assert hat.a == turtle.b and hat.b == turtle.a


@pytest.mark.parametrize("bad", ["-1/3", "3/2", "1 + sqrt3"])
def test_parameter_range(bad):
    with pytest.raises(ValueError):
        build_tile(bad)


def test_unparseable_parameter():
    with pytest.raises(ParseError):
        build_tile("1/(")


def test_non_closing_sign_table():
    with pytest.raises(GeometryError):
        build_tile(Fraction(37, 100), load_sign_table().flipped("D"))


@settings(max_examples=30, deadline=None)
@given(unit_rationals)
def test_closure_and_simplicity_for_rational_a(a):
    t = build_tile(a)
    assert (t.raw[-1] - t.raw[0]).norm2() == t.a * t.a
    assert raw_angle_sum(t) == 2160
    assert is_simple(t.raw)
    assert shoelace_area(t.normalized).sign() > 0


@settings(max_examples=20, deadline=None)
@given(unit_rationals, st.sampled_from([QS3(Fraction(1, 2)), QS3(2), 1 + SQRT3]))
def test_prop2(a, k):
    assert verify_prop2(build_tile(a), k)


def test_prop2_rejects_bad_scale(hat):
    with pytest.raises(ValueError):
        verify_prop2(hat, 0)


def test_tile_ka_kb_is_similar():
    # Tile(ka, kb) built by hand with a scaled trace equals the scaled tile
    a = QS3(Fraction(2, 5))
    t = build_tile(a)
    pts, _ = trace(a, load_sign_table())
    big = [p * 3 for p in pts]
    from monotile.geom import Polygon, normalize_polygon
    w = similarity_between(t.normalized, normalize_polygon(Polygon(big)))
    assert w.exact and w.scale == QS3(3)
