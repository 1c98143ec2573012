import itertools

import pytest
from hypothesis import given, settings, strategies as st

from monotile.geom import (
    canonical_signature, convex_interiors_overlap, interior_angles, normalize_polygon,
    shoelace_area, similarity_between,
)
from monotile.kite import (
    FIXTURES, KITE_COUNTS, AssemblyError, AssemblySpec, SearchLimitExceeded, assemble, boundary,
    derive_fixture, fixture_text, format_spec, laves_kite, load_spec, parse_spec,
    search_assembly, spec_header,
)
from monotile.geom import Point
from monotile.numeric import HALF, ONE, QS3, SQRT3
from monotile.tilefamily import named_tile

H3 = SQRT3 / 2


def test_laves_kite_coordinates():
    k = laves_kite()
    assert (k.A, k.B, k.C, k.B_prime) == (
        Point(0, 0), Point(1, 0), Point(1, SQRT3), Point(-HALF, H3))


def test_laves_kite_lengths_angles_area():
    k = laves_kite()
    assert (k.B - k.A).norm2() == ONE == (k.B_prime - k.A).norm2()
    assert (k.C - k.B).norm2() == QS3(3) == (k.C - k.B_prime).norm2()
    # 120 at A, 90 at B, 60 at C, 90 at B'
    assert interior_angles(k.polygon) == [4, 3, 2, 3]
    assert shoelace_area(k.polygon) == SQRT3


def test_first_reflection_by_hand():
    asm = assemble([(0, 0)])
    # mirror image of the kite in the x-axis
    assert list(asm.kites[1].polygon.vertices) == [
        Point(0, 0), Point(1, 0), Point(1, -SQRT3), Point(-HALF, -H3)]
    assert asm.placements[1].det() == -ONE


def test_assembly_errors():
    with pytest.raises(AssemblyError, match="bad index"):
        assemble([(1, 0)])
    with pytest.raises(AssemblyError, match="bad index"):
        assemble([(0, 4)])
    with pytest.raises(AssemblyError, match="duplicate"):
        assemble([(0, 0), (1, 0)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 3)), max_size=8))
def test_grid_kites_never_partially_overlap(steps):
    # every reachable kite is a tile of one Laves grid: two kites coincide or are interior-disjoint
    kites = [laves_kite()]
    from monotile.geom import Isometry, Line
    for src, e in steps:
        p, q = kites[src % len(kites)].edge(e)
        g = Isometry.reflection(Line.through(p, q))
        kites.append(type(kites[0])(kites[src % len(kites)].polygon.transformed(g)))
    for a, b in itertools.combinations(kites, 2):
        same = set(a.polygon.vertices) == set(b.polygon.vertices)
        assert same or not convex_interiors_overlap(a.polygon, b.polygon)


def test_boundary_of_single_kite_is_the_kite():
    asm = assemble([])
    assert set(boundary(asm).vertices) == set(laves_kite().polygon.vertices)


def test_spec_text_roundtrip():
    spec = AssemblySpec([(0, 1), (1, 2)])
    text = format_spec(spec, {"kites": "3"})
    assert parse_spec(text) == spec
    assert spec_header(text) == {"kites": "3"}
    with pytest.raises(ValueError):
        parse_spec("0 1 2\n")


def test_load_spec_from_path(tmp_path):
    path = tmp_path / "x.spec"
    path.write_text(fixture_text("hat"))
    assert load_spec(path) == load_spec("hat")


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_outline_is_the_named_tile(name):
    asm = assemble(load_spec(name))
    outline = normalize_polygon(boundary(asm))
    n = KITE_COUNTS[name]
    assert len(asm) == n
    assert shoelace_area(outline) == SQRT3 * n
    w = similarity_between(named_tile(name).normalized, outline)
    assert w.exact
    assert str(w.scale) == spec_header(fixture_text(name))["scale"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_regenerates(name):
    spec, header = derive_fixture(name)
    text = fixture_text(name)
    assert parse_spec(text) == spec
    recorded = spec_header(text)
    assert all(recorded[k] == v for k, v in header.items())


@pytest.mark.slow
def test_pruned_and_signature_search_agree_on_hat():
    hat = named_tile("hat").normalized
    pruned = {assemble(s).placement_set() for s in search_assembly(hat, 8)}
    sig = canonical_signature(hat, "similarity")
    full = {assemble(s).placement_set() for s in search_assembly(sig, 8)}
    assert pruned == full
    assert assemble(load_spec("hat")).placement_set() in full


def test_search_limit():
    sig = canonical_signature(named_tile("hat").normalized, "similarity")
    with pytest.raises(SearchLimitExceeded):
        search_assembly(sig, 8, limit=100)


def test_search_needs_polygon_for_pruning():
    sig = canonical_signature(named_tile("hat").normalized, "similarity")
    with pytest.raises(ValueError):
        search_assembly(sig, 8, prune=True)
    with pytest.raises(ValueError):
        search_assembly(sig, 0)


def test_search_finds_nothing_at_wrong_count():
    assert search_assembly(named_tile("hat").normalized, 7) == []
