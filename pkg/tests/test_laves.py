import pytest

from monotile.geom import Point, interior_angles, shoelace_area, similarity_between
from monotile.kite import laves_kite
from monotile.laves import centroid, dual, patch_3464, triangular_patch
from monotile.numeric import ONE, QS3, SQRT3


def test_triangular_patch_counts():
    # a hexagon of radius r in the triangular lattice holds 6 r^2 triangles,
    # here each lattice cell contributes two, so 2 * (3r^2 + 3r + 1) faces
    for r in (1, 2, 3):
        patch = triangular_patch(r)
        assert len(patch.faces) == 2 * (3 * r * r + 3 * r + 1)
    assert all(len(f) == 3 and shoelace_area(f) == SQRT3 / 4 for f in triangular_patch(2).faces)


def test_every_interior_vertex_of_the_triangles_has_six_faces():
    patch = triangular_patch(2)
    for v in patch.interior_vertices():
        assert len(patch.vertices[v]) == 6
        assert patch.angle_sum(v) == 12


def test_fan_is_counter_clockwise():
    patch = patch_3464(1)
    v = Point(0, 0)
    sizes = [len(patch.faces[i]) for i in patch.fan(v)]
    assert sorted(sizes) == [3, 4, 4, 6]
    # 3.4.6.4 read cyclically
    i = sizes.index(6)
    assert sizes[i:] + sizes[:i] == [6, 4, 3, 4]


def test_patch_3464_faces():
    patch = patch_3464(2)
    by_size = {n: [f for f in patch.faces if len(f) == n] for n in (3, 4, 6)}
    assert all(shoelace_area(f) == 3 * SQRT3 / 2 for f in by_size[6])
    assert all(shoelace_area(f) == ONE for f in by_size[4])
    assert all(shoelace_area(f) == SQRT3 / 4 for f in by_size[3])
    for v in patch.interior_vertices():
        assert sorted(len(patch.faces[i]) for i in patch.vertices[v]) == [3, 4, 4, 6]


def test_dual_of_triangles_is_hexagonal():
    d = dual(triangular_patch(3))
    assert d.faces
    for f in d.faces:
        assert len(f) == 6
        # side = distance between adjacent triangle centers = 1/sqrt3
        assert {(q - p).norm2() for p, q in f.edges()} == {QS3(1, 0) / 3}
        assert interior_angles(f) == [4] * 6


def test_dual_of_3464_is_the_laves_kite():
    kite = laves_kite().polygon
    d = dual(patch_3464(2))
    assert len(d.faces) == len(patch_3464(2).interior_vertices())
    for f in d.faces:
        w = similarity_between(kite, f)
        assert w is not None and w.exact
        assert w.scale == (3 + SQRT3) / 6


def test_dual_face_centers():
    # a regular hexagon around a vertex is centered on that vertex
    d = dual(triangular_patch(2))
    assert len(d.centers) == len(d.faces)
    assert all(centroid(f) == c for f, c in zip(d.faces, d.centers))


@pytest.mark.parametrize("factory, bad", [(triangular_patch, 0), (triangular_patch, 7),
                                          (patch_3464, 5), (patch_3464, 1.5)])
def test_radius_bounds(factory, bad):
    with pytest.raises(ValueError):
        factory(bad)
