import json
import math

import numpy as np
import pytest

from hodge_domains.spheremesh import (
    DegenerateFaceError,
    MeshInvariantError,
    NotThreeColorableError,
    SphericalTriangulation,
    audit_mesh,
    face_geometry,
    fineness,
    gluing_pattern,
    octahedron,
    sidecar_document,
    sidecar_dumps,
    subdivide,
    three_color,
    to_off,
    verify_coloring,
)


_CHAIN = []


def meshes_up_to(s_max):
    if not _CHAIN:
        _CHAIN.append(octahedron())
    while len(_CHAIN) <= s_max:
        _CHAIN.append(subdivide(_CHAIN[-1]))
    for s in range(s_max + 1):
        yield s, _CHAIN[s]


# -- the seed mesh ------------------------------------------------------------


def test_octahedron_counts_and_euler():
    t = octahedron()
    assert (t.num_vertices, t.num_edges, t.num_faces) == (6, 12, 8)
    assert t.euler_characteristic() == 2


def test_octahedron_even_degree_four():
    t = octahedron()
    assert t.vertex_degrees() == [4] * 6
    assert t.is_even()


def test_octahedron_equal_circumradii():
    t = octahedron()
    radii = [face_geometry(t, i).circumradius for i in range(8)]
    assert max(radii) - min(radii) < 1e-12
    assert abs(radii[0] - math.acos(1 / math.sqrt(3))) < 1e-12


# -- subdivision ----------------------------------------------------------------


def test_subdivision_counts():
    t = subdivide(octahedron())
    assert (t.num_vertices, t.num_edges, t.num_faces) == (18, 48, 32)
    assert t.euler_characteristic() == 2


def test_subdivision_preserves_evenness_five_levels():
    for s, tri in meshes_up_to(5):
        assert tri.is_even(), f"odd degree at subdivision {s}"
        assert tri.euler_characteristic() == 2


def test_subdivision_new_vertices_have_degree_six():
    t = subdivide(octahedron())
    degrees = t.vertex_degrees()
    assert degrees[:6] == [4] * 6
    assert degrees[6:] == [6] * 12


def test_fineness_strictly_decreasing_and_bounded():
    values = [fineness(tri) for _, tri in meshes_up_to(5)]
    for a, b in zip(values, values[1:]):
        assert b < a
    # fitted regression constant: observed max of fineness * 2^s is ~1.414
    for s, f in enumerate(values):
        assert f <= 1.45 * 2.0 ** (-s)


# -- coloring ---------------------------------------------------------------------


def test_octahedron_axis_coloring():
    t = octahedron()
    c = three_color(t)
    # antipodal vertices share a color and the three axes get distinct colors
    assert c.colors[0] == c.colors[3]
    assert c.colors[1] == c.colors[4]
    assert c.colors[2] == c.colors[5]
    assert sorted((c.colors[0], c.colors[1], c.colors[2])) == [0, 1, 2]


def test_coloring_proper_up_to_five_subdivisions():
    for s, tri in meshes_up_to(5):
        coloring = three_color(tri)
        verify_coloring(tri, coloring)  # raises on failure


def test_non_even_mesh_not_colorable():
    # Flip one edge of the octahedron: still a valid closed surface, but four
    # vertices acquire odd degree.
    t = octahedron()
    faces = list(t.faces)
    faces.remove((0, 1, 2))
    faces.remove((1, 3, 2))
    faces.extend([(0, 1, 3), (0, 3, 2)])
    flipped = SphericalTriangulation(t.vertices, faces)
    assert not flipped.is_even()
    with pytest.raises(NotThreeColorableError):
        three_color(flipped)


def test_verify_coloring_rejects_monochromatic_edge():
    t = octahedron()
    from hodge_domains.spheremesh import ThreeColoring

    with pytest.raises(NotThreeColorableError):
        verify_coloring(t, ThreeColoring((0, 0, 1, 2, 1, 2)))


# -- face geometry -----------------------------------------------------------------


def test_face_geometry_octant_face():
    t = octahedron()
    face0 = t.faces[0]  # (0, 1, 2) = (e1, e2, e3)
    geo = face_geometry(t, 0)
    expected = np.ones(3) / math.sqrt(3)
    assert np.allclose(geo.circumcenter, expected, atol=1e-14)
    assert geo.circumcenter_inside
    assert geo.equidistance_residual < 1e-12
    mid01 = np.array(geo.midpoints[0])
    assert np.allclose(mid01, np.array([1, 1, 0]) / math.sqrt(2), atol=1e-14)
    assert face0 == (0, 1, 2)


def test_face_geometry_equidistance_up_to_five_subdivisions():
    for s, tri in meshes_up_to(5):
        worst = max(face_geometry(tri, i).equidistance_residual for i in range(tri.num_faces))
        assert worst < 1e-10


def test_face_geometry_circumcenters_inside_up_to_five():
    for s, tri in meshes_up_to(5):
        assert all(face_geometry(tri, i).circumcenter_inside for i in range(tri.num_faces))


def test_antipodal_edge_has_no_geodesic_midpoint():
    # A valid two-face "pillow" complex whose faces contain the antipodal
    # edge (e1, -e1); subdivision must refuse to place its midpoint.
    verts = np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    pillow = SphericalTriangulation(verts, [(0, 1, 2), (2, 1, 0)])
    assert pillow.euler_characteristic() == 2
    with pytest.raises(DegenerateFaceError):
        subdivide(pillow)


# -- gluing ------------------------------------------------------------------------


def test_gluing_octahedron_counts():
    t = octahedron()
    glue = gluing_pattern(t, three_color(t))
    assert glue.num_copies == 8
    assert len(glue.identifications) == 12
    assert glue.euler_characteristic == 2
    assert glue.vertex_class_count == 6
    assert glue.color_matched and glue.closed and glue.links_single_cycles


def test_gluing_color_pairs_match_by_construction():
    for s, tri in meshes_up_to(3):
        coloring = three_color(tri)
        glue = gluing_pattern(tri, coloring)
        for f, g, pair in glue.identifications:
            shared = set(tri.faces[f]) & set(tri.faces[g])
            assert {coloring.colors[v] for v in shared} == set(pair)


def test_gluing_rejects_improper_coloring():
    from hodge_domains.spheremesh import ThreeColoring

    t = octahedron()
    with pytest.raises(NotThreeColorableError):
        gluing_pattern(t, ThreeColoring((0,) * 6))


def test_gluing_audit_up_to_four():
    for s, tri in meshes_up_to(4):
        glue = gluing_pattern(tri, three_color(tri))
        assert glue.euler_characteristic == 2
        assert glue.closed and glue.links_single_cycles


# -- invariant validation -------------------------------------------------------------


def test_mesh_rejects_open_surface():
    verts = np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
    with pytest.raises(MeshInvariantError):
        SphericalTriangulation(verts, [(0, 1, 2)])


def test_mesh_rejects_off_sphere_vertices():
    verts = np.array([[2.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
    with pytest.raises(MeshInvariantError):
        SphericalTriangulation(verts, [(0, 1, 2)])


# -- export -----------------------------------------------------------------------


def test_off_export_structure():
    t = octahedron()
    text = to_off(t)
    lines = text.strip().split("\n")
    assert lines[0] == "OFF"
    assert lines[1] == "6 8 12"
    assert lines[2].split() == ["1.0", "0.0", "0.0"]
    assert lines[8].startswith("3 ")
    assert len(lines) == 2 + 6 + 8


def test_sidecar_roundtrip_bit_exact():
    for s, tri in meshes_up_to(2):
        coloring = three_color(tri)
        text = sidecar_dumps(tri, coloring)
        reparsed = json.dumps(json.loads(text), sort_keys=True, indent=1)
        assert reparsed == text


def test_sidecar_fields():
    t = octahedron()
    doc = sidecar_document(t, three_color(t))
    assert doc["schema"] == "hodge-domains/1"
    assert len(doc["colors"]) == 6
    assert set(doc["colors"]) == {"red", "green", "blue"}
    assert len(doc["circumcenters"]) == 8
    assert len(doc["gluing"]) == 12


def test_audit_mesh_summary():
    t = subdivide(octahedron())
    audit = audit_mesh(t, three_color(t))
    assert audit["even"] and audit["proper_coloring"]
    assert audit["euler_characteristic"] == 2
    assert audit["gluing_euler"] == 2
    assert audit["circumcenters_inside"]
    assert audit["max_equidistance_residual"] < 1e-10
