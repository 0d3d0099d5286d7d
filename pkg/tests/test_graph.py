import json

import pytest

from fewlines.graph import (GenerationFailed, MalformedRotation, NonplanarEmbedding, NotATriangulation, PlaneGraph,
                            TooSmall, add_st_edge, delete_outer_edge, find_outer_face, generate_instance,
                            generate_triangulation, icosahedron, is_4connected_triangulation, k4, octahedron, pyr5,
                            relabel, same_cycle, traverse_faces, validate)


def test_pyr5_faces():
    faces = traverse_faces(pyr5())
    assert len(faces) == 5
    assert sorted(len(f) for f in faces) == [3, 3, 3, 3, 4]


def test_single_edge_has_one_face():
    g = PlaneGraph.build({"u": ["v"], "v": ["u"]}, ["u", "v"])
    faces = traverse_faces(g)
    assert len(faces) == 1 and len(faces[0]) == 2


def test_octahedron_faces():
    faces = traverse_faces(octahedron())
    assert len(faces) == 8 and all(len(f) == 3 for f in faces)


def test_asymmetric_rotation_rejected():
    g = PlaneGraph.build({"u": ["v"], "v": []}, ["u", "v"])
    with pytest.raises(MalformedRotation):
        traverse_faces(g)


def test_nonplanar_rotation_rejected():
    # K4 with one rotation reversed has genus 1
    g = k4()
    rot = dict(g.rotation)
    rot["c"] = tuple(reversed(rot["c"]))
    with pytest.raises(NonplanarEmbedding):
        traverse_faces(PlaneGraph.build(rot, g.outer_face))


def test_pyr5_validates():
    rep = validate(pyr5())
    assert rep and rep.violations == []


def test_extra_edge_breaks_pyr5():
    g = pyr5()
    rot = {v: list(g.rotation[v]) for v in g.vertices}
    rot["a"].append("b")
    rot["b"].append("a")
    rep = validate(PlaneGraph.build(rot, g.outer_face, g.labels, g.vertices))
    assert not rep
    kinds = {k for k, _ in rep.violations}
    assert kinds & {"separating-triangle", "nontriangular-inner-face", "outer-not-4gon"}


def test_bare_quadrangle_has_nontriangular_face():
    rot = {"s": ["a", "b"], "a": ["t", "s"], "t": ["b", "a"], "b": ["s", "t"]}
    rep = validate(PlaneGraph.build(rot, ["s", "a", "t", "b"]))
    assert ("nontriangular-inner-face" in {k for k, _ in rep.violations})


def test_delete_outer_edge_octahedron():
    oct6 = octahedron()
    g = delete_outer_edge(oct6, ("x1", "x2"))
    assert {g.labels["s"], g.labels["t"]} == {"x1", "x2"}
    assert g.labels["b"] == "x3"
    assert g.n == 6 and not g.has_edge("x1", "x2")
    assert validate(g)
    assert len(g.outer_face) == 4


def test_delete_then_add_roundtrip():
    t = icosahedron()
    g = delete_outer_edge(t)
    assert validate(g) and g.n == 12
    back = add_st_edge(g)
    assert sorted(back.edges()) == sorted(t.edges())
    assert same_cycle(find_outer_face(back), back.outer_face)


def test_k4_rejected():
    with pytest.raises((NotATriangulation, TooSmall)):
        delete_outer_edge(k4())


@pytest.mark.parametrize("g", [octahedron(), icosahedron()], ids=["oct6", "ico12"])
def test_named_triangulations_are_4connected(g):
    assert is_4connected_triangulation(g) == []


def test_k4_is_not_4connected():
    assert is_4connected_triangulation(k4())


def test_generate_minimal_instance_is_pyr5():
    g = generate_instance(5, seed=3)
    assert g.n == 5 and len(g.edges()) == 8
    assert sorted(g.degree(v) for v in g.vertices) == [3, 3, 3, 3, 4]


@pytest.mark.parametrize("n,seed", [(50, 7), (13, 0), (100, 2)])
def test_generate_instance_valid(n, seed):
    g = generate_instance(n, seed)
    assert g.n == n and validate(g)


def test_generate_is_deterministic():
    assert generate_instance(40, 11).to_json() == generate_instance(40, 11).to_json()


def test_generate_too_small():
    with pytest.raises(GenerationFailed):
        generate_instance(4, 0)


def test_generate_triangulation():
    t = generate_triangulation(30, seed=5)
    assert t.n == 30 and is_4connected_triangulation(t) == []


def test_json_roundtrip_and_relabel():
    g = pyr5()
    assert PlaneGraph.from_json(g.to_json()) == g
    h = relabel(g, {v: v.upper() for v in g.vertices})
    assert validate(h) and h.labels["s"] == "S"
    assert json.loads(h.to_json())["outer_face"] == ["S", "A", "T", "B"]
