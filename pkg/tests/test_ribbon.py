import itertools

import pytest

from rotorduality.errors import (
    Disconnected,
    DuplicateId,
    HasBridge,
    LoopEdge,
    NotASpanningTree,
    NotPlanar,
    RotationMismatch,
)
from rotorduality.oracle import K4_GENUS1, enumerate_spanning_trees, search_rotation_systems
from rotorduality.ribbon import (
    Dart,
    RibbonGraph,
    build_ribbon_graph,
    dual_tree,
    faces,
    find_isomorphism,
    genus,
    planar_dual,
)

from .conftest import CORPUS, PLANAR, trees_of


def test_digon_builds_with_four_darts(digon):
    assert len(digon.darts) == 4
    assert digon.alpha(Dart("e", "u")) == Dart("e", "v")


def test_fig1_builds(fig1):
    assert fig1.rotation("x") == ("e_xw", "e_xy", "e_xz")
    assert fig1.degree("x") == 3


@pytest.mark.parametrize(
    "edges, rotations, error",
    [
        ([("l", "x", "x")], {"x": ["l", "l"]}, LoopEdge),
        ([("a", "x", "y"), ("a", "x", "y")], {"x": ["a", "a"], "y": ["a", "a"]}, DuplicateId),
        ([("a", "x", "y")], {"x": ["a"], "y": []}, RotationMismatch),
        ([("a", "x", "y")], {"x": ["a", "a"], "y": ["a"]}, RotationMismatch),
    ],
)
def test_build_errors(edges, rotations, error):
    with pytest.raises(error):
        RibbonGraph(["x", "y"], edges, rotations)


def test_disconnected():
    with pytest.raises(Disconnected):
        RibbonGraph(["x", "y", "z"], [("a", "x", "y")], {"x": ["a"], "y": ["a"]})


def test_duplicate_vertex():
    with pytest.raises(DuplicateId):
        RibbonGraph(["x", "x"], [], {})


@pytest.mark.parametrize("name", list(CORPUS))
def test_sigma_orbits_are_vertex_stars(name):
    g = CORPUS[name]
    for v in g.vertices:
        orbit = [g.darts_at(v)[0]]
        while (nxt := g.sigma(orbit[-1])) != orbit[0]:
            orbit.append(nxt)
        assert sorted(orbit) == sorted(d for d in g.darts if d.tail == v)
        assert g.sigma_inv(g.sigma(orbit[0])) == orbit[0]


@pytest.mark.parametrize("name", list(CORPUS))
def test_euler_and_faces_partition(name):
    g = CORPUS[name]
    fs = faces(g)
    assert sorted(d for orbit in fs.faces.values() for d in orbit) == sorted(g.darts)
    assert len(g.vertices) - len(g.edges) + len(fs) == 2 - 2 * genus(g)


def test_digon_faces(digon):
    # hand trace of alpha.sigma: e@u -> f@u -> f@v -> e@v -> e@u
    fs = faces(digon)
    assert len(fs) == 2
    assert sorted(map(len, fs.faces.values())) == [2, 2]
    assert fs.faces["e@u"] == (Dart("e", "u"), Dart("f", "v"))


def test_triangle_two_faces(triangle):
    assert len(faces(triangle)) == 2


def test_fig1_faces(fig1):
    fs = faces(fig1)
    assert len(fs) == 3
    a = fs.right(Dart("e_xw", "x"))
    # face a is the triangle x-w-y, traversed with a on the right
    assert {d.edge for d in fs.faces[a]} == {"e_xw", "e_wy", "e_xy"}
    assert set(fs.faces[a]) == {Dart("e_xw", "x"), Dart("e_wy", "w"), Dart("e_xy", "y")}
    b = fs.right(Dart("e_xy", "x"))
    c = fs.right(Dart("e_xz", "x"))
    assert len({a, b, c}) == 3


def test_face_ids_are_least_darts(fig1):
    for fid, orbit in faces(fig1).faces.items():
        assert fid == str(min(orbit))


def test_genus_values(fig1, digon):
    assert genus(fig1) == 0
    assert genus(digon) == 0
    assert genus(CORPUS["k4_genus1"]) == 1


def test_k4_genus1_is_the_search_result():
    k4 = build_ribbon_graph(K4_GENUS1)
    found = search_rotation_systems(k4, 1)
    assert found == k4
    assert len(faces(found)) == 2


def test_fig1_dual_orientation(fig1):
    corr = planar_dual(fig1)
    fs = corr.face_set
    a, b = fs.right(Dart("e_xw", "x")), fs.right(Dart("e_xy", "x"))
    # the edge x->y crosses into a dual edge from b to a
    assert corr.dual_orientation["e_xy"] == (b, a)
    assert corr.dual.endpoints("e_xy*") == (b, a)


def test_digon_dual_is_digon(digon):
    corr = planar_dual(digon)
    assert len(corr.dual.vertices) == 2 and sorted(corr.dual.edges) == ["e*", "f*"]
    assert genus(corr.dual) == 0


def test_nonplanar_dual_rejected():
    with pytest.raises(NotPlanar):
        planar_dual(CORPUS["k4_genus1"])


def test_bridge_rejected(path3):
    with pytest.raises(HasBridge):
        planar_dual(path3)


def test_dual_tree_fig1(fig1):
    corr = planar_dual(fig1)
    assert dual_tree(corr, {"e_xw", "e_xy", "e_xz"}) == {"e_wy*", "e_zy*"}
    assert dual_tree(corr, {"e_xw", "e_wy", "e_xz"}) == {"e_xy*", "e_zy*"}
    fs = corr.face_set
    a, b, c = (fs.right(Dart(e, "x")) for e in ("e_xw", "e_xy", "e_xz"))
    assert {frozenset(corr.dual.endpoints(e)) for e in ("e_wy*", "e_zy*")} == {frozenset({a, c}), frozenset({b, c})}


def test_dual_tree_digon(digon):
    assert dual_tree(planar_dual(digon), {"e"}) == {"f*"}


def test_dual_tree_rejects_non_tree(fig1):
    with pytest.raises(NotASpanningTree):
        dual_tree(planar_dual(fig1), {"e_xw", "e_xy"})


@pytest.mark.parametrize("name", list(PLANAR))
def test_double_dual_is_identity(name):
    g = PLANAR[name]
    once = planar_dual(g)
    twice = planar_dual(once.dual)
    iso = find_isomorphism(g, twice.dual)
    assert iso is not None
    assert all(twice.edge_map[once.edge_map[e]] == e for e in g.edges)
    # orientation survives as well
    for e in g.edges:
        tail, head = g.endpoints(e)
        assert twice.dual.endpoints(e) == (iso[tail], iso[head])


@pytest.mark.parametrize("name", list(PLANAR))
def test_delta_is_bijection(name):
    g = PLANAR[name]
    corr = planar_dual(g)
    ours = trees_of(g)
    images = [dual_tree(corr, t) for t in ours]
    assert sorted(images, key=sorted) == enumerate_spanning_trees(corr.dual)
    back = planar_dual(corr.dual)
    assert all(dual_tree(back, dual_tree(corr, t)) == t for t in ours)


def test_find_isomorphism_rejects_mirror(fig1):
    mirrored = RibbonGraph(
        fig1.vertices,
        [(e, *fig1.endpoints(e)) for e in fig1.edges],
        {v: list(reversed(fig1.rotation(v))) for v in fig1.vertices},
    )
    assert find_isomorphism(fig1, mirrored) is None


def test_rerotating_one_vertex_keeps_integral_genus(fig1):
    for v in fig1.vertices:
        for order in itertools.permutations(fig1.rotation(v)):
            rot = {u: list(fig1.rotation(u)) for u in fig1.vertices}
            rot[v] = list(order)
            g = RibbonGraph(fig1.vertices, [(e, *fig1.endpoints(e)) for e in fig1.edges], rot)
            assert genus(g) in (0, 1)
