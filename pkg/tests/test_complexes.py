"""Simplicial complex construction, predicates, and IO."""

import random

import pytest

from macoh.complexes import (
    ComplexError,
    SimplicialComplex,
    VertexSet,
    attach_simplex,
    boundary_simplex,
    clique_complex,
    cycle,
    disjoint_points,
    graph_edge_pairs,
    graph_is_chordal,
    graph_isomorphism_classes,
    is_attachment_reachable,
    iterated_attachment,
    join,
    mask_of,
    random_complex,
    rp2_minimal,
    sign_eps,
    sign_eps_set,
    simplex,
    square_edge,
    submasks,
    two_squares,
    two_triangles,
    vertices_of,
    zoo,
)


def test_mask_roundtrip():
    assert mask_of([1, 3]) == 0b101
    assert vertices_of(0b101) == (1, 3)
    assert mask_of([]) == 0
    assert vertices_of(0) == ()
    with pytest.raises(ComplexError):
        mask_of([0])
    with pytest.raises(ComplexError):
        mask_of([2, 2])


def test_vertex_set():
    s = VertexSet([2, 4])
    assert len(s) == 2
    assert list(s) == [2, 4]
    assert 2 in s and 3 not in s
    assert VertexSet.from_mask(s.mask) == s


def test_submasks_enumerates_power_set():
    subs = list(submasks(0b1011))
    assert len(subs) == 8
    assert subs[0] == 0b1011 and subs[-1] == 0
    assert len(set(subs)) == 8


def test_sign_eps():
    # inserting 3 into {1, 5}: one smaller element present
    assert sign_eps(3, mask_of([1, 5])) == -1
    assert sign_eps(1, mask_of([2, 3])) == 1
    assert sign_eps(4, mask_of([1, 2, 3])) == -1
    assert sign_eps_set(mask_of([2]), mask_of([1, 2, 3])) == -1
    assert sign_eps_set(mask_of([1, 2]), mask_of([1, 2, 3])) == -1
    assert sign_eps_set(0, mask_of([1, 2])) == 1


def test_downward_closure_and_pruning():
    k = simplex(3)
    assert len(k.faces) == 8
    assert k.is_simplex()
    redundant = SimplicialComplex.from_maximal_faces(3, [[1, 2, 3], [1, 2], [3]])
    assert redundant == k
    assert k.dim() == 2


def test_isolated_vertices_are_completed():
    k = SimplicialComplex.from_maximal_faces(4, [[1, 2]])
    assert k.has_face([3])
    assert k.has_face([4])
    assert not k.has_face([3, 4])
    assert k.maximal_faces == (mask_of([1, 2]), mask_of([3]), mask_of([4]))


def test_ground_set_validation():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_maximal_faces(2, [[1, 2, 3]])
    with pytest.raises(ComplexError):
        SimplicialComplex.from_maximal_faces(25, [])
    with pytest.raises(ComplexError):
        SimplicialComplex.from_maximal_faces(-1, [])
    empty = SimplicialComplex.from_maximal_faces(0, [])
    assert empty.faces == frozenset({0})
    assert empty.dim() == -1


def test_full_subcomplex_relabels_order_preserving():
    k = cycle(5)
    sub = k.full_subcomplex([2, 3, 5])
    # vertices 2,3,5 become 1,2,3; only the edge {2,3} survives
    assert sub.m == 3
    assert sub.has_face([1, 2])
    assert not sub.has_face([2, 3])
    assert not sub.has_face([1, 3])


def test_faces_within():
    k = cycle(4)
    groups = k.faces_within(mask_of([1, 2, 3]))
    assert groups[0] == [0]
    assert groups[1] == [mask_of([1]), mask_of([2]), mask_of([3])]
    assert groups[2] == [mask_of([1, 2]), mask_of([2, 3])]


def test_join_of_two_point_pairs_is_a_four_cycle():
    k = join(disjoint_points(2), disjoint_points(2))
    assert k.relabeled({1: 1, 2: 3, 3: 2, 4: 4}) == cycle(4)


def test_join_with_point_cones():
    cone = join(cycle(3), simplex(1))
    assert cone.is_simplex() is False
    assert cone.has_face([1, 2, 4])
    assert cone.dim() == 2


def test_attach_simplex_examples():
    # empty gluing face: disjoint point
    k = attach_simplex(cycle(4), [], 0)
    assert k.m == 5
    assert k.has_face([5])
    assert not k.has_face([1, 5])
    # gluing a 1-simplex along a vertex: pendant edge
    assert attach_simplex(cycle(4), [4], 1) == square_edge()
    # degenerate: n = |sigma| - 1 adds nothing
    assert attach_simplex(cycle(4), [1, 2], 1) is cycle(4) or \
        attach_simplex(cycle(4), [1, 2], 1) == cycle(4)
    # gluing a triangle along an edge of the 5-cycle
    k = attach_simplex(cycle(5), [1, 2], 2)
    assert k.m == 6
    assert k.has_face([1, 2, 6])
    assert k.full_subcomplex([1, 2, 3, 4, 5]) == cycle(5)


def test_attach_simplex_validation():
    with pytest.raises(ComplexError):
        attach_simplex(cycle(4), [1, 3], 2)  # diagonal is not a face
    with pytest.raises(ComplexError):
        attach_simplex(cycle(4), [1, 2], 0)  # dimension below |sigma| - 1


def test_boundary_simplex_face_count():
    for m in range(2, 6):
        k = boundary_simplex(m)
        assert len(k.faces) == 2 ** m - 1
        assert not k.is_simplex()


def test_rp2_is_a_closed_pseudosurface():
    k = rp2_minimal()
    assert len(k.maximal_faces) == 10
    edges = k.edges()
    assert len(edges) == 15  # complete 1-skeleton on 6 vertices
    for u, v in edges:
        containing = [f for f in k.maximal_faces
                      if k.has_face([u, v]) and (mask_of([u, v]) & f) == mask_of([u, v])]
        assert len(containing) == 2
    f_vector = (6, 15, 10)
    assert f_vector[0] - f_vector[1] + f_vector[2] == 1


def test_minimal_non_faces_and_flag():
    k4 = cycle(4)
    assert k4.minimal_non_faces() == (mask_of([1, 3]), mask_of([2, 4]))
    assert k4.is_flag()
    assert not boundary_simplex(3).is_flag()
    assert simplex(3).is_flag()
    assert disjoint_points(3).is_flag()
    assert not rp2_minimal().is_flag()


def _is_clique(k, vertices):
    return all(k.has_face([u, v]) for u in vertices for v in vertices if u < v)


def test_chordality_verdicts():
    ok, order = simplex(4).is_chordal_skeleton()
    assert ok and sorted(order) == [1, 2, 3, 4]
    assert disjoint_points(3).is_chordal_skeleton()[0]
    assert not cycle(4).is_chordal_skeleton()[0]
    assert not cycle(6).is_chordal_skeleton()[0]
    chorded = SimplicialComplex.from_maximal_faces(
        4, [[1, 2], [2, 3], [3, 4], [4, 1], [1, 3]])
    ok, order = chorded.is_chordal_skeleton()
    assert ok
    # independently verify the witness is a perfect elimination ordering
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for (a, b) in chorded.edges() for u in ((b,) if a == v else (a,) if b == v else ())
                 if pos[u] > pos[v]]
        assert _is_clique(chorded, later)


def test_wedge_decompositions():
    dec = two_squares().is_wedge_decomposable()
    assert dec is not None
    assert dec.tau == (3, 4)
    assert dec.left_vertices == (1, 2, 3, 4)
    assert dec.right_vertices == (3, 4, 5, 6)
    assert dec.left == cycle(4).relabeled({1: 1, 2: 2, 3: 4, 4: 3})

    dec = square_edge().is_wedge_decomposable()
    assert dec is not None
    assert dec.tau == (4,)

    assert cycle(5).is_wedge_decomposable() is None
    assert rp2_minimal().is_wedge_decomposable() is None
    assert two_triangles().is_wedge_decomposable() is not None


def test_iterated_attachment_is_deterministic():
    a = iterated_attachment(42)
    b = iterated_attachment(42)
    assert a == b
    assert a.m <= 7
    c = iterated_attachment(43)
    assert isinstance(c, SimplicialComplex)


def test_random_complex_is_wellformed():
    rng = random.Random(1)
    for _ in range(20):
        k = random_complex(rng, rng.randint(1, 6))
        assert all(k.has_face([v]) for v in k.vertices())
        # antichain property of maximal faces
        tops = k.maximal_faces
        for i, a in enumerate(tops):
            for j, b in enumerate(tops):
                if i != j:
                    assert a & b != a


def test_json_roundtrip():
    k = two_squares()
    again = SimplicialComplex.from_json(k.to_json())
    assert again == k
    with pytest.raises(ComplexError):
        SimplicialComplex.from_json("{not json")
    with pytest.raises(ComplexError):
        SimplicialComplex.from_json('{"m": 3}')
    with pytest.raises(ComplexError):
        SimplicialComplex.from_json('{"m": 2, "maximal_faces": [[1, 2, 3]]}')


def test_text_roundtrip():
    text = """
    # a 4-cycle with a pendant edge
    5
    1 2
    2 3
    3 4
    4 1
    4 5  # the pendant
    """
    k = SimplicialComplex.from_text(text)
    assert k == square_edge()
    assert SimplicialComplex.from_text(k.to_text()) == k
    with pytest.raises(ComplexError):
        SimplicialComplex.from_text("# nothing here")
    with pytest.raises(ComplexError):
        SimplicialComplex.from_text("3 4\n1 2\n")


def test_zoo_members_are_wellformed():
    names = set()
    for name, k in zoo():
        names.add(name)
        assert k.m >= 1
        assert all(k.has_face([v]) for v in k.vertices())
    assert "rp2" in names and "cycle:5" in names and "two_squares" in names


def _edge_mask(m, edges):
    pairs = graph_edge_pairs(m)
    position = {p: i for i, p in enumerate(pairs)}
    out = 0
    for e in edges:
        out |= 1 << position[tuple(sorted(e))]
    return out


def test_clique_complexes():
    square = _edge_mask(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert clique_complex(4, square) == cycle(4)
    triangle = _edge_mask(3, [(1, 2), (2, 3), (1, 3)])
    assert clique_complex(3, triangle) == simplex(3)
    assert clique_complex(3, 0) == disjoint_points(3)
    chain = _edge_mask(3, [(1, 2), (2, 3)])
    assert tuple(clique_complex(3, chain).maximal_faces) == (3, 6)


def test_graph_chordality_matches_the_complex_predicate():
    for m in range(1, 5):
        for g in range(1 << len(graph_edge_pairs(m))):
            assert graph_is_chordal(m, g) == clique_complex(m, g).is_chordal_skeleton()[0]


def test_graph_isomorphism_class_counts():
    # numbers of graphs on m unlabeled vertices
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    for m, count in expected.items():
        classes = graph_isomorphism_classes(m)
        assert len(classes) == count
        assert sum(size for _, size in classes) == 1 << len(graph_edge_pairs(m))


def test_labeled_chordal_graph_counts():
    # numbers of chordal graphs on m labeled vertices
    expected = {1: 1, 2: 2, 3: 8, 4: 61, 5: 822}
    for m, count in expected.items():
        total = sum(graph_is_chordal(m, g)
                    for g in range(1 << len(graph_edge_pairs(m))))
        assert total == count


def test_attachment_reachability():
    memo = {}
    assert is_attachment_reachable(simplex(4), memo)
    assert is_attachment_reachable(disjoint_points(5), memo)
    assert is_attachment_reachable(attach_simplex(simplex(2), [1], 2), memo)
    assert not is_attachment_reachable(cycle(4), memo)
    assert not is_attachment_reachable(cycle(5), memo)
    assert not is_attachment_reachable(boundary_simplex(4), memo)
    assert not is_attachment_reachable(two_triangles(), memo)
    assert not is_attachment_reachable(square_edge(), memo)
    assert not is_attachment_reachable(rp2_minimal(), memo)
    for seed in range(6):
        assert is_attachment_reachable(iterated_attachment(seed), memo)
