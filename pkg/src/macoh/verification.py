"""Stored reference computations and the checklist runner behind the
verify-paper command.

Each check recomputes a documented example from scratch and compares
against tables and matrices stored here.  A check passes by returning
normally and fails by raising AssertionError or VerificationError.
"""

from __future__ import annotations

import math

from . import complexes, hochster, koszul
from .linalg import IntMatrix, smith_normal_form

CHECKS = []


def _check(name):
    def register(fn):
        CHECKS.append((name, fn))
        return fn
    return register


def _mask(*vertices):
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def _unit(n, i, sign=1):
    vec = [0] * n
    vec[i] = sign
    return vec


PENTAGON_H = {
    (0, 0): (1, ()),
    (1, 2): (5, ()),
    (2, 3): (5, ()),
    (3, 5): (1, ()),
}

PENTAGON_CONNECTING = IntMatrix([
    [0, 0, 1, -1, 0],
    [0, 0, 0, 1, -1],
    [-1, 0, 0, 0, 1],
    [1, -1, 0, 0, 0],
    [0, 1, -1, 0, 0],
], 5)

# row classes [u1v3],[u1v4],[u2v4],[u2v5],[u3v5]; column classes
# [u4u5v2],[u2u3v5],[u5u1v3],[u3u4v1],[u1u2v4] (u5u1 = -u1u5)
PENTAGON_ROW_BASIS = [(1, (_mask(1), _mask(3))), (1, (_mask(1), _mask(4))),
                      (1, (_mask(2), _mask(4))), (1, (_mask(2), _mask(5))),
                      (1, (_mask(3), _mask(5)))]
PENTAGON_COL_BASIS = [(1, (_mask(4, 5), _mask(2))), (1, (_mask(2, 3), _mask(5))),
                      (-1, (_mask(1, 5), _mask(3))), (1, (_mask(3, 4), _mask(1))),
                      (1, (_mask(1, 2), _mask(4)))]

RP2_H = {
    (0, 0): (1, ()),
    (1, 3): (10, ()),
    (2, 4): (15, ()),
    (3, 5): (6, ()),
    (3, 6): (0, (2,)),
}

SQUARE_EDGE_H = {
    (0, 0): (1, ()),
    (1, 2): (5, ()),
    (2, 3): (5, ()),
    (3, 4): (1, ()),
    (2, 4): (1, ()),
    (3, 5): (1, ()),
}

# rows [u1v3],[u2v4],[u1v5],[u2v5],[u3v5]; columns
# [u1u2v5],[u2u3v5],[u1u3v5],[u3u5v1],[u4u5v2]
SQUARE_EDGE_CONNECTING = IntMatrix([
    [0, 0, 0, -1, 0],
    [0, 0, 0, 0, -1],
    [-1, 0, -1, 1, 0],
    [1, -1, 0, 0, 1],
    [0, 1, 1, 0, 0],
], 5)
SQUARE_EDGE_ROW_BASIS = [(1, (_mask(1), _mask(3))), (1, (_mask(2), _mask(4))),
                         (1, (_mask(1), _mask(5))), (1, (_mask(2), _mask(5))),
                         (1, (_mask(3), _mask(5)))]
SQUARE_EDGE_COL_BASIS = [(1, (_mask(1, 2), _mask(5))), (1, (_mask(2, 3), _mask(5))),
                         (1, (_mask(1, 3), _mask(5))), (1, (_mask(3, 5), _mask(1))),
                         (1, (_mask(4, 5), _mask(2)))]

TWO_TRIANGLES_H = {
    (0, 0): (1, ()),
    (1, 2): (4, ()),
    (1, 3): (2, ()),
    (2, 3): (4, ()),
    (2, 4): (4, ()),
    (3, 4): (1, ()),
    (3, 5): (2, ()),
}

# rows [u1v3],[u1v4],[u2v3],[u2v4]; columns [u1u2v3],[u1u2v4],[u3u4v1],[u3u4v2]
TWO_TRIANGLES_CONNECTING = IntMatrix([
    [-1, 0, -1, 0],
    [0, -1, 1, 0],
    [1, 0, 0, -1],
    [0, 1, 0, 1],
], 4)
TWO_TRIANGLES_ROW_BASIS = [(1, (_mask(1), _mask(3))), (1, (_mask(1), _mask(4))),
                           (1, (_mask(2), _mask(3))), (1, (_mask(2), _mask(4)))]
TWO_TRIANGLES_COL_BASIS = [(1, (_mask(1, 2), _mask(3))), (1, (_mask(1, 2), _mask(4))),
                           (1, (_mask(3, 4), _mask(1))), (1, (_mask(3, 4), _mask(2)))]

TWO_SQUARES_H = {
    (0, 0): (1, ()),
    (1, 2): (8, ()),
    (2, 3): (12, ()),
    (2, 4): (2, ()),
    (3, 4): (5, ()),
    (3, 5): (4, ()),
    (4, 6): (2, ()),
}

DOUBLE_Z2 = {(0, 0): (1, ()), (1, 2): (1, ())}


def _connecting_in_stated_bases(k, low_b, high_b, row_basis, col_basis):
    """The descended d' matrix from high_b to low_b written in the stored
    cocycle class bases."""
    kc = koszul.cohomology_via_koszul(k)
    rc = kc.rc
    low, high = kc.groups[low_b], kc.groups[high_b]
    p_cols = [low.express(_unit(rc.dim(low_b), rc.index[low_b][mon], s))
              for s, mon in row_basis]
    q_cols = [high.express(_unit(rc.dim(high_b), rc.index[high_b][mon], s))
              for s, mon in col_basis]
    p = IntMatrix.from_columns(p_cols, low.n_gens)
    q = IntMatrix.from_columns(q_cols, high.n_gens)
    descended = koszul._descend_dprime(kc)[high_b].matrix
    return descended @ q, p


@_check("pentagon cohomology table")
def _pentagon_cohomology():
    k = complexes.cycle(5)
    assert hochster.hochster_cohomology(k).invariants() == PENTAGON_H
    assert koszul.cohomology_via_koszul(k).invariants() == PENTAGON_H


@_check("pentagon connecting matrix")
def _pentagon_connecting():
    lhs, p = _connecting_in_stated_bases(complexes.cycle(5), (1, 2), (2, 3),
                                         PENTAGON_ROW_BASIS, PENTAGON_COL_BASIS)
    assert lhs == p @ PENTAGON_CONNECTING
    assert smith_normal_form(PENTAGON_CONNECTING).rank == 4


@_check("pentagon double cohomology")
def _pentagon_double():
    hh = hochster.double_cohomology(complexes.cycle(5))
    assert hh.invariants() == {b: (1, ()) for b in PENTAGON_H}
    assert hh.euler_characteristic() == 0


@_check("pentagon pairing over Q")
def _pentagon_pairing():
    alg = koszul.KoszulFieldAlgebra(complexes.cycle(5), "Q")
    target, coords = alg.hh_product((1, 2), 0, (2, 3), 0)
    assert target == (3, 5)
    assert coords and coords[0] != 0


@_check("projective plane tables")
def _projective_plane():
    k = complexes.rp2_minimal()
    assert hochster.hochster_cohomology(k).invariants() == RP2_H
    hh = hochster.double_cohomology(k)
    assert hh.invariants()[(0, 0)] == (1, ())
    assert hh.invariants()[(3, 6)] == (0, (2,))
    hom = hochster.double_homology(k)
    assert (3, 6) not in hom.invariants()
    assert (4, 6) not in hom.invariants()


@_check("projective plane pipeline agreement")
def _projective_plane_agreement():
    k = complexes.rp2_minimal()
    assert (koszul.cohomology_via_koszul(k).invariants()
            == hochster.hochster_cohomology(k).invariants())
    assert (koszul.hh_via_koszul(k).invariants()
            == hochster.double_cohomology(k).invariants())
    koszul.hochster_koszul_iso(k)


@_check("square with pendant edge")
def _square_edge():
    k = complexes.square_edge()
    assert hochster.hochster_cohomology(k).invariants() == SQUARE_EDGE_H
    lhs, p = _connecting_in_stated_bases(k, (1, 2), (2, 3),
                                         SQUARE_EDGE_ROW_BASIS,
                                         SQUARE_EDGE_COL_BASIS)
    assert lhs == p @ SQUARE_EDGE_CONNECTING
    dec = smith_normal_form(SQUARE_EDGE_CONNECTING)
    assert dec.rank == 4 and dec.divisors == (1, 1, 1, 1)

    kc = koszul.cohomology_via_koszul(k)
    rc = kc.rc
    # the column above H^{-2,6}: d'[u1u2u3v5] = [u2u3v5] - [u1u3v5] + [u1u2v5]
    image = rc.dprime_matrix((3, 4)).mulvec(
        _unit(rc.dim((3, 4)), rc.index[(3, 4)][(_mask(1, 2, 3), _mask(5))]))
    got = kc.groups[(2, 3)].express(image)
    q_cols = [kc.groups[(2, 3)].express(
        _unit(rc.dim((2, 3)), rc.index[(2, 3)][mon], s))
        for s, mon in SQUARE_EDGE_COL_BASIS]
    q = IntMatrix.from_columns(q_cols, 5)
    assert got == q.mulvec([1, 1, -1, 0, 0])
    # d': H^{-3,10} -> H^{-2,8} is an isomorphism of rank-one groups
    top = koszul._descend_dprime(kc)[(3, 5)].matrix
    assert top.rows in ([[1]], [[-1]])

    assert hochster.double_cohomology(k).invariants() == DOUBLE_Z2


@_check("two triangle boundaries glued at a vertex")
def _two_triangles():
    k = complexes.two_triangles()
    assert hochster.hochster_cohomology(k).invariants() == TWO_TRIANGLES_H
    lhs, p = _connecting_in_stated_bases(k, (1, 2), (2, 3),
                                         TWO_TRIANGLES_ROW_BASIS,
                                         TWO_TRIANGLES_COL_BASIS)
    assert lhs == p @ TWO_TRIANGLES_CONNECTING
    dec = smith_normal_form(TWO_TRIANGLES_CONNECTING)
    assert dec.rank == 3 and dec.divisors == (1, 1, 1)

    kc = koszul.cohomology_via_koszul(k)
    rc = kc.rc
    group = kc.groups[(2, 3)]
    n = rc.dim((2, 3))

    def chain(*terms):
        vec = [0] * n
        for sign, jmask, imask in terms:
            vec[rc.index[(2, 3)][(jmask, imask)]] += sign
        return vec

    # the two relations that reduce d' of the top generator
    assert group.class_is_zero(chain((1, _mask(3, 4), _mask(2)),
                                     (-1, _mask(2, 4), _mask(3)),
                                     (1, _mask(2, 3), _mask(4))))
    assert group.class_is_zero(chain((1, _mask(1, 3), _mask(4)),
                                     (-1, _mask(1, 4), _mask(3)),
                                     (1, _mask(3, 4), _mask(1))))
    # d'([u1u2u3v4] - [u1u2u4v3]) = -[u3u4v2] + [u3u4v1] + [u1u2v4] - [u1u2v3]
    source = [0] * rc.dim((3, 4))
    source[rc.index[(3, 4)][(_mask(1, 2, 3), _mask(4))]] = 1
    source[rc.index[(3, 4)][(_mask(1, 2, 4), _mask(3))]] = -1
    got = group.express(rc.dprime_matrix((3, 4)).mulvec(source))
    q_cols = [group.express(_unit(n, rc.index[(2, 3)][mon], s))
              for s, mon in TWO_TRIANGLES_COL_BASIS]
    q = IntMatrix.from_columns(q_cols, group.n_gens)
    assert got == q.mulvec([-1, 1, 1, -1])

    assert hochster.double_cohomology(k).invariants() == DOUBLE_Z2


@_check("two squares glued along an edge")
def _two_squares():
    k = complexes.two_squares()
    assert hochster.hochster_cohomology(k).invariants() == TWO_SQUARES_H
    assert hochster.double_cohomology(k).invariants() == DOUBLE_Z2


@_check("four-cycle product")
def _four_cycle_product():
    k = complexes.cycle(4)
    rc = koszul.RComplex(k)
    b = (1, 2)
    x = _unit(rc.dim(b), rc.index[b][(_mask(1), _mask(3))])
    y = _unit(rc.dim(b), rc.index[b][(_mask(2), _mask(4))])
    target, prod = rc.multiply(b, x, b, y)
    hits = {rc.basis(target)[i]: c for i, c in enumerate(prod) if c}
    assert hits == {(_mask(1, 2), _mask(3, 4)): 1}
    alg = koszul.KoszulFieldAlgebra(k, "Q")
    assert alg.hh_dims() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    _, coords = alg.hh_product((1, 2), 0, (1, 2), 1)
    assert coords and coords[0] != 0


@_check("cycles double cohomology")
def _cycles():
    for m in range(4, 8):
        hh = hochster.double_cohomology(complexes.cycle(m))
        if m == 4:
            expected = {(0, 0): (1, ()), (1, 2): (2, ()), (2, 4): (1, ())}
        else:
            expected = {(0, 0): (1, ()), (1, 2): (1, ()),
                        (m - 3, m - 2): (1, ()), (m - 2, m): (1, ())}
        assert hh.invariants() == expected, m


@_check("boundary of a simplex")
def _boundaries():
    for m in range(3, 6):
        k = complexes.boundary_simplex(m)
        kc = koszul.cohomology_via_koszul(k)
        assert set(kc.invariants()) == {(0, 0), (1, m)}
        rc = kc.rc
        mon = (1, k.full_mask() & ~1)
        coords = kc.groups[(1, m)].express(
            _unit(rc.dim((1, m)), rc.index[(1, m)][mon]))
        assert coords in ([1], [-1])
        hh = hochster.double_cohomology(k)
        assert hh.invariants() == {(0, 0): (1, ()), (1, m): (1, ())}


@_check("disjoint points tables")
def _points():
    for m in range(3, 7):
        k = complexes.disjoint_points(m)
        inv = hochster.hochster_cohomology(k).invariants()
        expected = {(0, 0): (1, ())}
        for q in range(2, m + 1):
            expected[(q - 1, q)] = ((q - 1) * math.comb(m, q), ())
        assert inv == expected, m
        assert hochster.double_cohomology(k).invariants() == DOUBLE_Z2


@_check("join dimensions over Q")
def _join():
    pairs = [(complexes.cycle(4), complexes.boundary_simplex(2)),
             (complexes.disjoint_points(2), complexes.disjoint_points(2)),
             (complexes.cycle(5), complexes.simplex(2)),
             (complexes.two_triangles(), complexes.disjoint_points(2))]
    for k1, k2 in pairs:
        d1 = hochster.double_field(k1, "Q", "cohomology")
        d2 = hochster.double_field(k2, "Q", "cohomology")
        expected = {}
        for b1, n1 in d1.items():
            for b2, n2 in d2.items():
                b = (b1[0] + b2[0], b1[1] + b2[1])
                expected[b] = expected.get(b, 0) + n1 * n2
        joined = hochster.double_field(complexes.join(k1, k2), "Q", "cohomology")
        assert joined == expected
    two = complexes.join(complexes.disjoint_points(2), complexes.disjoint_points(2))
    assert sum(hochster.double_field(two, "Q", "cohomology").values()) == 4


@_check("acyclicity of the second differential")
def _dprime_acyclicity():
    for name, k in complexes.zoo():
        if k.is_simplex():
            continue
        if k.m > 6:
            continue
        _, groups = koszul.d_prime_acyclicity(k)
        assert groups == {}, name
    for m in range(2, 5):
        k = complexes.simplex(m)
        rc, groups = koszul.d_prime_acyclicity(k)
        assert list(groups) == [(0, m)]
        mon = (0, k.full_mask())
        coords = groups[(0, m)].express(
            _unit(rc.dim((0, m)), rc.index[(0, m)][mon]))
        assert coords in ([1], [-1])


@_check("pipeline agreement on the zoo")
def _zoo_agreement():
    for name, k in complexes.zoo():
        assert (koszul.cohomology_via_koszul(k).invariants()
                == hochster.hochster_cohomology(k).invariants()), name
        assert (koszul.hh_via_koszul(k).invariants()
                == hochster.double_cohomology(k).invariants()), name


@_check("bijection between the pipelines")
def _iso():
    koszul.hochster_koszul_iso(complexes.cycle(5))
    koszul.hochster_koszul_iso(complexes.two_squares())


def run_checks(only=None, out=print):
    """Run the (filtered) checklist; returns the number of failures."""
    failures = 0
    ran = 0
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        ran += 1
        try:
            fn()
        except Exception as exc:
            failures += 1
            out(f"FAIL {name}: {exc!r}")
        else:
            out(f"ok   {name}")
    if ran == 0:
        out(f"no checks match {only!r}")
        return 1
    out(f"{ran - failures}/{ran} checks passed")
    return failures
