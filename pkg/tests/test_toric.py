from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from deginf.corpus import instance_rng, random_nef_instance, random_polygon
from deginf.degree import Subdegree, WeightedDegree
from deginf.errors import InvalidFan, InvalidPolygon, NotDominant, NotPositive, NotProjective
from deginf.exact import RationalMatrix
from deginf.poly import LAURENT, POLYNOMIAL
from deginf.toric import (Fan2, Polygon2, ampleness_at_infinity, divisor_multiplicities, intersection_report,
                          intersection_via_fan, intersection_via_linking, linking_at_infinity_2d,
                          linking_at_infinity_sampled, linking_matrix, nef_membership)

P2 = POLYNOMIAL(2)
TWO_FACET = [(0, 0), (2, 0), (F(6, 5), F(6, 5)), (0, 2)]


def test_hand_values():
    li = intersection_via_linking([(1, 1), (1, 2)])
    assert li.L == RationalMatrix([[1, 2], [1, 1]])
    assert li.D == RationalMatrix.diagonal([1, F(1, 2)])
    assert li.I == RationalMatrix([[-1, 1], [1, F(-1, 2)]])
    assert li.detL == -1


def test_linking_matrix_errors():
    with pytest.raises(NotPositive):
        linking_matrix([(1, 0)])
    with pytest.raises(Exception):
        linking_matrix([(1, 2), (2, 4)])


def test_fan_examples():
    assert intersection_via_fan(Fan2(((1, 1), (-1, 0), (0, -1))), [(1, 1)]) == RationalMatrix([[1]])
    fan = Fan2(((1, 1), (1, 2), (-1, 0), (0, -1)))
    assert intersection_via_fan(fan, [(1, 1), (1, 2)]) == RationalMatrix([[-1, 1], [1, F(-1, 2)]])


def test_fan_oracle_on_textbook_surfaces():
    # projective plane: every line has self-intersection 1 and lines meet once
    pp = Fan2(((1, 0), (0, 1), (-1, -1)))
    assert intersection_via_fan(pp, pp.rays) == RationalMatrix([[1] * 3] * 3)
    # Hirzebruch surface F_a: self-intersections -a, a and fibres 0
    for a in range(4):
        fan = Fan2(((1, 0), (0, 1), (-1, a), (0, -1)))
        M = intersection_via_fan(fan, [(0, 1), (0, -1), (1, 0), (-1, a)])
        assert [M[i, i] for i in range(4)] == [-a, a, 0, 0]
        assert M[0, 1] == 0 and M[2, 3] == 0


def test_invalid_fans():
    with pytest.raises(InvalidFan):
        Fan2(((1, 0), (0, 1)))
    with pytest.raises(InvalidFan):
        Fan2(((1, 0), (0, 1), (-1, 0)))  # not complete
    with pytest.raises(InvalidFan):
        Fan2(((2, 0), (0, 1), (-1, -1)))


def test_non_adjacent_curves_are_disjoint():
    fan = Fan2(((1, 3), (1, 1), (3, 1), (-1, 0), (0, -1)))
    M = intersection_via_fan(fan, [(1, 3), (3, 1)])
    assert M[0, 1] == 0


def test_two_facet_polygon_report():
    P = Polygon2.from_vertices(TWO_FACET)
    rep = intersection_report(P)
    assert rep.L == RationalMatrix([[1, F(3, 2)], [F(3, 2), 1]])
    assert rep.agree and rep.identity_holds


def test_single_edge_simplex():
    P = Polygon2.from_vertices([(0, 0), (1, 0), (0, 1)])
    rep = intersection_report(P)
    assert rep.I_fan == RationalMatrix([[1]]) and rep.agree
    assert ampleness_at_infinity(P)


def test_invalid_polygons():
    with pytest.raises(InvalidPolygon):
        Polygon2.from_vertices([(0, 0), (2, 0), (2, 1), (0, 1)])  # vertical edge
    with pytest.raises(InvalidPolygon):
        Polygon2.from_normals([(1, 1), (2, 2)])


def test_from_normals_realizes_the_normals():
    P = Polygon2.from_normals([(3, 1), (1, 1), (1, 4)], [1, F(1, 2), 2])
    assert P.normals == [(1, 4), (1, 1), (3, 1)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_identity_and_symmetry(seed):
    P = random_polygon(instance_rng(seed, 0, 0))
    rep = intersection_report(P)
    assert rep.identity_holds and rep.agree and rep.detL != 0
    assert rep.I_fan.is_symmetric() and rep.I_linking.is_symmetric()


def _brute_linking(delta, pole, M, radius=60):
    best = None
    for a in product(range(radius + 1), repeat=2):
        if sum(a) == 0 or sum(a) > radius:
            continue
        b = (M[0][0] * a[0] + M[0][1] * a[1], M[1][0] * a[0] + M[1][1] * a[1])
        r = pole.on_exponent(b) / delta.on_exponent(a)
        best = r if best is None else max(best, r)
    return best


def test_linking_examples():
    d11, d12 = WeightedDegree(P2, (1, 1)), WeightedDegree(P2, (1, 2))
    ident = ((1, 0), (0, 1))
    assert linking_at_infinity_2d(d11, d12, ident) == 2
    assert linking_at_infinity_2d(d11, d11, ident) == 1
    sq = ((2, 0), (0, 1))
    assert linking_at_infinity_2d(d11, d11, sq) == 2 == _brute_linking(d11, d11, sq)
    with pytest.raises(NotDominant):
        linking_at_infinity_2d(d11, d11, ((1, 1), (1, 1)))
    with pytest.raises(NotProjective):
        linking_at_infinity_2d(WeightedDegree(P2, (1, -1)), d11, ident)


def test_linking_on_the_torus():
    L = LAURENT(2)
    s = Subdegree.from_weights(L, [(1, 0), (0, 1), (-1, -1)])
    pole = WeightedDegree(L, (2, 1))
    exact = linking_at_infinity_2d(s, pole, ((1, 0), (0, 1)))
    brute = max(pole.on_exponent(a) / s.on_exponent(a)
                for a in product(range(-20, 21), repeat=2) if any(a))
    assert exact == brute == 3  # attained at (1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_linking_rows_match_pullbacks(seed):
    vs, _ = random_nef_instance(instance_rng(seed, 1, 0), k_max=4, entry_max=7)
    L = linking_matrix(vs)
    ident = ((1, 0), (0, 1))
    for i, vi in enumerate(vs):
        for j, vj in enumerate(vs):
            di, dj = WeightedDegree(P2, vi), WeightedDegree(P2, vj)
            assert linking_at_infinity_2d(di, dj, ident) == L[i, j]
    di, dj = WeightedDegree(P2, vs[0]), WeightedDegree(P2, vs[-1])
    assert _brute_linking(di, dj, ident) == L[0, len(vs) - 1]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=3),
       st.tuples(st.integers(0, 3), st.integers(0, 3)),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)))
def test_linking_against_brute_force(ws, pole_w, m):
    M = ((m[0], m[1]), (m[2], m[3]))
    if m[0] * m[3] - m[1] * m[2] == 0:
        return
    s = Subdegree.from_weights(P2, ws)
    pole = WeightedDegree(P2, pole_w)
    assert linking_at_infinity_2d(s, pole, M) == _brute_linking(s, pole, M, 40)


def test_sampled_linking_is_a_lower_bound():
    P3 = POLYNOMIAL(3)
    d = WeightedDegree(P3, (1, 1, 1))
    pole = WeightedDegree(P3, (1, 2, 3))
    assert linking_at_infinity_sampled(d, pole, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 4) == 3


def test_nef_hand_cases():
    vs = [(1, 1), (1, 2)]
    a = nef_membership(vs, [1, 1])
    assert (a.nef, a.ample, a.intersections) == (True, False, (0, F(1, 2)))
    assert a.witnesses[0] == (1, 0)
    b = nef_membership(vs, [2, 1])
    assert (b.nef, b.intersections[0]) == (False, -1)
    c = nef_membership(vs, [2, 3])
    assert (c.nef, c.ample, c.intersections) == (True, True, (1, F(1, 2)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_nef_routes_agree(seed):
    vs, m = random_nef_instance(instance_rng(seed, 2, 0))
    r = nef_membership(vs, m)
    for w, i in zip(r.witnesses, range(len(vs))):
        if w is not None:
            assert all(sum(a * b for a, b in zip(vs[i], w)) / m[i] >= sum(a * b for a, b in zip(vj, w)) / mj
                       for vj, mj in zip(vs, m))


def test_two_facet_polygon_ampleness():
    P = Polygon2.from_vertices(TWO_FACET)
    m, r = divisor_multiplicities(P)
    assert m == [1, 1] and r.ample
    assert ampleness_at_infinity(P)
