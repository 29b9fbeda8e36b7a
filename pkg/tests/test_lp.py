from itertools import product

from hypothesis import given, settings, strategies as st

from deginf.lp import GE, LE, closed_orthant_feasible, solve_lp, strict_cone_feasible
from deginf.poly import LAURENT, POLYNOMIAL

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
rows2 = st.lists(st.tuples(small, small), min_size=1, max_size=4)


def test_examples():
    assert strict_cone_feasible([(1, -1)], POLYNOMIAL(2)) == (1, 0)
    assert strict_cone_feasible([(-1, -1)], POLYNOMIAL(2)) is None
    assert strict_cone_feasible([(-1, 0)], LAURENT(2)) is not None
    assert strict_cone_feasible([(1, 0), (-1, 0)], LAURENT(2)) is None


def test_solve_lp_optimum():
    res = solve_lp(2, [((1, 1), LE, 4), ((1, 3), LE, 6)], objective=(-1, -2))
    assert res.status == "optimal"
    assert res.value == -5  # x = 3, y = 1
    assert res.x == (3, 1)


def test_solve_lp_infeasible():
    assert solve_lp(1, [((1,), GE, 2), ((1,), LE, 1)]).status == "infeasible"


def _dot(r, a):
    return sum(x * y for x, y in zip(r, a))


def _box_search(rows, lo, hi, strict):
    for a in product(range(lo, hi + 1), repeat=2):
        if any(a) and all((_dot(r, a) > 0) if strict else (_dot(r, a) >= 0) for r in rows):
            return a
    return None


@settings(max_examples=150)
@given(rows2, st.sampled_from(["POLYNOMIAL", "LAURENT"]))
def test_strict_witness_is_valid_and_complete(rows, mode):
    domain = POLYNOMIAL(2) if mode == "POLYNOMIAL" else LAURENT(2)
    a = strict_cone_feasible(rows, domain)
    lo = 0 if mode == "POLYNOMIAL" else -12
    if a is None:
        # no lattice point in a generous box either
        assert _box_search(rows, lo, 12, True) is None
    else:
        assert domain.contains(a)
        assert all(_dot(r, a) > 0 for r in rows)


@settings(max_examples=150)
@given(rows2)
def test_closed_orthant_witness(rows):
    a = closed_orthant_feasible(rows, 2)
    if a is None:
        assert _box_search(rows, 0, 12, False) is None
    else:
        assert any(a) and min(a) >= 0
        assert all(_dot(r, a) >= 0 for r in rows)
