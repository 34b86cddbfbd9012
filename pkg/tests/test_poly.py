import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weham.poly import Polynomial


def x(i, n=3):
    return Polynomial.coordinate(n, i)


def test_product_of_coordinates():
    p = x(0) * x(1)
    assert p.terms == {(1, 1, 0): 1.0}


def test_subtraction_cancels():
    p = (x(0) + x(1)) - x(1)
    assert p == x(0)


def test_scale_negates():
    assert x(2).scale(-1.0) == -x(2)


def test_derivative_power_rule():
    p = x(0) * x(0) * x(1)      # x0^2 x1
    assert p.differentiate(0).terms == {(1, 1, 0): 2.0}


def test_derivative_of_unrelated_coordinate_is_zero():
    assert x(0).differentiate(1).is_zero()


def test_derivative_of_coordinate_is_one():
    assert x(2).differentiate(2) == Polynomial.constant(3, 1.0)


def test_evaluate_sum_of_coordinates():
    p = Polynomial.coordinate(6, 0) + Polynomial.coordinate(6, 4)
    assert p.evaluate([1, 0, 0, 0, 2, 0]) == 3.0


def test_evaluate_constant():
    assert Polynomial.constant(4, 7.0).evaluate([9, 9, 9, 9]) == 7.0


def test_evaluate_mass_times_coordinate():
    # boost Hamiltonian m*q1 at q1 = 2 with m = 2.5
    p = Polynomial.coordinate(6, 0).scale(2.5)
    assert p.evaluate([2.0, 0, 0, 0, 0, 0]) == 5.0


def test_is_zero_difference():
    p = x(0) * x(1) + x(2)
    assert (p - p).is_zero()


def test_is_zero_below_tolerance():
    p = x(2) - x(2) + x(0).scale(1e-15)
    assert p.is_zero(1e-12)


def test_is_zero_false_for_coordinate():
    assert not x(2).is_zero()


def test_tiny_coefficients_stripped_on_construction():
    p = Polynomial(2, {(1, 0): 1e-13, (0, 1): 1.0})
    assert p.terms == {(0, 1): 1.0}


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        Polynomial.coordinate(2, 0) + Polynomial.coordinate(3, 0)
    with pytest.raises(ValueError):
        Polynomial.coordinate(2, 0).evaluate([1.0])
    with pytest.raises(IndexError):
        Polynomial.coordinate(2, 0).differentiate(5)


def test_embed_shifts_variables():
    p = Polynomial.coordinate(2, 1)
    q = p.embed(5, 2)
    assert q.terms == {(0, 0, 0, 1, 0): 1.0}


def test_json_roundtrip_and_grlex_order():
    p = x(0) * x(0) + x(1).scale(3.0) + Polynomial.constant(3, -2.0)
    data = p.to_json()
    # graded lex: constant first, then degree-1, then degree-2
    assert [sum(t["exp"]) for t in data] == [0, 1, 2]
    assert Polynomial.from_json(data, 3) == p


def test_evaluate_batch_matches_single():
    p = x(0) * x(1) + x(2).scale(-2.0)
    pts = np.array([[1.0, 2.0, 3.0], [0.5, -1.0, 0.0]])
    batch = p.evaluate_batch(pts)
    assert batch == pytest.approx([p.evaluate(pts[0]), p.evaluate(pts[1])])


def test_repr_of_zero():
    assert repr(Polynomial.zero(2)) == "0"


small_polys = st.builds(
    lambda terms: Polynomial(2, {e: float(c) for e, c in terms.items()}),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        st.integers(-5, 5),
        max_size=4,
    ),
)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_distributivity_exact(p, q, r):
    # small integer coefficients keep float arithmetic exact
    assert (p + q) * r == p * r + q * r


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_degree_of_product_adds(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).degree() == p.degree() + q.degree()


@settings(max_examples=60, deadline=None)
@given(small_polys)
def test_mixed_partials_commute(p):
    assert p.differentiate(0).differentiate(1) == p.differentiate(1).differentiate(0)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys,
       st.lists(st.floats(-2, 2, allow_nan=False), min_size=2, max_size=2))
def test_evaluate_compatible_with_product(p, q, pt):
    lhs = (p * q).evaluate(pt)
    rhs = p.evaluate(pt) * q.evaluate(pt)
    assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-9)
