import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weham.algebra import LieAlgebra
from weham.catalog import a65a_algebra, heisenberg_algebra
from weham.errors import ScenarioValidationError
from weham.poisson import PoissonStructure
from weham.poly import Polynomial


def coord(n, i):
    return Polynomial.coordinate(n, i)


def test_constant_symplectic_d1():
    P = PoissonStructure.constant_symplectic(1)
    assert set(P.entries) == {(0, 1)}
    assert P.entries[(0, 1)] == Polynomial.constant(2, 1.0)


def test_constant_symplectic_d3():
    P = PoissonStructure.constant_symplectic(3)
    assert set(P.entries) == {(0, 3), (1, 4), (2, 5)}
    M = P.matrix_at(np.zeros(6))
    assert np.count_nonzero(M) == 6
    assert P.validate().passed


def test_lie_poisson_a65a_entries():
    P = PoissonStructure.lie_poisson(a65a_algebra(2.0))
    assert P.entries[(0, 2)] == coord(6, 4)
    assert P.entries[(0, 3)] == coord(6, 5)
    assert P.entries[(1, 2)] == coord(6, 5).scale(2.0)
    assert P.entries[(1, 3)] == coord(6, 4)
    assert len(P.entries) == 4


def test_lie_poisson_abelian_is_zero():
    P = PoissonStructure.lie_poisson(LieAlgebra.abelian(4))
    assert not P.entries


def test_lie_poisson_heisenberg():
    P = PoissonStructure.lie_poisson(heisenberg_algebra())
    assert set(P.entries) == {(0, 1)}
    assert P.entries[(0, 1)] == coord(3, 2)


def test_lie_poisson_rejects_non_jacobi_table():
    bad = LieAlgebra(3, {(0, 1): np.eye(3)[0], (0, 2): np.eye(3)[1]})
    assert not bad.validate_jacobi().passed
    with pytest.raises(ScenarioValidationError):
        PoissonStructure.lie_poisson(bad)


def test_product_block_structure():
    P1 = PoissonStructure.constant_symplectic(1)
    P2 = PoissonStructure.lie_poisson(heisenberg_algebra())
    P = PoissonStructure.product(P1, P2)
    assert P.nvars == 5
    assert P.entries[(0, 1)] == Polynomial.constant(5, 1.0)
    assert P.entries[(2, 3)] == coord(5, 4)
    # coordinates from different factors commute
    assert P.bracket(coord(5, 0), coord(5, 3)).is_zero()
    assert P.bracket(coord(5, 1), coord(5, 4)).is_zero()


def test_product_with_trivial_factor():
    P1 = PoissonStructure.constant_symplectic(1)
    point = PoissonStructure(0)
    P = PoissonStructure.product(P1, point)
    assert P.nvars == 2
    assert P.entries == P1.entries


def test_product_symplectic_with_zero_line():
    zero_line = PoissonStructure(1)
    P = PoissonStructure.product(PoissonStructure.constant_symplectic(1), zero_line)
    assert P.nvars == 3
    assert set(P.entries) == {(0, 1)}


def test_bracket_standard_r2():
    P = PoissonStructure.constant_symplectic(1)
    assert P.bracket(coord(2, 1), -coord(2, 0)) == Polynomial.constant(2, 1.0)


def test_bracket_a65a():
    P = PoissonStructure.lie_poisson(a65a_algebra(-1.0))
    assert P.bracket(coord(6, 0), coord(6, 2)) == coord(6, 4)


def test_bracket_of_function_with_itself():
    P = PoissonStructure.lie_poisson(a65a_algebra(-1.0))
    f = coord(6, 0) * coord(6, 3) + coord(6, 1)
    assert P.bracket(f, f).is_zero()


def test_hamiltonian_vf_translation():
    P = PoissonStructure.constant_symplectic(1)
    field = P.hamiltonian_vf(coord(2, 1))
    assert field[0] == Polynomial.constant(2, 1.0)
    assert field[1].is_zero()


def test_hamiltonian_vf_of_casimir_vanishes():
    P = PoissonStructure.lie_poisson(a65a_algebra(-1.0))
    field = P.hamiltonian_vf(coord(6, 4) * coord(6, 5))
    assert all(c.is_zero() for c in field)


def test_hamiltonian_vf_heisenberg_shear():
    P = PoissonStructure.lie_poisson(heisenberg_algebra())
    field = P.hamiltonian_vf(coord(3, 1))
    assert field[0] == coord(3, 2)
    assert field[1].is_zero()
    assert field[2].is_zero()


def test_casimirs_of_a65a():
    P = PoissonStructure.lie_poisson(a65a_algebra(-1.0))
    assert P.is_casimir(coord(6, 4))
    assert P.is_casimir(coord(6, 5))
    assert P.is_casimir(Polynomial.constant(6, 3.5))
    assert not P.is_casimir(coord(6, 0))


def test_validate_lie_poisson_passes():
    assert PoissonStructure.lie_poisson(a65a_algebra(4.0)).validate().passed


def test_validate_constant_passes():
    entries = {(0, 1): Polynomial.constant(3, 2.0), (1, 2): Polynomial.constant(3, -1.0)}
    assert PoissonStructure(3, entries).validate().passed


def test_validate_catches_jacobi_failure():
    entries = {(0, 1): coord(3, 0), (0, 2): coord(3, 1)}
    report = PoissonStructure(3, entries).validate()
    assert not report.passed
    assert report.offending_triple == (0, 1, 2)


def test_linear_casimirs_match_center():
    for a in (-1.0, 2.0):
        L = a65a_algebra(a)
        P = PoissonStructure.lie_poisson(L)
        report = L.structure_report()
        for k in range(6):
            z = np.eye(6)[k]
            in_center = bool(np.linalg.norm(report.center.T @ z) > 1e-9)
            assert P.is_casimir(coord(6, k)) == in_center


small_polys = st.builds(
    lambda terms: Polynomial(3, {e: float(c) for e, c in terms.items()}),
    st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
        st.integers(-4, 4),
        max_size=3,
    ),
)


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_leibniz_rule(f, g, h):
    P = PoissonStructure.lie_poisson(heisenberg_algebra())
    lhs = P.bracket(f * g, h)
    rhs = f * P.bracket(g, h) + g * P.bracket(f, h)
    assert (lhs - rhs).is_zero(1e-9)
