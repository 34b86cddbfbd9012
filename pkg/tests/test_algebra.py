import numpy as np
import pytest

from weham import linalg
from weham.algebra import LieAlgebra
from weham.catalog import a65a_algebra, heisenberg_algebra

E6 = np.eye(6)
E3 = np.eye(3)


def a65a_with_bogus_relation(a=-1.0):
    L = a65a_algebra(a)
    structure = {k: v for k, v in L.structure.items()}
    structure[(4, 5)] = E6[0]           # extra [e5, e6] = e1 (1-based)
    return LieAlgebra(6, structure)


def test_abelian_passes_jacobi():
    report = LieAlgebra.abelian(4).validate_jacobi()
    assert report.passed
    assert report.max_residual == 0.0


def test_a65a_passes_jacobi():
    assert a65a_algebra(-1.0).validate_jacobi().passed
    assert a65a_algebra(2.0).validate_jacobi().passed


def test_bogus_relation_fails_at_expected_triple():
    report = a65a_with_bogus_relation().validate_jacobi()
    assert not report.passed
    # [[e1,e3],e6] = [e5,e6] = e1 is the first violated identity (0-based)
    assert report.offending_triple == (0, 2, 5)


def test_basis_bracket_a65a():
    L = a65a_algebra(-1.0)
    assert np.array_equal(L.bracket(E6[0], E6[2]), E6[4])


def test_bracket_antisymmetry_on_diagonal():
    L = a65a_algebra(-1.0)
    u = np.array([1.0, -2.0, 0.5, 3.0, 0.0, 1.0])
    assert np.array_equal(L.bracket(u, u), np.zeros(6))


def test_bracket_bilinear_heisenberg():
    L = heisenberg_algebra()
    assert np.array_equal(L.bracket(E3[0] + E3[1], E3[1]), E3[2])


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        heisenberg_algebra().bracket([1.0, 0.0], [0.0, 1.0])


def test_ad_orbit_heisenberg():
    L = heisenberg_algebra()
    iterates, trunc = L.ad_orbit(E3[0], E3[1], 3)
    assert len(iterates) == 4
    assert np.array_equal(iterates[0], E3[0])
    assert np.array_equal(iterates[1], E3[2])    # [X, Y] = Z
    assert np.array_equal(iterates[2], np.zeros(3))
    assert np.array_equal(iterates[3], np.zeros(3))
    assert trunc == 2


def test_ad_orbit_abelian():
    L = LieAlgebra.abelian(3)
    u = np.array([1.0, 2.0, 3.0])
    iterates, trunc = L.ad_orbit(u, E3[1], 5)
    assert len(iterates) == 6
    assert np.array_equal(iterates[0], u)
    assert all(np.array_equal(w, np.zeros(3)) for w in iterates[1:])
    assert trunc == 1


def test_ad_orbit_a65a():
    L = a65a_algebra(-1.0)
    iterates, trunc = L.ad_orbit(E6[0], E6[2], 2)
    assert np.array_equal(iterates[0], E6[0])
    assert np.array_equal(iterates[1], E6[4])
    assert np.array_equal(iterates[2], np.zeros(6))
    assert trunc == 2


def test_structure_report_a65a():
    report = a65a_algebra(-1.0).structure_report()
    span56 = np.eye(6)[:, 4:6]
    assert report.center.shape[1] == 2
    assert linalg.span_contains(report.center, span56)
    assert report.derived.shape[1] == 2
    assert linalg.span_contains(report.derived, span56)
    assert report.is_2step
    assert report.is_nilpotent
    assert not report.is_abelian


def test_structure_report_abelian():
    report = LieAlgebra.abelian(5).structure_report()
    assert report.center.shape[1] == 5
    assert report.derived.shape[1] == 0
    assert report.is_abelian
    assert report.nilpotency_class == 1


def test_structure_report_heisenberg():
    report = heisenberg_algebra().structure_report()
    assert report.lcs_dims == (3, 1, 0)
    assert report.nilpotency_class == 2
    assert report.is_2step


@pytest.mark.parametrize("make", [
    lambda: LieAlgebra.abelian(4),
    heisenberg_algebra,
    lambda: a65a_algebra(-1.0),
    lambda: a65a_algebra(2.5),
])
def test_catalog_algebra_invariants(make):
    L = make()
    assert L.validate_jacobi(1e-12).passed
    report = L.structure_report()
    assert report.is_nilpotent
    # iterated brackets must die within the nilpotency class
    rng = np.random.default_rng(0)
    for _ in range(5):
        u = rng.integers(-3, 4, L.dim).astype(float)
        v = rng.integers(-3, 4, L.dim).astype(float)
        _, trunc = L.ad_orbit(u, v, report.nilpotency_class)
        assert trunc is not None and trunc <= report.nilpotency_class
    if report.is_2step:
        assert linalg.span_contains(report.center, report.derived)


def test_bracket_antisymmetry_random():
    L = a65a_algebra(3.0)
    rng = np.random.default_rng(1)
    for _ in range(10):
        u = rng.normal(size=6)
        v = rng.normal(size=6)
        assert np.allclose(L.bracket(u, v), -L.bracket(v, u), atol=0)


def test_json_roundtrip():
    L = a65a_algebra(-1.0)
    L2 = LieAlgebra.from_json(L.to_json())
    assert L2.dim == 6
    assert set(L2.structure) == set(L.structure)
    for k in L.structure:
        assert np.array_equal(L2.structure[k], L.structure[k])
