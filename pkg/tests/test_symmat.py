from fractions import Fraction

import pytest

from diracver.algebra import MASS, P1, P2, P3, ComplexRational, EPoly, MultiPoly, render_epoly
from diracver.clifford import pauli_set, random_hermitian_set
from diracver.symmat import (
    CharPoly,
    HermiticityError,
    MatrixSet,
    PolyMatrix,
    UnsupportedDimensionError,
    as_matrix,
    build_hamiltonian,
    char_poly,
    mat_det,
    mat_identity,
    mat_trace,
    mat_zero,
    poly_matrix_of_scalars,
    trace_and_det,
)
from oracles import char_poly_cofactor, char_poly_cofactor_pm, random_hermitian_matrix

I = ComplexRational(0, 1)


def test_hermiticity_enforced_at_construction(dirac_pauli):
    rows = [list(row) for row in dirac_pauli.alphas[0]]
    rows[0][2] = ComplexRational(Fraction(1, 10))  # (3,1) stays 0: broken pair
    with pytest.raises(HermiticityError) as err:
        MatrixSet(4, (as_matrix(rows),) + dirac_pauli.alphas[1:], dirac_pauli.beta)
    assert err.value.matrix_name == "alpha1"
    assert err.value.index == (0, 2)


def test_unsupported_dimension_rejected():
    with pytest.raises(UnsupportedDimensionError):
        MatrixSet(5, (mat_zero(5), mat_zero(5), mat_zero(5)), mat_zero(5))


def test_pauli_hamiltonian_entries():
    h = build_hamiltonian(pauli_set())
    assert h.entry(0, 0) == P3
    assert h.entry(0, 1) == P1 - I * P2
    assert h.entry(1, 1) == -P3
    assert h.is_hermitian()


def test_dirac_pauli_hamiltonian_entries(dirac_pauli):
    h = build_hamiltonian(dirac_pauli)
    assert h.entry(0, 0) == MASS
    assert h.entry(0, 3) == P1 - I * P2
    assert h.entry(0, 1) == MultiPoly.zero()
    assert h.is_hermitian()


def test_hamiltonian_entries_homogeneous_degree_one(all_catalog_sets):
    for mset in all_catalog_sets:
        h = build_hamiltonian(mset)
        for row in h.entries:
            for entry in row:
                assert entry.is_homogeneous()
                assert entry.is_zero or entry.total_degree() == 1


def test_zero_set_gives_zero_hamiltonian():
    mset = MatrixSet(4, (mat_zero(4), mat_zero(4), mat_zero(4)), mat_zero(4))
    h = build_hamiltonian(mset)
    assert all(entry.is_zero for row in h.entries for entry in row)


def test_char_poly_mass_diagonal():
    entries = [[MultiPoly.zero()] * 4 for _ in range(4)]
    for k, sign in enumerate((1, 1, -1, -1)):
        entries[k][k] = MASS * sign
    pm = PolyMatrix(4, tuple(tuple(row) for row in entries))
    cp = char_poly(pm)
    m2 = MASS * MASS
    assert cp.poly == EPoly([m2 * m2, MultiPoly.zero(), m2 * (-2), MultiPoly.zero(), 1])
    assert render_epoly(cp.poly) == "E^4 - 2*m^2*E^2 + m^4"
    assert cp.poly == char_poly_cofactor_pm(pm)


def test_char_poly_pauli():
    cp = char_poly(build_hamiltonian(pauli_set()))
    assert cp.poly == EPoly([-(P1 * P1 + P2 * P2 + P3 * P3), MultiPoly.zero(), 1])


def test_char_poly_one_by_one():
    pm = PolyMatrix(1, ((MASS,),))
    assert char_poly(pm).poly == EPoly([-MASS, 1])


def test_char_poly_rejects_large_dimension():
    pm = PolyMatrix(5, tuple((MultiPoly.zero(),) * 5 for _ in range(5)))
    with pytest.raises(UnsupportedDimensionError):
        char_poly(pm)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_faddeev_leverrier_matches_cofactor_oracle(n, rng):
    for _ in range(30):
        matrix = random_hermitian_matrix(rng, n)
        cp = char_poly(poly_matrix_of_scalars(matrix))
        assert cp.poly == char_poly_cofactor(matrix)
        # byproducts: c_{n-1} = -trace and c_0 = (-1)^n det
        assert cp.c(n - 1) == MultiPoly.constant(-mat_trace(matrix))
        assert cp.c(0) == MultiPoly.constant(mat_det(matrix) * (-1) ** n)


def test_char_poly_coefficients_real_and_homogeneous(all_catalog_sets, rng):
    sets = all_catalog_sets + [random_hermitian_set(rng) for _ in range(5)]
    for mset in sets:
        h = build_hamiltonian(mset)
        cp = char_poly(h)
        trace = MultiPoly.zero()
        for k in range(mset.n):
            trace = trace + h.entry(k, k)
        assert cp.c(mset.n - 1) == -trace
        for k in range(mset.n + 1):
            ck = cp.c(k)
            assert ck.is_real()
            assert ck.is_homogeneous()
            assert ck.is_zero or ck.total_degree() == mset.n - k


def test_char_poly_requires_monic():
    with pytest.raises(ValueError):
        CharPoly(2, EPoly([MultiPoly.zero(), MultiPoly.zero(), MASS]))


def test_trace_and_det_examples(dirac_pauli):
    values = trace_and_det(dirac_pauli)
    assert values["beta"] == (ComplexRational(0), ComplexRational(1))

    with_identity_beta = MatrixSet(4, dirac_pauli.alphas, mat_identity(4))
    values = trace_and_det(with_identity_beta)
    assert values["beta"] == (ComplexRational(4), ComplexRational(1))

    values = trace_and_det(pauli_set())
    assert values["alpha1"] == (ComplexRational(0), ComplexRational(-1))
