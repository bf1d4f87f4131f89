from fractions import Fraction

import pytest

from diracver.algebra import MASS, P1, P2, P3, EPoly
from diracver.clifford import (
    pauli_set,
    perturbed_set,
    random_exact_unitary,
    random_hermitian_set,
)
from diracver.dispersion import (
    Assignment,
    DegeneracyRequirement,
    ForcedCoefficientSolution,
    InfeasibilityCertificate,
    RatFunc,
    SPoly,
    check_dispersion,
    factorized_spectrum,
    render_certificate,
    render_solution,
    render_spoly,
    solve_forced_coefficients,
    verify_solution,
)
from diracver.symmat import MatrixSet, build_hamiltonian, char_poly, mat_identity


def solve(n, r):
    return solve_forced_coefficients(DegeneracyRequirement(n, r))


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------


def test_four_by_four_double_root_solution():
    sol = solve(4, 2)
    assert isinstance(sol, ForcedCoefficientSolution)
    assert sol.free == frozenset()
    constants = sol.constants()
    assert constants[3] == SPoly.zero()
    assert constants[2] == SPoly((0, -2))
    assert constants[1] == SPoly.zero()
    assert constants[0] == SPoly((0, 0, 1))
    assert render_solution(sol) == ["c3 = 0", "c2 = -2*s", "c1 = 0", "c0 = s^2"]


def test_two_by_two_double_root_infeasible():
    cert = solve(2, 2)
    assert isinstance(cert, InfeasibilityCertificate)
    assert cert.witness == SPoly((2,))
    assert "odd part of P'" in cert.narrative
    assert render_certificate(cert)[1] == "forced: 2 = 0 for all momenta"


def test_three_by_three_double_root_infeasible():
    cert = solve(3, 2)
    assert isinstance(cert, InfeasibilityCertificate)
    assert cert.witness == SPoly((0, 2))
    assert "E_p = 0 for all momenta" in cert.narrative
    assert render_certificate(cert)[1] == "forced: 2*s = 0 for all momenta"


def test_two_by_two_single_root_solution():
    sol = solve(2, 1)
    assert isinstance(sol, ForcedCoefficientSolution)
    constants = sol.constants()
    assert constants[1] == SPoly.zero()
    assert constants[0] == SPoly((0, -1))
    assert render_solution(sol) == ["c1 = 0", "c0 = -s"]


def test_four_by_four_single_root_is_parametric():
    # hand solution of the single even/odd pair:
    #   even: s^2 + c2 s + c0 = 0  ->  c0 = -s^2 - s c2
    #   odd:  c3 s + c1 = 0        ->  c1 = -s c3
    sol = solve(4, 1)
    assert isinstance(sol, ForcedCoefficientSolution)
    assert sol.free == frozenset({2, 3})
    assert sol.assignments[0] == Assignment(SPoly((0, 0, -1)), ((2, SPoly((0, -1))),))
    assert sol.assignments[1] == Assignment(SPoly.zero(), ((3, SPoly((0, -1))),))
    assert render_solution(sol) == ["c1 = -s*c3", "c0 = -s^2 - s*c2", "free: c2, c3"]
    assert verify_solution(sol.requirement, sol) == []


def test_one_component_theory_is_infeasible():
    cert = solve(1, 1)
    assert isinstance(cert, InfeasibilityCertificate)
    assert cert.witness == SPoly((1,))


def test_full_multiplicity_requirements_are_infeasible():
    for n in (2, 3, 4):
        if n == 2:
            continue  # (2, 2) covered above
        cert = solve(n, n)
        assert isinstance(cert, InfeasibilityCertificate)
        assert not cert.witness.is_zero


def test_multiplicity_above_degree_rejected():
    with pytest.raises(ValueError):
        DegeneracyRequirement(3, 4)
    with pytest.raises(ValueError):
        DegeneracyRequirement(2, 0)
    with pytest.raises(ValueError):
        DegeneracyRequirement(5, 1)


def test_feasible_solutions_round_trip():
    for n in range(1, 5):
        for r in range(1, n + 1):
            result = solve(n, r)
            if isinstance(result, ForcedCoefficientSolution):
                assert verify_solution(result.requirement, result) == []


def test_certificate_witness_nonzero_invariant():
    with pytest.raises(ValueError):
        InfeasibilityCertificate(DegeneracyRequirement(2, 2), SPoly.zero(), "broken")


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------


def test_factorization_of_the_four_dim_solution():
    assert factorized_spectrum(solve(4, 2)) == "(E - E_p)^2*(E + E_p)^2"


def test_factorization_of_the_two_dim_solution():
    assert factorized_spectrum(solve(2, 1)) == "(E - E_p)*(E + E_p)"


def test_factorization_rejects_tampered_solution():
    tampered = ForcedCoefficientSolution(
        DegeneracyRequirement(4, 2),
        {
            3: Assignment(SPoly.zero()),
            2: Assignment(SPoly((0, 2))),  # sign flipped
            1: Assignment(SPoly.zero()),
            0: Assignment(SPoly((0, 0, 1))),
        },
        frozenset(),
    )
    with pytest.raises(ValueError, match="mismatch"):
        factorized_spectrum(tampered)


def test_factorization_rejects_incomplete_solution():
    with pytest.raises(ValueError, match="free"):
        factorized_spectrum(solve(4, 1))


# ---------------------------------------------------------------------------
# dispersion checks on concrete sets
# ---------------------------------------------------------------------------


def test_standard_set_passes_double_root_check(dirac_pauli):
    report = check_dispersion(dirac_pauli, 2)
    assert report.passed
    assert all(res.is_zero for res in report.residuals)
    assert report.labels == ("P even", "P odd", "P' even", "P' odd")


def test_identity_beta_fails_with_derived_residuals(dirac_pauli):
    broken = MatrixSet(4, dirac_pauli.alphas, mat_identity(4), label="identity-beta")
    cp = char_poly(build_hamiltonian(broken))
    # the standard alphas satisfy the Clifford relations on their own, so
    # h = alpha.p + 1*m is a shift and P(E) = ((E - m)^2 - p.p)^2 exactly
    p_sq = P1 * P1 + P2 * P2 + P3 * P3
    base = EPoly([MASS * MASS - p_sq, MASS * (-2), 1])
    assert cp.poly == base * base
    assert cp.c(3) == MASS * (-4)  # c3 = -trace = -4m

    report = check_dispersion(broken, 2)
    assert not report.passed
    m2 = MASS * MASS
    assert report.residuals[0] == m2 * m2 * 8 + m2 * p_sq * 4  # P even
    assert report.residuals[1] == MASS * m2 * (-8)  # P odd, carrying the c3 term
    assert report.residuals[1].coefficient((0, 0, 0, 3)) == -8


def test_massless_two_component_single_root(rng):
    report = check_dispersion(pauli_set(), 1, massless=True)
    assert report.passed
    # with the mass kept, the same set misses the dispersion by m^2
    massful = check_dispersion(pauli_set(), 1)
    assert not massful.passed
    assert massful.residuals[0] == MASS * MASS


def test_monotonicity_in_multiplicity(all_catalog_sets):
    for mset in all_catalog_sets:
        assert check_dispersion(mset, 2).passed
        assert check_dispersion(mset, 1).passed


def test_exact_unitary_conjugation_preserves_char_poly(dirac_pauli, rng):
    for _ in range(5):
        u = random_exact_unitary(rng)
        conjugated = u.conjugate_set(dirac_pauli)
        assert (
            char_poly(build_hamiltonian(conjugated)).poly
            == char_poly(build_hamiltonian(dirac_pauli)).poly
        )
        assert check_dispersion(conjugated, 2).passed
    generic = random_hermitian_set(rng)
    u = random_exact_unitary(rng)
    assert (
        check_dispersion(u.conjugate_set(generic), 2).passed
        == check_dispersion(generic, 2).passed
    )


def test_check_dispersion_matches_solver_forced_coefficients(dirac_pauli, rng):
    # (4, 2): a set passes iff its char-poly coefficients equal the forced ones
    sol = solve(4, 2).constants()
    for mset, expect in [
        (dirac_pauli, True),
        (perturbed_set(rng, dirac_pauli), False),
    ]:
        cp = char_poly(build_hamiltonian(mset))
        coefficients_match = all(
            cp.c(k) == sol[k].to_multipoly() for k in range(4)
        )
        assert coefficients_match == expect
        assert check_dispersion(mset, 2).passed == expect

    # (2, 1) in the massless lane
    sol2 = solve(2, 1).constants()
    cp = char_poly(build_hamiltonian(pauli_set()))
    assert cp.c(0).at_zero_mass() == sol2[0].to_multipoly(massless=True)
    assert cp.c(1).at_zero_mass() == sol2[1].to_multipoly(massless=True)


def test_multiplicity_bounds_on_check(dirac_pauli):
    with pytest.raises(ValueError):
        check_dispersion(dirac_pauli, 0)
    with pytest.raises(ValueError):
        check_dispersion(dirac_pauli, 5)


# ---------------------------------------------------------------------------
# s-polynomials
# ---------------------------------------------------------------------------


def test_spoly_rendering():
    assert render_spoly(SPoly.zero()) == "0"
    assert render_spoly(SPoly((0, -2))) == "-2*s"
    assert render_spoly(SPoly((0, 0, 1))) == "s^2"
    assert render_spoly(SPoly((Fraction(1, 2), -1, 1))) == "s^2 - s + 1/2"


def test_spoly_substitution_consistency():
    p = SPoly((3, 0, 1))  # s^2 + 3
    assert p.substitute(Fraction(2)) == Fraction(7)
    assert p.to_multipoly().evaluate((1, 1, 1, 1)) == 19  # s = 4 -> 16 + 3


def test_ratfunc_normalization():
    quotient = RatFunc(SPoly((0, 0, 2)), SPoly((0, 4)))  # 2s^2 / 4s
    assert quotient.is_polynomial
    assert quotient.as_spoly() == SPoly((0, Fraction(1, 2)))
    improper = RatFunc(SPoly((1,)), SPoly((0, 1)))  # 1/s
    assert not improper.is_polynomial
    with pytest.raises(ValueError):
        improper.as_spoly()
