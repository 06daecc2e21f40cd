import pytest

from conftest import EXACT_FIXTURES, make_exact_spec
from rsfock.cycles import EpsilonPattern, fake_cycle_class, total_cycle_class
from rsfock.errors import InvalidParameters, OddR, ZeroResidue
from rsfock.identity import (
    PeriodSpec,
    beta_sigma,
    dual_relation_check,
    dual_relation_scalar,
    exact_determinant,
    graded_dimension_check,
    intersection_dual_pairing,
    intersection_gram_matrix,
    kolyvagin_norm_check,
    main_identity_check,
    nondegeneracy_check,
)
from rsfock.lfun import central_derivative
from rsfock.runner import generate_spec
from rsfock.scalars import ExactBackend, FloatBackend

EX = ExactBackend()
ONE = EX.one
I = EX.coerce([0, 1])


def test_spec_validation():
    with pytest.raises(InvalidParameters):
        make_exact_spec((-1, -1, -1), 1, 1)  # odd size
    with pytest.raises(InvalidParameters):
        PeriodSpec(4, 2, 2, (-2, -2), 1, 1, (2 * I, 2 * I), (2, -2), EX, check_counts=False)  # not self-dual
    with pytest.raises(InvalidParameters):
        PeriodSpec(4, 2, 2, (-2, -2), 1, 1, (2, -2), (2, -2), EX)  # counts
    with pytest.raises(InvalidParameters):
        PeriodSpec(4, 2, 2, (-2, -2), 0, 1, (2, -2), (2, -2), EX, check_counts=False)


def test_beta_odd_r():
    with pytest.raises(OddR):
        beta_sigma(EXACT_FIXTURES[0], 1)


def test_beta_formula_by_hand():
    # n = 2, g = 2, q = 4: beta = (-1)^{r/2} 4^{-4} chi_1^{-2} chi_2^{-1} eps with chi = squares of the half values
    spec = EXACT_FIXTURES[3]
    chi_n, chi_n1 = spec.chi_n_half**2, spec.chi_n1_half**2
    expected = EX.coerce("1/256") / (chi_n1**2 * chi_n) * spec.epsilon
    assert beta_sigma(spec, 0) == expected
    assert beta_sigma(spec, 2) == -expected


@pytest.mark.parametrize("spec", EXACT_FIXTURES, ids=lambda s: f"D{s.D}")
def test_kolyvagin_r0_closed_form(spec):
    lam = spec.lambda0
    closed = lam * lam
    for b in spec.b:
        closed = closed * (ONE - b) ** 2
    rep = kolyvagin_norm_check(spec, 0)
    assert rep.passed and rep.lhs == closed


@pytest.mark.parametrize("r", [0, 2, 4, 6])
@pytest.mark.parametrize("spec", EXACT_FIXTURES[:6], ids=lambda s: f"D{s.D}")
def test_exact_identities(spec, r):
    for check in (kolyvagin_norm_check, main_identity_check, dual_relation_check):
        rep = check(spec, r)
        assert rep.passed, rep.line()
        assert rep.abs_err == 0.0


@pytest.mark.parametrize("r", [1, 3])
def test_odd_r_trivially_zero(r):
    spec = EXACT_FIXTURES[5]
    for check in (kolyvagin_norm_check, main_identity_check):
        rep = check(spec, r)
        assert rep.passed and rep.lhs == EX.zero
    assert central_derivative(spec.local_system(), r) == EX.zero


def test_dual_scalar_trivial_characters():
    spec = EXACT_FIXTURES[6]
    assert dual_relation_scalar(spec) == ONE / spec.epsilon


def test_dual_spec_round_trip():
    spec = EXACT_FIXTURES[8]
    back = spec.dual().dual()
    assert back.h1_alphas == spec.h1_alphas
    assert back.chi_n_half == spec.chi_n_half
    assert spec.dual().epsilon == ONE / spec.epsilon


def test_float_extended_precision_tightens_error():
    spec53 = generate_spec(9, 2, 2, 7, "float")
    spec200 = generate_spec(9, 2, 2, 7, FloatBackend(200))
    lo = main_identity_check(spec53, 2)
    hi = main_identity_check(spec200, 2, tol=1e-50)
    assert lo.passed and hi.passed
    assert hi.rel_err < 1e-50


def test_tolerance_below_noise_fails():
    spec = generate_spec(9, 2, 2, 3, "float")
    rep = main_identity_check(spec, 2, tol=1e-30)
    assert not rep.passed and rep.abs_err > 0


def test_graded_check():
    assert graded_dimension_check(EXACT_FIXTURES[5]).passed


def test_pairing_zero_residue():
    # adjoint multiset containing q itself makes prod (1 - alpha/q) vanish
    spec = PeriodSpec(4, 2, 2, (-2, -2), 1, 1, (4, 1), (2, -2), EX, check_counts=False)
    z = fake_cycle_class(spec.fock_module(), EpsilonPattern(()))
    with pytest.raises(ZeroResidue):
        intersection_dual_pairing(spec, z, z)


@pytest.mark.parametrize("D", [1, 2, 3])
@pytest.mark.parametrize("r", [0, 2])
def test_gram_matrix_and_determinant(D, r):
    spec = EXACT_FIXTURES[1]
    rows = intersection_gram_matrix(spec, EpsilonPattern((1, -1)[:r]) if r else EpsilonPattern(()), D)
    norm = spec.residue_n() * spec.residue_n1()
    n = len(rows)
    assert n == D**r
    # diagonal in the lexicographic basis with entries 1/(R_n R_{n-1})
    for i in range(n):
        for j in range(n):
            assert rows[i][j] == (ONE / norm if i == j else EX.zero)
    assert exact_determinant(rows, EX) == ONE / norm**n
    assert nondegeneracy_check(spec, r, D).passed


def test_exact_determinant_against_sympy():
    import sympy as sp

    rows = [[EX.coerce(v) for v in row] for row in ([2, 1, 0], [1, 3, 1], [0, "1/2", 4])]
    m = sp.Matrix([[sp.Rational(*EX.parts(v)[0].as_integer_ratio()) for v in row] for row in rows])
    num, den = EX.parts(exact_determinant(rows, EX))[0].as_integer_ratio()
    assert sp.Rational(num, den) == m.det()
    sing = [[EX.coerce(1), EX.coerce(2)], [EX.coerce(2), EX.coerce(4)]]
    assert exact_determinant(sing, EX) == EX.zero


def test_nondegeneracy_size_guard():
    spec = generate_spec(9, 2, 3, 1, "float")
    with pytest.raises(InvalidParameters):
        nondegeneracy_check(spec, 4)


def test_pattern_sum_pairing_matches_componentwise():
    spec = EXACT_FIXTURES[7]
    zs = total_cycle_class(spec.fock_module(), 2)
    total = intersection_dual_pairing(spec, zs, zs, 2)
    parts = EX.zero
    for p, z in zs.items():
        parts = parts + intersection_dual_pairing(spec, z, zs[-p])
    assert total == parts
