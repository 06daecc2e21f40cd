import random
import warnings

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from rsfock.errors import InvalidParameters
from rsfock.lfun import (
    FrobSpace,
    LocalSystemH1,
    central_derivative,
    lfunction,
    normalized_pair_lfunction,
    residue_scalar,
    root_number,
)
from rsfock.scalars import ExactBackend, FloatBackend, RatFuncU

EX = ExactBackend()
FL = FloatBackend()
ONE = EX.one
I = EX.coerce([0, 1])


def h1(alphas, q=4, bk=EX):
    return FrobSpace(tuple(alphas), q=q, backend=bk)


def system(bs, q=4, bk=EX):
    root = bk.sqrt(q)
    return LocalSystemH1(q, 2, 2, tuple(root * bk.coerce(b) for b in bs), bk, check_counts=False)


def _sym(x):
    re, im = EX.parts(x)
    return sp.Rational(re.numerator, re.denominator) + sp.I * sp.Rational(im.numerator, im.denominator)


def sympy_central_derivative(alphas, q, r):
    """(ln q)^-r d^r/ds^r of q^{D(s-1/2)} prod (1 - a q^-s)(1 - (q/a) q^-s) at s = 1/2."""
    s = sp.symbols("s")
    D = len(alphas)
    expr = q ** (D * (s - sp.Rational(1, 2)))
    for a in alphas:
        a = _sym(a)
        expr *= (1 - a * q ** (-s)) * (1 - (q / a) * q ** (-s))
    val = sp.diff(expr, s, r).subs(s, sp.Rational(1, 2)) / sp.log(q) ** r
    return sp.nsimplify(sp.expand(sp.simplify(val)))


# -- spec examples ----------------------------------------------------------------


def test_lfunction_examples():
    assert lfunction(h1([]), 4) == RatFuncU.constant(ONE)
    assert lfunction(h1([2]), 4) == RatFuncU((ONE, -ONE))
    assert lfunction(h1([-2, -2]), 4) == RatFuncU((ONE, 2 * ONE, ONE))


def test_root_number_examples():
    assert root_number(h1([]), 4) == ONE
    assert root_number(h1([2, 2]), 4) == ONE
    assert root_number(h1([-2, 2]), 4) == -ONE


def test_normalized_pair_examples():
    assert normalized_pair_lfunction(system([])) == RatFuncU.constant(ONE)
    expected = RatFuncU(tuple(EX.coerce(c) for c in (1, 4, 6, 4, 1)), None, -2)
    assert normalized_pair_lfunction(system([-1, -1])) == expected


def test_central_derivative_examples():
    sys_ = system([-1, -1])
    assert central_derivative(sys_, 0) == EX.coerce(16)
    assert central_derivative(sys_, 2) == EX.coerce(16)
    assert central_derivative(sys_, 1) == EX.zero


def test_residue_examples():
    assert residue_scalar([], 4) == EX.coerce("4/3")
    assert residue_scalar([2, 2], 4) == EX.coerce("1/3")
    with pytest.raises(ZeroDivisionError):
        residue_scalar([1], 1)


# -- validation ------------------------------------------------------------------


def test_counts_enforced():
    with pytest.raises(InvalidParameters):
        LocalSystemH1(4, 2, 2, (2, 2))
    assert LocalSystemH1(4, 2, 2, (2, 2, 2, 2)).D == 4


def test_zero_eigenvalue_rejected():
    with pytest.raises(InvalidParameters):
        FrobSpace((0,), q=4)


def test_weight_check_warns_exact_raises_float():
    with pytest.warns(UserWarning):
        FrobSpace((3,), weight=1, q=4)
    with pytest.raises(InvalidParameters):
        FrobSpace((3.0,), weight=1, q=4, backend=FL)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        FrobSpace((2 * I,), weight=1, q=4)


def test_twist_shifts_degree_parity_and_scales():
    sp1 = FrobSpace((2, -2 * I), degree=1, q=4, weight=1)
    t = sp1.twist(1)
    assert t.degree == 0 and t.parity == 0 and t.weight == 0
    assert t.eigenvalues == (ONE, -I)


def test_dual_system_has_inverse_normalized_eigenvalues():
    sys_ = system([I, -1])
    assert sys_.dual().normalized() == tuple(ONE / b for b in sys_.normalized())


# -- independent oracle -----------------------------------------------------------


@pytest.mark.parametrize("bs", [[-1, -1], [I, -1], [I, I, -I, -1], ["3/5+4/5i"]])
@pytest.mark.parametrize("r", [0, 1, 2, 3, 4])
def test_central_derivative_against_symbolic_differentiation(bs, r):
    bs = [EX.coerce(["3/5", "4/5"]) if b == "3/5+4/5i" else b for b in bs]
    sys_ = system(bs)
    expected = sympy_central_derivative(list(sys_.alphas), 4, r)
    assert _sym(central_derivative(sys_, r)) == expected


unit_b = st.sampled_from([ONE * -1, I, -I, EX.coerce(["3/5", "4/5"]), EX.coerce(["-5/13", "12/13"])])


@given(st.lists(unit_b, max_size=6))
def test_pair_lfunction_symmetric_and_odd_vanishing(bs):
    sys_ = system(bs)
    f = normalized_pair_lfunction(sys_)
    assert f.is_symmetric()
    for r in (1, 3, 5):
        assert central_derivative(sys_, r) == EX.zero


@given(st.lists(st.integers(-9, 9).filter(bool), max_size=4), st.lists(st.integers(-9, 9).filter(bool), max_size=4))
def test_lfunction_multiplicative(a, b):
    assert lfunction(h1(a + b), 4) == lfunction(h1(a), 4) * lfunction(h1(b), 4)


@given(st.lists(st.integers(-9, 9).filter(bool), max_size=6), st.randoms())
def test_residue_permutation_and_duality_invariant(alphas, rnd):
    q = EX.coerce(4)
    shuffled = list(alphas)
    rnd.shuffle(shuffled)
    base = residue_scalar(alphas, q)
    assert residue_scalar(shuffled, q) == base
    closed = [EX.coerce(a) for a in alphas] + [q / a for a in alphas]
    assert residue_scalar([q / a for a in closed], q) == residue_scalar(closed, q)


def test_float_lfunction_matches_direct_product():
    rng = random.Random(5)
    q = 9
    alphas = [3 * complex(FL.unit_circle(rng.random())) for _ in range(6)]
    f = lfunction(h1(alphas, q, FL), q)
    s = complex(0.3, 1.7)
    u = q ** (0.5 - s)
    direct = 1
    for a in alphas:
        direct *= 1 - a * q ** (-s)
    assert abs(f(u) - direct) <= 1e-12 * abs(direct)


@given(st.lists(unit_b, max_size=6), st.integers(0, 6))
def test_series_and_rational_routes_agree_exactly(bs, r):
    sys_ = system(bs)
    assert central_derivative(sys_, r) == central_derivative(sys_, r, method="rational")


def test_series_route_accuracy_against_extended_precision():
    from rsfock.runner import generate_spec

    worst = 0.0
    for seed in range(10):
        lo = generate_spec(9, 2, 3, seed, "float")
        hi = generate_spec(9, 2, 3, seed, FloatBackend(200))
        for r in (0, 2, 4, 6):
            with hi.backend.context():
                ref = complex(central_derivative(hi.local_system(), r))
            worst = max(worst, abs(central_derivative(lo.local_system(), r) - ref) / abs(ref))
    assert worst < 1e-9


def test_unknown_method():
    with pytest.raises(ValueError):
        central_derivative(system([-1, -1]), 2, method="finite-difference")
