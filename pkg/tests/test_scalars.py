from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rsfock.errors import InvalidParameters, PoleAtPoint
from rsfock.scalars import ExactBackend, FloatBackend, RatFuncU, get_backend, log_derivative_power, rf_eval

EX = ExactBackend()
FL = FloatBackend()
ONE = EX.one


def rf(num, den=None, shift=0, bk=EX):
    return RatFuncU(tuple(bk.coerce(c) for c in num), None if den is None else tuple(bk.coerce(c) for c in den), shift)


F_BINOM = rf((1, 4, 6, 4, 1), shift=-2)  # u^-2 (1+u)^4


gauss = st.tuples(st.integers(-20, 20), st.integers(-20, 20)).map(EX.coerce)
poly = st.lists(gauss, min_size=1, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(poly)
    assume(any(num))
    den = draw(poly)
    assume(any(den))
    return RatFuncU(tuple(num), tuple(den), draw(st.integers(-3, 3)))


# -- backends -----------------------------------------------------------------


def test_exact_coercions():
    assert EX.coerce("3/4") == EX.coerce(Fraction(3, 4))
    assert EX.coerce(["1/2", "-1"]) == EX.coerce([Fraction(1, 2), -1])
    with pytest.raises(TypeError):
        EX.coerce(0.5)


def test_exact_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        EX.one / EX.zero


def test_exact_sqrt_requires_square():
    assert EX.sqrt(9) == EX.coerce(3)
    assert EX.sqrt("4/25") == EX.coerce("2/5")
    with pytest.raises(InvalidParameters):
        EX.sqrt(2)


def test_exact_roots_of_unity():
    assert EX.root_of_unity(1, 4) == EX.coerce([0, 1])
    assert EX.root_of_unity(2, 4) == EX.coerce(-1)
    with pytest.raises(InvalidParameters):
        EX.root_of_unity(1, 3)


def test_json_round_trip_both_backends():
    for x in (EX.coerce("-7/3"), EX.coerce(["1/5", "2"])):
        assert EX.from_json(EX.to_json(x)) == x
    z = complex(0.1, -1 / 3)
    assert FL.from_json(FL.to_json(z)) == z


def test_extended_precision_round_trip():
    bk = get_backend("float", 120)
    with bk.context():
        x = bk.sqrt(2)
        back = bk.from_json(bk.to_json(x))
        assert abs(back - x) < 2.0**-110


def test_unknown_backend():
    with pytest.raises(InvalidParameters):
        get_backend("interval")


# -- rational functions ---------------------------------------------------------


def test_rf_eval_examples():
    assert rf_eval(RatFuncU.constant(ONE), ONE) == ONE
    assert rf_eval(F_BINOM, ONE) == EX.coerce(16)
    with pytest.raises(PoleAtPoint):
        rf_eval(rf((1,), (1, -1)), ONE)


def test_rf_eval_negative_shift_at_zero_is_a_pole():
    with pytest.raises(PoleAtPoint):
        rf_eval(F_BINOM, EX.zero)


def test_log_derivative_examples():
    assert log_derivative_power(RatFuncU.constant(ONE), 3).is_zero()
    assert rf_eval(log_derivative_power(F_BINOM, 2), ONE) == EX.coerce(16)
    assert rf_eval(log_derivative_power(F_BINOM, 1), ONE) == EX.zero


def test_log_derivative_matches_cosh_closed_form():
    # f(e^{-x}) = 16 cosh^4(x/2); its 4th derivative at 0 is 16 * 7/4 = 28 (series of cosh^4)
    import sympy as sp

    x = sp.symbols("x")
    expected = sp.diff(16 * sp.cosh(x / 2) ** 4, x, 4).subs(x, 0)
    assert rf_eval(log_derivative_power(F_BINOM, 4), ONE) == EX.coerce(int(expected))


def test_canonical_form():
    f = rf((0, 0, 2, 2), (0, 4))  # (2u^2 + 2u^3) / (4u)
    assert f.shift == 1
    assert f.den == (ONE,)
    assert f == rf(("1/2", "1/2"), shift=1)


def test_immutable():
    with pytest.raises(AttributeError):
        F_BINOM.shift = 3


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RatFuncU.zero(ONE)
    assert (f / g) * g == f


@given(ratfuncs(), ratfuncs())
def test_leibniz(f, g):
    lhs = log_derivative_power(f * g, 1)
    rhs = log_derivative_power(f, 1) * g + f * log_derivative_power(g, 1)
    assert lhs == rhs


@given(ratfuncs(), st.integers(0, 4))
def test_log_derivative_iterates(f, r):
    once = f
    for _ in range(r):
        once = log_derivative_power(once, 1)
    assert log_derivative_power(f, r) == once


@given(ratfuncs(), st.integers(0, 5))
def test_symmetrized_has_vanishing_odd_derivatives(f, r):
    sym = f * f.invert_variable()
    assert sym.is_symmetric()
    assume(r % 2 == 1)
    try:
        val = rf_eval(log_derivative_power(sym, r), ONE)
    except PoleAtPoint:
        assume(False)
    assert val == EX.zero


@given(ratfuncs())
def test_invert_variable_is_involution(f):
    assert f.invert_variable().invert_variable() == f


@given(ratfuncs(), gauss)
def test_float_agrees_with_exact(f, u0):
    assume(u0)
    try:
        exact = EX.to_complex(rf_eval(log_derivative_power(f, 2), u0))
    except PoleAtPoint:
        assume(False)
    ff = RatFuncU(tuple(EX.to_complex(c) for c in f.num), tuple(EX.to_complex(c) for c in f.den), f.shift)
    approx = rf_eval(log_derivative_power(ff, 2), EX.to_complex(u0))
    # relative at unit scale: exact zeros arise from cancellation
    assert abs(approx - exact) <= 1e-12 * max(abs(exact), 1.0)
