"""Scalar backends and rational functions in ``u = q^(1/2 - s)``.

Two backends share one duck-typed arithmetic surface:

* ``ExactBackend`` -- Gaussian rationals ``Q(i)`` (via sympy's ``QQ_I``), which
  contain ``Q`` and the fourth roots of unity.  Every identity is checked by
  plain equality.
* ``FloatBackend`` -- complex numbers, Python ``complex`` at double precision
  or ``mpmath.mpc`` when more bits are requested.

All derivatives in ``s`` at the central point are realized as algebraic
operations at ``u = 1``: under ``u = q^(1/2-s)`` one has
``d/ds = -(ln q) u d/du``, so ``(ln q)^(-r) (d/ds)^r`` is ``(-u d/du)^r``.
"""
from __future__ import annotations

import cmath
import contextlib
import math
from fractions import Fraction
from numbers import Number
from typing import Any, Iterable, Sequence

import mpmath
from sympy.polys.domains import QQ_I

from .errors import InvalidParameters, PoleAtPoint

__all__ = [
    "ExactBackend",
    "FloatBackend",
    "get_backend",
    "RatFuncU",
    "rf_eval",
    "log_derivative_power",
]

_GaussianRational = type(QQ_I.one)


def _parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class ExactBackend:
    """Exact arithmetic over the Gaussian rationals."""

    name = "exact"
    is_exact = True

    def __init__(self) -> None:
        self.zero = QQ_I.zero
        self.one = QQ_I.one

    def __repr__(self) -> str:
        return "ExactBackend()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExactBackend)

    def __hash__(self) -> int:
        return hash("exact")

    def coerce(self, x: Any):
        if isinstance(x, _GaussianRational):
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, (int, Fraction)):
            return QQ_I(x, 0)
        if isinstance(x, str):
            return QQ_I(_parse_rational(x), 0)
        if isinstance(x, (list, tuple)) and len(x) == 2:
            re, im = (_parse_rational(v) if isinstance(v, str) else Fraction(v) for v in x)
            return QQ_I(re, im)
        if isinstance(x, float) or isinstance(x, complex):
            raise TypeError(f"exact backend refuses inexact value {x!r}")
        try:
            return QQ_I(Fraction(x), 0)
        except (TypeError, ValueError) as exc:
            raise TypeError(f"cannot coerce {x!r} to an exact scalar") from exc

    def parts(self, x) -> tuple[Fraction, Fraction]:
        x = self.coerce(x)
        return Fraction(int(x.x.numerator), int(x.x.denominator)), Fraction(
            int(x.y.numerator), int(x.y.denominator)
        )

    def sqrt(self, x):
        """Square root of a nonnegative rational perfect square."""
        re, im = self.parts(x)
        if im != 0 or re < 0:
            raise InvalidParameters(f"exact square root needs a nonnegative rational, got {x}")
        p, d = re.numerator, re.denominator
        rp, rd = math.isqrt(p), math.isqrt(d)
        if rp * rp != p or rd * rd != d:
            raise InvalidParameters(f"{re} is not a rational square; use a square q in the exact backend")
        return QQ_I(Fraction(rp, rd), 0)

    def root_of_unity(self, k: int, m: int):
        """exp(2 pi i k/m); only orders dividing 4 are representable."""
        frac = Fraction(k, m) % 1
        table = {Fraction(0): (1, 0), Fraction(1, 4): (0, 1), Fraction(1, 2): (-1, 0), Fraction(3, 4): (0, -1)}
        if frac not in table:
            raise InvalidParameters(f"root of unity of order {frac.denominator} is not in Q(i)")
        return QQ_I(*table[frac])

    def magnitude(self, x) -> float:
        re, im = self.parts(x)
        return math.hypot(float(re), float(im))

    def equal(self, a, b, tol: float | None = None) -> bool:
        return self.coerce(a) == self.coerce(b)

    def to_complex(self, x) -> complex:
        re, im = self.parts(x)
        return complex(float(re), float(im))

    def to_json(self, x):
        re, im = self.parts(x)
        if im == 0:
            return str(re)
        return [str(re), str(im)]

    def from_json(self, obj):
        return self.coerce(obj)

    def context(self):
        return contextlib.nullcontext()


class FloatBackend:
    """Complex floating point; ``precision`` is the mantissa width in bits.

    At the default 53 bits values are Python ``complex``; above that they are
    ``mpmath.mpc`` and arithmetic must run inside :meth:`context`.
    """

    name = "float"
    is_exact = False

    def __init__(self, precision: int = 53) -> None:
        if precision < 2:
            raise InvalidParameters("precision must be at least 2 bits")
        self.precision = int(precision)
        self.extended = self.precision > 53
        self.zero = self.coerce(0)
        self.one = self.coerce(1)

    def __repr__(self) -> str:
        return f"FloatBackend(precision={self.precision})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatBackend) and other.precision == self.precision

    def __hash__(self) -> int:
        return hash(("float", self.precision))

    def context(self):
        if self.extended:
            return mpmath.workprec(self.precision)
        return contextlib.nullcontext()

    def coerce(self, x: Any):
        if isinstance(x, _GaussianRational):
            re, im = ExactBackend().parts(x)
            x = (re, im)
        if isinstance(x, str):
            text = x.strip()
            try:
                x = Fraction(text)
            except ValueError:
                x = complex(text.replace("i", "j").replace("I", "j"))
        if isinstance(x, (list, tuple)) and len(x) == 2:
            re, im = (Fraction(v) if isinstance(v, str) and "/" in v else v for v in x)
            if self.extended:
                with self.context():
                    return mpmath.mpc(_to_mpf(re), _to_mpf(im))
            return complex(float(re), float(im))
        if self.extended:
            with self.context():
                if isinstance(x, Fraction):
                    return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
                return mpmath.mpc(x)
        if isinstance(x, (mpmath.mpc, mpmath.mpf)):
            return complex(x)
        if isinstance(x, Number):
            return complex(x)
        raise TypeError(f"cannot coerce {x!r} to a float scalar")

    def sqrt(self, x):
        x = self.coerce(x)
        if self.extended:
            with self.context():
                return mpmath.sqrt(x)
        return cmath.sqrt(x)

    def root_of_unity(self, k: int, m: int):
        return self.unit_circle(Fraction(k, m))

    def unit_circle(self, t) -> Any:
        """exp(2 pi i t)."""
        if self.extended:
            with self.context():
                return mpmath.expjpi(2 * _to_mpf(t))
        return cmath.exp(2j * math.pi * float(t))

    def magnitude(self, x) -> float:
        return float(abs(x))

    def equal(self, a, b, tol: float = 1e-8) -> bool:
        diff = self.magnitude(a - b)
        return diff <= tol * max(self.magnitude(a), self.magnitude(b))

    def to_complex(self, x) -> complex:
        return complex(x)

    def to_json(self, x):
        if self.extended:
            with self.context():
                dps = mpmath.mp.dps
                return [mpmath.nstr(x.real, dps + 3), mpmath.nstr(x.imag, dps + 3)]
        x = complex(x)
        return [x.real, x.imag]

    def from_json(self, obj):
        return self.coerce(obj)


def _to_mpf(v) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def get_backend(name: str = "exact", precision: int = 53):
    if name == "exact":
        return ExactBackend()
    if name == "float":
        return FloatBackend(precision)
    raise InvalidParameters(f"unknown backend {name!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials, ascending coefficient tuples


def _strip(p: Sequence) -> tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _padd(a: Sequence, b: Sequence) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return _strip(out)


def _pneg(a: Sequence) -> tuple:
    return tuple(-c for c in a)


def _pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _strip(out)


def _pscale(a: Sequence, c) -> tuple:
    return _strip(x * c for x in a)


def _pshift(a: Sequence, k: int) -> tuple:
    """Multiply by u^k, k >= 0."""
    if not a:
        return ()
    return tuple([a[0] * 0] * k) + tuple(a)


def _ptheta(a: Sequence) -> tuple:
    """u d/du."""
    return _strip(c * k for k, c in enumerate(a))


def _peval(a: Sequence, x):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    return acc


class RatFuncU:
    """``u^shift * num(u) / den(u)`` with ascending coefficient tuples.

    The canonical form has ``num`` and ``den`` free of factors of ``u`` (so
    all powers of ``u`` live in ``shift``) and a monic ``den``.  Values are
    immutable.
    """

    __slots__ = ("num", "den", "shift")

    def __init__(self, num: Iterable, den: Iterable | None = None, shift: int = 0) -> None:
        num = _strip(num)
        den = _strip(den) if den is not None else None
        if den is None:
            if not num:
                raise ValueError("RatFuncU() needs a coefficient to fix the ring; use RatFuncU.zero(one)")
            one = num[-1] / num[-1]
            den = (one,)
        if not den:
            raise ZeroDivisionError("denominator is the zero polynomial")
        lead = den[-1]
        one = lead / lead
        if not num:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", (one,))
            object.__setattr__(self, "shift", 0)
            return
        k = 0
        while not num[k]:
            k += 1
        j = 0
        while not den[j]:
            j += 1
        num = tuple(c / lead for c in num[k:])
        den = tuple(c / lead for c in den[j:])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "shift", int(shift) + k - j)

    def __setattr__(self, name, value):
        raise AttributeError("RatFuncU is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c) -> "RatFuncU":
        if not c:
            return cls.zero(c + 1)
        return cls((c,))

    @classmethod
    def zero(cls, one) -> "RatFuncU":
        return cls((), (one,))

    @classmethod
    def monomial(cls, one, m: int) -> "RatFuncU":
        return cls((one,), (one,), m)

    @property
    def _one(self):
        return self.den[-1]

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial_in_u_and_inverse(self) -> bool:
        return len(self.den) == 1

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "RatFuncU":
        if isinstance(other, RatFuncU):
            return other
        return RatFuncU.constant(self._one * other)

    def __add__(self, other) -> "RatFuncU":
        other = self._lift(other)
        m = min(self.shift, other.shift)
        a = _pshift(self.num, self.shift - m)
        b = _pshift(other.num, other.shift - m)
        if self.den == other.den:
            return RatFuncU(_padd(a, b), self.den, m)
        num = _padd(_pmul(a, other.den), _pmul(b, self.den))
        return RatFuncU(num, _pmul(self.den, other.den), m)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncU":
        return RatFuncU(_pneg(self.num), self.den, self.shift) if self.num else self

    def __sub__(self, other) -> "RatFuncU":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFuncU":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFuncU":
        other = self._lift(other)
        if self.den == other.den and len(self.den) == 1:
            den = self.den
        else:
            den = _pmul(self.den, other.den)
        return RatFuncU(_pmul(self.num, other.num), den, self.shift + other.shift)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFuncU":
        if not self.num:
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RatFuncU(self.den, self.num, -self.shift)

    def __truediv__(self, other) -> "RatFuncU":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other) -> "RatFuncU":
        return self._lift(other) * self.reciprocal()

    def __pow__(self, k: int) -> "RatFuncU":
        if k < 0:
            return self.reciprocal() ** (-k)
        out = RatFuncU.constant(self._one)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _cross(self, other: "RatFuncU") -> tuple[tuple, tuple]:
        m = min(self.shift, other.shift)
        a = _pmul(_pshift(self.num, self.shift - m), other.den)
        b = _pmul(_pshift(other.num, other.shift - m), self.den)
        return a, b

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFuncU):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        a, b = self._cross(other)
        return not _padd(a, _pneg(b))

    def __hash__(self):
        return hash((self.shift, len(self.num), len(self.den)))

    def isclose(self, other: "RatFuncU", rel_tol: float = 1e-12) -> bool:
        a, b = self._cross(self._lift(other))
        n = max(len(a), len(b))
        a = list(a) + [0] * (n - len(a))
        b = list(b) + [0] * (n - len(b))
        scale = max([abs(c) for c in a + b] + [0.0])
        return all(abs(x - y) <= rel_tol * scale for x, y in zip(a, b))

    # -- structure --------------------------------------------------------
    def invert_variable(self) -> "RatFuncU":
        """The rational function ``u -> f(1/u)``."""
        if not self.num:
            return self
        shift = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        return RatFuncU(tuple(reversed(self.num)), tuple(reversed(self.den)), shift)

    def is_symmetric(self, rel_tol: float | None = None) -> bool:
        """Whether ``f(u) == f(1/u)``; exact unless ``rel_tol`` is given."""
        inv = self.invert_variable()
        if rel_tol is None:
            return self == inv
        return self.isclose(inv, rel_tol)

    def __call__(self, u0):
        return rf_eval(self, u0)

    def __repr__(self) -> str:
        return f"RatFuncU(num={self.num!r}, den={self.den!r}, shift={self.shift})"

    def pretty(self, fmt=str) -> str:
        def poly(p):
            terms = []
            for k, c in enumerate(p):
                if not c:
                    continue
                s = fmt(c)
                terms.append(s if k == 0 else f"({s})*u^{k}")
            return " + ".join(terms) or "0"

        body = poly(self.num)
        if len(self.den) > 1 or self.den != (self._one,):
            body = f"({body}) / ({poly(self.den)})"
        if self.shift:
            body = f"u^{self.shift} * ({body})"
        return body


def rf_eval(f: RatFuncU, u0):
    """Evaluate ``f`` at ``u0``; raises :class:`PoleAtPoint` on a pole."""
    d = _peval(f.den, u0)
    if not d:
        raise PoleAtPoint(f"denominator vanishes at u = {u0}")
    if not f.num:
        return d * 0
    if not u0 and f.shift < 0:
        raise PoleAtPoint("u^m with m < 0 at u = 0")
    value = _peval(f.num, u0)
    if f.shift > 0:
        value = value * u0**f.shift
    elif f.shift < 0:
        value = value / u0 ** (-f.shift)
    return value / d


def log_derivative_power(f: RatFuncU, r: int) -> RatFuncU:
    """``(-u d/du)^r f``, whose value at ``u = 1`` is ``(ln q)^(-r) (d/ds)^r f`` at ``s = 1/2``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0 or not f.num:
        return f
    m = f.shift
    a = f.num
    if len(f.den) == 1:
        for _ in range(r):
            a = _pneg(_padd(_pscale(a, m), _ptheta(a)))
        return RatFuncU(a, f.den, m)
    # u^m A / den^j  ->  u^m [ (m A + u A') den - j A (u den') ] / den^(j+1)
    den = f.den
    tden = _ptheta(den)
    for j in range(1, r + 1):
        lead = _pmul(_padd(_pscale(a, m), _ptheta(a)), den)
        corr = _pscale(_pmul(a, tden), j)
        a = _pneg(_padd(lead, _pneg(corr)))
    full = (f._one,)
    for _ in range(r + 1):
        full = _pmul(full, den)
    return RatFuncU(a, full, m)
