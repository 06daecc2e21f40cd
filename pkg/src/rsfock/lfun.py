"""L-functions of Weil local systems from Frobenius eigenvalue data.

Only cohomology concentrated in degree 1 is modelled, so every L-function
here is a polynomial in ``q^(-s)``.  With ``u = q^(1/2 - s)`` one has
``q^(-s) = q^(-1/2) u`` and the normalized eigenvalue ``b = alpha q^(-1/2)``
is the natural coordinate.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidParameters
from .scalars import ExactBackend, FloatBackend, RatFuncU, log_derivative_power, rf_eval

__all__ = [
    "FrobSpace",
    "LocalSystemH1",
    "lfunction",
    "root_number",
    "normalized_eigenvalues",
    "normalized_pair_lfunction",
    "central_derivative",
    "residue_scalar",
]


@dataclass(frozen=True)
class FrobSpace:
    """A graded piece ``H^degree`` with its multiset of Frobenius eigenvalues.

    ``parity`` defaults to ``degree mod 2``.  When ``weight`` is given the
    eigenvalues are checked for ``|alpha| = q^(weight/2)``: strictly in the
    float backend, as a warning in the exact backend.
    """

    eigenvalues: tuple
    degree: int = 1
    parity: int | None = None
    weight: int | None = None
    q: object = None
    backend: ExactBackend | FloatBackend = field(default_factory=ExactBackend)

    def __post_init__(self):
        vals = tuple(self.backend.coerce(a) for a in self.eigenvalues)
        object.__setattr__(self, "eigenvalues", vals)
        if self.parity is None:
            object.__setattr__(self, "parity", self.degree % 2)
        if any(not a for a in vals):
            raise InvalidParameters("Frobenius eigenvalues must be nonzero")
        if self.weight is not None and self.q is not None:
            self._check_weight()

    def _check_weight(self) -> None:
        target = float(abs(self.backend.to_complex(self.backend.coerce(self.q)))) ** (self.weight / 2)
        bad = [a for a in self.eigenvalues if abs(self.backend.magnitude(a) - target) > 1e-9 * target]
        if not bad:
            return
        msg = f"{len(bad)} eigenvalue(s) off the weight-{self.weight} circle |alpha| = {target:g}"
        if self.backend.is_exact:
            warnings.warn(msg, stacklevel=3)
        else:
            raise InvalidParameters(msg)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def twist(self, m: int) -> "FrobSpace":
        """Shearing by ``m``: parity flips ``m`` times, degree drops by ``m``,
        eigenvalues scale by ``q^(-m/2)``."""
        root = self.backend.sqrt(self.q)
        scale = self.backend.one / root**m if m >= 0 else root ** (-m)
        return FrobSpace(
            tuple(a * scale for a in self.eigenvalues),
            degree=self.degree - m,
            parity=(self.parity + m) % 2,
            weight=None if self.weight is None else self.weight - m,
            q=self.q,
            backend=self.backend,
        )


@dataclass(frozen=True)
class LocalSystemH1:
    """H^1 data of ``sigma_n (x) sigma_{n-1}`` with vanishing H^0 and H^2.

    ``check_counts`` enforces ``len(alphas) == 2 n (n-1) (g-1)``; fixtures that
    exercise the algebra at other even sizes switch it off.
    """

    q: object
    g: int
    n: int
    alphas: tuple
    backend: ExactBackend | FloatBackend = field(default_factory=ExactBackend)
    check_counts: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(self.backend.coerce(a) for a in self.alphas))
        if self.check_counts and len(self.alphas) != self.expected_count(self.n, self.g):
            raise InvalidParameters(
                f"expected {self.expected_count(self.n, self.g)} H^1 eigenvalues, got {len(self.alphas)}"
            )
        if any(not a for a in self.alphas):
            raise InvalidParameters("Frobenius eigenvalues must be nonzero")

    @staticmethod
    def expected_count(n: int, g: int) -> int:
        return 2 * n * (n - 1) * (g - 1)

    @property
    def D(self) -> int:
        return len(self.alphas)

    def h1(self) -> FrobSpace:
        return FrobSpace(self.alphas, degree=1, q=self.q, backend=self.backend)

    def normalized(self) -> tuple:
        return normalized_eigenvalues(self.alphas, self.q, self.backend)

    def dual(self) -> "LocalSystemH1":
        """Poincare dual: H^1 eigenvalues ``q / alpha``."""
        q = self.backend.coerce(self.q)
        return LocalSystemH1(self.q, self.g, self.n, tuple(q / a for a in self.alphas), self.backend, self.check_counts)


def normalized_eigenvalues(alphas: Sequence, q, backend=None) -> tuple:
    backend = backend or ExactBackend()
    inv_root = backend.one / backend.sqrt(q)
    return tuple(backend.coerce(a) * inv_root for a in alphas)


def lfunction(h1: FrobSpace, q) -> RatFuncU:
    """``L(sigma, s) = prod (1 - alpha_i q^(-s))`` as a polynomial in ``u``."""
    if h1.degree != 1:
        raise InvalidParameters("only H^1 data is supported")
    one = h1.backend.one
    f = RatFuncU.constant(one)
    for b in normalized_eigenvalues(h1.eigenvalues, q, h1.backend):
        f = f * RatFuncU((one, -b))
    return f


def root_number(h1: FrobSpace, q):
    """``epsilon(sigma) = det(q^(-1/2) Frob | H^1)``."""
    eps = h1.backend.one
    for b in normalized_eigenvalues(h1.eigenvalues, q, h1.backend):
        eps = eps * b
    return eps


def normalized_pair_lfunction(sys: LocalSystemH1) -> RatFuncU:
    """``L~(sigma + sigma^*, s) = u^(-D) prod (1 - b_i u)(1 - b_i^(-1) u)``.

    The dual eigenvalues are derived from ``sys`` rather than supplied, so the
    result is always invariant under ``u -> 1/u``.
    """
    one = sys.backend.one
    f = RatFuncU.monomial(one, -sys.D)
    for b in sys.normalized():
        f = f * RatFuncU((one, -(b + one / b), one))
    return f


def central_derivative(sys: LocalSystemH1, r: int, method: str = "series"):
    """``(ln q)^(-r) (d/ds)^r L~`` at ``s = 1/2``.

    ``method="series"`` writes ``x = (s - 1/2) ln q`` so that each factor of
    ``L~`` is ``2 cosh x - (b + 1/b)`` and multiplies truncated Taylor series;
    odd orders then vanish term by term and float roundoff stays at the size
    of the result.  ``method="rational"`` applies ``(-u d/du)^r`` to the
    expanded rational function and evaluates at ``u = 1``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    bk = sys.backend
    if method == "rational":
        return rf_eval(log_derivative_power(normalized_pair_lfunction(sys), r), bk.one)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    one, zero = bk.one, bk.zero
    cosh2 = [zero] * (r + 1)  # Taylor coefficients of 2 cosh x
    for k in range(0, r + 1, 2):
        cosh2[k] = one * Fraction(2, math.factorial(k))
    series = [one] + [zero] * r
    for b in sys.normalized():
        factor = list(cosh2)
        factor[0] = factor[0] - (b + one / b)
        series = [
            sum((series[i] * factor[k - i] for i in range(k + 1) if factor[k - i]), start=zero)
            for k in range(r + 1)
        ]
    return series[r] * math.factorial(r)


def residue_scalar(adjoint_alphas: Sequence, q, backend=None):
    """``(ln q) Res_{s=1} L(sigma (x) sigma^*, s) = prod(1 - alpha_i/q) / (1 - 1/q)``."""
    backend = backend or ExactBackend()
    q = backend.coerce(q)
    one = backend.one
    if q == one:
        raise ZeroDivisionError("residue scalar needs q != 1")
    num = one
    for a in adjoint_alphas:
        num = num * (one - backend.coerce(a) / q)
    return num / (one - one / q)

