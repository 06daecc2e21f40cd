"""The odd space L, the form on M = L + L*, and the Clifford action on the
exterior-algebra Fock module.

Basis conventions (0-based): ``e_0..e_{D-1}`` span L, ``f_0..f_{D-1}`` the dual
basis of L*.  A Fock basis vector ``e_S`` is the wedge of ``e_s`` for ``s`` in
``S`` in increasing order, encoded as the bitmask ``sum 2^s``.  It has parity
``|S| mod 2`` and degree ``|S| - D/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DegreeOutOfRange, DivergentSeries
from .scalars import ExactBackend, FloatBackend

__all__ = [
    "OmegaForm",
    "FockModule",
    "Operator",
    "raise_op",
    "lower_op",
    "frobenius_op",
    "identity_op",
    "degree_projector",
    "anticommutator",
    "supertrace",
    "lowest_weight_eigenvalue",
    "highest_weight_eigenvalue",
    "sym_algebra_trace",
    "geometric_sum",
    "sym_power_dimensions",
    "localized_sym_dimensions",
]

# The sign (-1)^(n-1) relating the two forms sits on contraction, not on
# wedge multiplication.
LOWER_CARRIES_SIGN = True


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _below(mask: int, i: int) -> int:
    return _popcount(mask & ((1 << i) - 1))


@dataclass(frozen=True)
class OmegaForm:
    """omega_M on M = L + L*: ``omega(e_i, f_j) = omega(f_j, e_i) = delta_ij``,
    zero on L x L and L* x L*.  ``omega_MX = sign_n * omega_M``.

    Vectors of M are indexed ``0..D-1`` for ``e_i`` and ``D..2D-1`` for ``f_i``.
    """

    D: int
    sign_n: int = 1

    def gram(self, x: int, y: int) -> int:
        D = self.D
        return 1 if (x < D) != (y < D) and x % D == y % D else 0

    def gram_matrix(self) -> list[list[int]]:
        n = 2 * self.D
        return [[self.gram(x, y) for y in range(n)] for x in range(n)]

    def inverse_gram_matrix(self) -> list[list[int]]:
        # the Gram matrix is a symmetric permutation matrix, hence an involution
        return self.gram_matrix()

    def dual_partner(self, x: int) -> tuple[int, int]:
        """The unique ``y`` with ``G^{xy} != 0``, and that entry."""
        return (x + self.D if x < self.D else x - self.D), 1

    def omega(self, v: Mapping[int, object], w: Mapping[int, object]):
        return sum(
            (cv * cw for x, cv in v.items() for y, cw in w.items() if self.gram(x, y)),
            start=0,
        )

    def omega_X(self, v, w):
        return self.sign_n * self.omega(v, w)


class Operator:
    """Sparse linear operator on the Fock basis: ``cols[S] = {T: coeff}``
    means ``e_S -> sum coeff e_T``."""

    __slots__ = ("D", "cols")

    def __init__(self, D: int, cols: Mapping[int, Mapping[int, object]]):
        self.D = D
        self.cols = {s: {t: c for t, c in col.items() if c} for s, col in cols.items()}

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for s, c in vec.items():
            for t, a in self.cols.get(s, {}).items():
                out[t] = out[t] + a * c if t in out else a * c
        return {t: c for t, c in out.items() if c}

    def __call__(self, mask: int) -> dict[int, object]:
        return dict(self.cols.get(mask, {}))

    def __matmul__(self, other: "Operator") -> "Operator":
        """``self o other`` (``other`` acts first)."""
        return Operator(self.D, {s: self.apply(col) for s, col in other.cols.items()})

    def __add__(self, other: "Operator") -> "Operator":
        cols = {s: dict(col) for s, col in self.cols.items()}
        for s, col in other.cols.items():
            tgt = cols.setdefault(s, {})
            for t, c in col.items():
                tgt[t] = tgt[t] + c if t in tgt else c
        return Operator(self.D, cols)

    def __neg__(self) -> "Operator":
        return Operator(self.D, {s: {t: -c for t, c in col.items()} for s, col in self.cols.items()})

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def scaled(self, c) -> "Operator":
        return Operator(self.D, {s: {t: a * c for t, a in col.items()} for s, col in self.cols.items()})

    def inverse_diagonal(self) -> "Operator":
        out = {}
        for s, col in self.cols.items():
            if set(col) != {s}:
                raise ValueError("operator is not diagonal")
            out[s] = {s: 1 / col[s] if isinstance(col[s], (int, float)) else col[s] ** -1}
        return Operator(self.D, out)

    def is_zero(self) -> bool:
        return not any(self.cols.values())

    def entry(self, t: int, s: int, zero=0):
        return self.cols.get(s, {}).get(t, zero)


def _fock_basis(D: int) -> range:
    return range(1 << D)


@dataclass(frozen=True)
class FockModule:
    """Exterior algebra on L as a lowest-weight Clifford module.

    ``b`` are the Frobenius eigenvalues on ``e_i``, ``lambda0`` the eigenvalue
    on the vacuum ``e_{}``.
    """

    D: int
    b: tuple
    lambda0: object
    sign_n: int = 1
    backend: ExactBackend | FloatBackend = field(default_factory=ExactBackend)

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.backend.coerce(x) for x in self.b))
        object.__setattr__(self, "lambda0", self.backend.coerce(self.lambda0))
        if len(self.b) != self.D:
            raise ValueError(f"need {self.D} eigenvalues, got {len(self.b)}")
        if self.sign_n not in (1, -1):
            raise ValueError("sign_n must be +1 or -1")

    @property
    def dimension(self) -> int:
        return 1 << self.D

    def basis(self) -> range:
        return _fock_basis(self.D)

    @staticmethod
    def parity(mask: int) -> int:
        return _popcount(mask) % 2

    def degree(self, mask: int) -> int:
        if self.D % 2:
            raise DegreeOutOfRange("the degree grading needs even D")
        return _popcount(mask) - self.D // 2

    def dual(self, lambda0_dual) -> "FockModule":
        """The module of the dual system: eigenvalues ``1/b_i`` on L*."""
        one = self.backend.one
        return FockModule(self.D, tuple(one / x for x in self.b), lambda0_dual, self.sign_n, self.backend)

    def omega_form(self) -> OmegaForm:
        return OmegaForm(self.D, self.sign_n)

    def graded_dimensions(self) -> dict[int, int]:
        dims: dict[int, int] = {}
        for s in self.basis():
            d = self.degree(s)
            dims[d] = dims.get(d, 0) + 1
        return dims


def _check_index(mod: FockModule, i: int) -> None:
    if not 0 <= i < mod.D:
        raise IndexError(f"generator index {i} outside 0..{mod.D - 1}")


def raise_op(mod: FockModule, i: int) -> Operator:
    """Left wedge by ``e_i``: ``e_S -> (-1)^{#{s in S: s < i}} e_{S+i}``."""
    _check_index(mod, i)
    one = mod.backend.one
    bit = 1 << i
    cols = {}
    for s in mod.basis():
        if not s & bit:
            cols[s] = {s | bit: -one if _below(s, i) % 2 else one}
    return Operator(mod.D, cols)


def lower_op(mod: FockModule, j: int) -> Operator:
    """Contraction by ``f_j``: ``e_S -> sign_n (-1)^{#{s in S: s < j}} e_{S-j}``."""
    _check_index(mod, j)
    one = mod.backend.one
    c0 = one * mod.sign_n if LOWER_CARRIES_SIGN else one
    bit = 1 << j
    cols = {}
    for s in mod.basis():
        if s & bit:
            cols[s] = {s ^ bit: -c0 if _below(s, j) % 2 else c0}
    return Operator(mod.D, cols)


def frobenius_eigenvalue(mod: FockModule, mask: int):
    val = mod.lambda0
    for i in range(mod.D):
        if mask >> i & 1:
            val = val * mod.b[i]
    return val


def frobenius_op(mod: FockModule) -> Operator:
    """``e_S -> lambda0 prod_{i in S} b_i e_S``."""
    return Operator(mod.D, {s: {s: frobenius_eigenvalue(mod, s)} for s in mod.basis()})


def identity_op(mod: FockModule) -> Operator:
    one = mod.backend.one
    return Operator(mod.D, {s: {s: one} for s in mod.basis()})


def degree_projector(mod: FockModule, d: int) -> Operator:
    one = mod.backend.one
    return Operator(mod.D, {s: {s: one} for s in mod.basis() if mod.degree(s) == d})


def anticommutator(a: Operator, b: Operator) -> Operator:
    return a @ b + b @ a


def supertrace(mod: FockModule, op: Operator):
    """``sum_S (-1)^{|S|} <e_S, op e_S>``."""
    total = mod.backend.zero
    for s in mod.basis():
        c = op.entry(s, s)
        if c:
            total = total - c if _popcount(s) % 2 else total + c
    return total


# ---------------------------------------------------------------------------
# lowest / highest weight data


def lowest_weight_eigenvalue(q, n: int, g: int, chi_n1_half, chi_n_half, backend=None):
    """Frobenius eigenvalue on the lowest-weight line:
    ``q^(-n^2 (g-1)/2) chi_{n-1}^(-n) chi_n^(-n+1)`` (characters at Omega^(1/2))."""
    backend = backend or ExactBackend()
    root = backend.sqrt(q)
    one = backend.one
    chi_n1 = backend.coerce(chi_n1_half)
    chi_n = backend.coerce(chi_n_half)
    return _ipow(root, -(n * n) * (g - 1), one) * _ipow(chi_n1, -n, one) * _ipow(chi_n, 1 - n, one)


def highest_weight_eigenvalue(q, n: int, g: int, chi_n1_half, chi_n_half, epsilon, backend=None):
    """Eigenvalue on the top wedge: the lowest-weight value times the root number."""
    backend = backend or ExactBackend()
    return lowest_weight_eigenvalue(q, n, g, chi_n1_half, chi_n_half, backend) * backend.coerce(epsilon)


def _ipow(x, k: int, one):
    if k >= 0:
        out = one
        for _ in range(k):
            out = out * x
        return out
    return one / _ipow(x, -k, one)


# ---------------------------------------------------------------------------
# symmetric algebra of the truncated adjoint cohomology


def geometric_sum(x, backend):
    """``sum_{k >= 0} x^k``; raises :class:`DivergentSeries` for ``|x| >= 1``."""
    if backend.magnitude(x) >= 1:
        raise DivergentSeries(f"geometric series with ratio {x} diverges")
    return backend.one / (backend.one - x)


def _elementary_from_power_sums(xs: Sequence, backend) -> list:
    """``e_0..e_N`` of ``xs`` via Newton's identities."""
    N = len(xs)
    p = [None] + [sum((x**k for x in xs), start=backend.zero) for k in range(1, N + 1)]
    e = [backend.one]
    for k in range(1, N + 1):
        acc = backend.zero
        for i in range(1, k + 1):
            term = e[k - i] * p[i]
            acc = acc + term if i % 2 else acc - term
        e.append(acc / k)
    return e


def sym_algebra_trace(adjoint_alphas: Sequence, q, backend=None):
    """Graded trace of Frobenius on ``Sym`` of a super space with one even
    generator of eigenvalue ``1/q`` and odd generators of eigenvalues
    ``alpha_i / q``.

    The even part is the geometric series, the odd part the alternating sum
    of elementary symmetric functions (obtained from power sums).
    """
    backend = backend or ExactBackend()
    q = backend.coerce(q)
    one = backend.one
    if backend.magnitude(one / q) >= 1:
        raise DivergentSeries(f"|1/q| >= 1 for q = {q}")
    xs = [backend.coerce(a) / q for a in adjoint_alphas]
    e = _elementary_from_power_sums(xs, backend)
    odd = backend.zero
    for k, ek in enumerate(e):
        odd = odd - ek if k % 2 else odd + ek
    return geometric_sum(one / q, backend) * odd


def sym_power_dimensions(n_odd: int, k: int) -> dict[int, int]:
    """Cohomological-degree dimensions of ``Sym^k`` of a space with one even
    generator in degree 0, ``n_odd`` odd generators in degree -1 and one even
    generator in degree -2."""
    dims: dict[int, int] = {}
    for j in range(min(n_odd, k) + 1):
        for h2 in range(k - j + 1):
            deg = -(j + 2 * h2)
            dims[deg] = dims.get(deg, 0) + comb(n_odd, j)
    return dims


def localized_sym_dimensions(n_odd: int, max_depth: int) -> dict[int, int]:
    """Dimensions in each fixed bi-degree after inverting the degree-0
    generator: coefficients of ``(1 + t)^n_odd / (1 - t^2)`` up to ``t^max_depth``,
    reported at cohomological degree ``-m``."""
    series = [0] * (max_depth + 1)
    series[0] = 1
    for _ in range(n_odd):
        series = [series[m] + (series[m - 1] if m else 0) for m in range(max_depth + 1)]
    out = [0] * (max_depth + 1)
    for m in range(max_depth + 1):
        out[m] = series[m] + (out[m - 2] if m >= 2 else 0)
    return {-m: out[m] for m in range(max_depth + 1)}
