"""Assembly and verification of the scalar identities of the Fock model.

Every identity compares two independently assembled scalars:

* ``kolyvagin_norm_check`` -- the omega-norm of ``z_r`` against
  ``beta * (ln q)^(-r) (d/ds)^r L~(1/2)``.
* ``dual_relation_check`` -- the cycle class of the dual system against a
  character/root-number multiple of ``z_r``.
* ``main_identity_check`` -- the intersection pairing of ``z_r`` with the dual
  class against the normalized derivative over the two adjoint residues.
* ``graded_dimension_check`` -- two evaluation routes of the adjoint residue
  scalar plus the bi-graded dimension count of the localized symmetric algebra.
* ``nondegeneracy_check`` -- the Gram determinant of the intersection pairing.

All factors of ``ln q`` cancel before evaluation, so none is ever computed.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cycles import (
    CycleTensor,
    EpsilonPattern,
    epsilon_patterns,
    omega_dual_pairing,
    omega_pairing_total,
    total_cycle_class,
    total_dual_cycle_class,
)
from .errors import InvalidParameters, OddR, PatternMismatch, ZeroResidue
from .lfun import LocalSystemH1, central_derivative, residue_scalar, root_number
from .scalars import ExactBackend, FloatBackend, get_backend
from .superclifford import (
    FockModule,
    OmegaForm,
    localized_sym_dimensions,
    lowest_weight_eigenvalue,
    sym_algebra_trace,
    sym_power_dimensions,
)

__all__ = [
    "PeriodSpec",
    "VerificationReport",
    "beta_sigma",
    "kolyvagin_norm_check",
    "dual_relation_check",
    "intersection_dual_pairing",
    "main_identity_check",
    "graded_dimension_check",
    "intersection_gram_matrix",
    "exact_determinant",
    "nondegeneracy_check",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-8
# dense Gram matrices beyond this side length are refused
MAX_GRAM_DIM = 1024


def adjoint_count(n: int, g: int) -> int:
    return 2 * n * n * (g - 1) + 2


@dataclass(frozen=True)
class PeriodSpec:
    """Input datum for one pair ``(sigma_n, sigma_{n-1})``.

    ``chi_n_half`` and ``chi_n1_half`` are the Hecke character values of
    ``det sigma_n`` and ``det sigma_{n-1}`` at ``Omega^(1/2)``.  With
    ``check_counts=False`` the cardinality constraints tied to ``(n, g)`` are
    lifted so the algebra can be exercised at small even sizes; the
    self-duality of the adjoint multisets is always enforced.
    """

    q: object
    n: int
    g: int
    h1_alphas: tuple
    chi_n_half: object
    chi_n1_half: object
    adjoint_n_alphas: tuple
    adjoint_n1_alphas: tuple
    backend: ExactBackend | FloatBackend = field(default_factory=ExactBackend)
    check_counts: bool = True
    self_dual_tol: float = 1e-9

    def __post_init__(self):
        bk = self.backend
        for name in ("h1_alphas", "adjoint_n_alphas", "adjoint_n1_alphas"):
            object.__setattr__(self, name, tuple(bk.coerce(a) for a in getattr(self, name)))
        object.__setattr__(self, "q", bk.coerce(self.q))
        object.__setattr__(self, "chi_n_half", bk.coerce(self.chi_n_half))
        object.__setattr__(self, "chi_n1_half", bk.coerce(self.chi_n1_half))
        if self.n < 1 or self.g < 0:
            raise InvalidParameters("need n >= 1 and g >= 0")
        if not self.chi_n_half or not self.chi_n1_half:
            raise InvalidParameters("character values must be nonzero")
        if len(self.h1_alphas) % 2:
            raise InvalidParameters("the H^1 multiset must have even size")
        if self.check_counts:
            expected = {
                "h1_alphas": LocalSystemH1.expected_count(self.n, self.g),
                "adjoint_n_alphas": adjoint_count(self.n, self.g),
                "adjoint_n1_alphas": adjoint_count(self.n - 1, self.g),
            }
            for name, cnt in expected.items():
                if len(getattr(self, name)) != cnt:
                    raise InvalidParameters(f"{name}: expected {cnt} eigenvalues, got {len(getattr(self, name))}")
        for name in ("adjoint_n_alphas", "adjoint_n1_alphas"):
            if not _is_self_dual(getattr(self, name), self.q, bk, self.self_dual_tol):
                raise InvalidParameters(f"{name} is not closed under alpha -> q/alpha")

    # -- derived data ------------------------------------------------------
    @property
    def D(self) -> int:
        return len(self.h1_alphas)

    @property
    def sign_n(self) -> int:
        return -1 if (self.n - 1) % 2 else 1

    def local_system(self) -> LocalSystemH1:
        return LocalSystemH1(self.q, self.g, self.n, self.h1_alphas, self.backend, check_counts=False)

    @property
    def b(self) -> tuple:
        return self.local_system().normalized()

    @property
    def epsilon(self):
        return root_number(self.local_system().h1(), self.q)

    @property
    def lambda0(self):
        return lowest_weight_eigenvalue(self.q, self.n, self.g, self.chi_n1_half, self.chi_n_half, self.backend)

    @property
    def lambda0_dual(self):
        """Lowest-weight eigenvalue of the dual system: characters inverted."""
        one = self.backend.one
        return lowest_weight_eigenvalue(
            self.q, self.n, self.g, one / self.chi_n1_half, one / self.chi_n_half, self.backend
        )

    def fock_module(self) -> FockModule:
        return FockModule(self.D, self.b, self.lambda0, self.sign_n, self.backend)

    def dual_fock_module(self) -> FockModule:
        return self.fock_module().dual(self.lambda0_dual)

    def omega_form(self) -> OmegaForm:
        return OmegaForm(self.D, self.sign_n)

    def chi_omega(self, which: str):
        c = self.chi_n_half if which == "n" else self.chi_n1_half
        return c * c

    def residue_n(self):
        return residue_scalar(self.adjoint_n_alphas, self.q, self.backend)

    def residue_n1(self):
        return residue_scalar(self.adjoint_n1_alphas, self.q, self.backend)

    def dual(self) -> "PeriodSpec":
        """The spec of ``sigma^*``: H^1 eigenvalues ``q/alpha``, characters inverted."""
        one = self.backend.one
        return PeriodSpec(
            self.q, self.n, self.g, tuple(self.q / a for a in self.h1_alphas),
            one / self.chi_n_half, one / self.chi_n1_half,
            self.adjoint_n_alphas, self.adjoint_n1_alphas,
            self.backend, self.check_counts, self.self_dual_tol,
        )


def _is_self_dual(alphas: Sequence, q, backend, tol: float) -> bool:
    pool = list(alphas)
    while pool:
        a = pool.pop()
        target = q / a
        for k, c in enumerate(pool + [a]):
            if backend.is_exact:
                hit = c == target
            else:
                hit = backend.magnitude(c - target) <= tol * max(1.0, backend.magnitude(target))
            if hit:
                if k < len(pool):
                    pool.pop(k)
                break
        else:
            return False
    return True


@dataclass
class VerificationReport:
    identity: str
    r: int | None
    lhs: object
    rhs: object
    abs_err: float
    rel_err: float
    backend: str
    passed: bool
    wall_time: float = 0.0
    tol: float | None = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        rtxt = "-" if self.r is None else str(self.r)
        return (f"{status} {self.identity} r={rtxt} lhs={self.lhs} rhs={self.rhs} "
                f"abs_err={self.abs_err!r} rel_err={self.rel_err!r} [{self.backend}]")


def _compare(name: str, r, lhs, rhs, backend, tol, t0, **details) -> VerificationReport:
    diff = backend.magnitude(lhs - rhs)
    scale = max(backend.magnitude(lhs), backend.magnitude(rhs))
    rel = diff / scale if scale else (0.0 if diff == 0 else float("inf"))
    if backend.is_exact:
        passed = lhs == rhs
        tol = 0.0
    else:
        tol = DEFAULT_TOL if tol is None else tol
        passed = diff <= tol * scale
    ok = details.pop("extra_ok", True)
    return VerificationReport(name, r, lhs, rhs, diff, rel, backend.name, bool(passed and ok),
                              time.perf_counter() - t0, tol, details)


def beta_sigma(spec: PeriodSpec, r: int):
    """``(-1)^(r/2) q^(-n^2 (g-1)) chi_{n-1}(Omega)^(-n) chi_n(Omega)^(-n+1) epsilon``."""
    if r % 2:
        raise OddR("beta is defined for even r only")
    bk = spec.backend
    one = bk.one
    n, g = spec.n, spec.g
    val = _pow(spec.q, -(n * n) * (g - 1), one)
    val = val * _pow(spec.chi_omega("n1"), -n, one) * _pow(spec.chi_omega("n"), 1 - n, one) * spec.epsilon
    return -val if (r // 2) % 2 else val


def _pow(x, k: int, one):
    return x**k if k >= 0 else one / x ** (-k)


def kolyvagin_norm_check(spec: PeriodSpec, r: int, tol: float | None = None) -> VerificationReport:
    """omega-norm of ``z_r`` against ``beta (ln q)^(-r) (d/ds)^r L~ |_{1/2}``."""
    t0 = time.perf_counter()
    bk = spec.backend
    with bk.context():
        if r % 2:
            return _compare("kolyvagin", r, bk.zero, bk.zero, bk, tol, t0, note="no balanced patterns")
        z = total_cycle_class(spec.fock_module(), r)
        lhs = bk.coerce(0) + omega_pairing_total(z, z, spec.omega_form())
        rhs = beta_sigma(spec, r) * central_derivative(spec.local_system(), r)
        return _compare("kolyvagin", r, lhs, rhs, bk, tol, t0)


def dual_relation_scalar(spec: PeriodSpec):
    """``chi_{n-1}(Omega)^n chi_n(Omega)^(n-1) / epsilon``."""
    one = spec.backend.one
    n = spec.n
    return _pow(spec.chi_omega("n1"), n, one) * _pow(spec.chi_omega("n"), n - 1, one) / spec.epsilon


def dual_relation_check(spec: PeriodSpec, r: int, tol: float | None = None) -> VerificationReport:
    """Componentwise: dual-system class against the scalar multiple of ``z_r``.

    ``lhs``/``rhs`` are the coefficients where the discrepancy is largest.
    """
    t0 = time.perf_counter()
    bk = spec.backend
    with bk.context():
        c = dual_relation_scalar(spec)
        z = total_cycle_class(spec.fock_module(), r)
        zd = total_dual_cycle_class(spec.dual_fock_module(), r)
        worst = (bk.zero, bk.zero, -1.0)
        ok = True
        ncoef = 0
        for p in epsilon_patterns(r):
            keys = sorted(set(z[p].coeffs) | set(zd[p].coeffs))
            for k in keys:
                ncoef += 1
                a, b = zd[p][k], z[p][k] * c
                diff = bk.magnitude(a - b)
                if bk.is_exact:
                    ok = ok and a == b
                else:
                    ok = ok and diff <= (DEFAULT_TOL if tol is None else tol) * max(bk.magnitude(a), bk.magnitude(b))
                if diff > worst[2]:
                    worst = (a, b, diff)
        rep = _compare("dual", r, worst[0], worst[1], bk, tol, t0, coefficients=ncoef, extra_ok=ok)
        return rep


def intersection_dual_pairing(spec: PeriodSpec, z, zp, r: int | None = None):
    """``(-1)^(r/2) omega(z, z') / (R_n R_{n-1})`` with ``R`` the residue scalars.

    ``z``/``zp`` are either complementary :class:`CycleTensor` components or
    full pattern sums.
    """
    bk = spec.backend
    rn, rn1 = spec.residue_n(), spec.residue_n1()
    if not rn or not rn1:
        raise ZeroResidue("an adjoint residue scalar vanishes")
    if isinstance(z, CycleTensor):
        if not isinstance(zp, CycleTensor):
            raise PatternMismatch("mixed tensor and pattern-sum arguments")
        r = z.r
        val = omega_dual_pairing(z, zp, OmegaForm(z.D, spec.sign_n))
    else:
        if r is None:
            r = next(iter(z)).r if z else 0
        val = bk.coerce(0) + omega_pairing_total(z, zp, spec.omega_form())
    if r % 2:
        return bk.zero
    val = val / (rn * rn1)
    return -val if (r // 2) % 2 else val


def main_identity_check(spec: PeriodSpec, r: int, tol: float | None = None) -> VerificationReport:
    """Sum over patterns of the intersection pairing of ``z_r`` with the dual
    class, against ``q^((n-1)^2 (g-1)) L~^(r)(1/2) / (Res L~_n  Res L~_{n-1})``."""
    t0 = time.perf_counter()
    bk = spec.backend
    with bk.context():
        if r % 2:
            return _compare("main", r, bk.zero, bk.zero, bk, tol, t0, note="no balanced patterns")
        z = total_cycle_class(spec.fock_module(), r)
        zd = total_dual_cycle_class(spec.dual_fock_module(), r)
        lhs = intersection_dual_pairing(spec, z, zd, r)
        n, g, q = spec.n, spec.g, spec.q
        one = bk.one
        res_n = _pow(q, n * n * (g - 1), one) * spec.residue_n()
        res_n1 = _pow(q, (n - 1) ** 2 * (g - 1), one) * spec.residue_n1()
        rhs = _pow(q, (n - 1) ** 2 * (g - 1), one) * central_derivative(spec.local_system(), r) / (res_n * res_n1)
        return _compare("main", r, lhs, rhs, bk, tol, t0)


def graded_dimension_check(spec: PeriodSpec, tol: float | None = None) -> VerificationReport:
    """Frobenius trace on the symmetric algebra versus the residue scalar, and
    the stable bi-graded dimensions of ``Sym^k`` versus the localized series."""
    t0 = time.perf_counter()
    bk = spec.backend
    with bk.context():
        lhs = sym_algebra_trace(spec.adjoint_n_alphas, spec.q, bk)
        rhs = spec.residue_n()
        n_odd = len(spec.adjoint_n_alphas)
        depth = n_odd + 2
        stable = localized_sym_dimensions(n_odd, depth)
        dims_ok = True
        for m in range(depth + 1):
            # Sym^k agrees with the localized count in degree -m once k >= m
            for k in (m, m + 1, m + 3):
                if sym_power_dimensions(n_odd, k).get(-m, 0) != stable[-m]:
                    dims_ok = False
        return _compare("graded", None, lhs, rhs, bk, tol, t0, dimensions_ok=dims_ok, extra_ok=dims_ok)


# ---------------------------------------------------------------------------
# nondegeneracy


def intersection_gram_matrix(spec: PeriodSpec, pattern: EpsilonPattern, D: int | None = None):
    """Gram matrix of the intersection pairing between the coordinate
    functionals on ``L^eps`` (rows) and on ``L^{-eps}`` (columns), both in
    lexicographic index order.  ``D`` defaults to ``spec.D``."""
    import itertools

    bk = spec.backend
    D = spec.D if D is None else D
    basis = list(itertools.product(range(D), repeat=pattern.r))
    zero = bk.zero
    one = bk.one

    def delta(p, idx):
        return CycleTensor(D, p, {idx: one}, zero)

    rows = []
    for x in basis:
        zx = delta(pattern, x)
        rows.append([intersection_dual_pairing(spec, zx, delta(-pattern, y)) for y in basis])
    return rows


def exact_determinant(rows: Sequence[Sequence], backend) -> object:
    """Gaussian elimination over the backend's field, skipping zero entries."""
    n = len(rows)
    m = [{j: v for j, v in enumerate(row) if v} for row in rows]
    det = backend.one
    for col in range(n):
        pivot = None
        best = -1.0
        for i in range(col, n):
            v = m[i].get(col)
            if v:
                if backend.is_exact:
                    pivot = i
                    break
                if backend.magnitude(v) > best:
                    pivot, best = i, backend.magnitude(v)
        if pivot is None:
            return backend.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        prow = m[col]
        pv = prow[col]
        det = det * pv
        for i in range(col + 1, n):
            v = m[i].get(col)
            if not v:
                continue
            f = v / pv
            row = m[i]
            for j, a in prow.items():
                nv = row.get(j, backend.zero) - f * a
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return det


def nondegeneracy_check(spec: PeriodSpec, r: int, D: int | None = None, tol: float | None = None) -> VerificationReport:
    """Gram determinant of the intersection pairing on one pattern block
    against ``(R_n R_{n-1})^(-D^r)``, and its invertibility."""
    t0 = time.perf_counter()
    bk = spec.backend
    with bk.context():
        if r % 2:
            return _compare("nondegeneracy", r, bk.one, bk.one, bk, tol, t0, note="no balanced patterns")
        D = spec.D if D is None else D
        if D**r > MAX_GRAM_DIM:
            raise InvalidParameters(f"Gram matrix of size {D**r} exceeds the limit {MAX_GRAM_DIM}")
        pattern = epsilon_patterns(r)[0]
        det = exact_determinant(intersection_gram_matrix(spec, pattern, D), bk)
        norm = spec.residue_n() * spec.residue_n1()
        predicted = bk.one / _pow(norm, D**r, bk.one)
        return _compare("nondegeneracy", r, det, predicted, bk, tol, t0, D=D, invertible=bool(det),
                        extra_ok=bool(det))
