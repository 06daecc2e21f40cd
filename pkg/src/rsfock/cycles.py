"""Fake special cycle classes and the induced pairing on tensor-power duals.

A cycle tensor for an epsilon pattern ``(eps_1..eps_r)`` is a functional on
``L^{eps_1} (x) ... (x) L^{eps_r}``; slot ``k`` takes ``e_i`` when
``eps_k = +1`` and ``f_i`` when ``eps_k = -1``.  Its coefficient on a basis tuple
is the supertrace of ``a(x_1) o ... o a(x_r) o Frob`` on the Fock module
(``x_r`` acts first), with ``a(e_i)`` the wedge and ``a(f_j)`` the contraction.

Coefficients are computed by regrouping the word by generator index: the
exterior algebra is a super tensor product of two-dimensional factors and a
balanced word acts factorwise by even operators, so the supertrace is a
product of 2x2 supertraces times the sign of the regrouping permutation.
:func:`cycle_coefficient_bruteforce` is the slow direct evaluation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import DegreeOutOfRange, PatternMismatch
from .superclifford import (
    FockModule,
    OmegaForm,
    degree_projector,
    frobenius_op,
    identity_op,
    lower_op,
    raise_op,
    supertrace,
)

__all__ = [
    "EpsilonPattern",
    "CycleTensor",
    "epsilon_patterns",
    "koszul_sign",
    "fake_cycle_class",
    "graded_cycle_class",
    "total_cycle_class",
    "dual_system_cycle_class",
    "total_dual_cycle_class",
    "omega_dual_pairing",
    "omega_pairing_total",
    "cycle_coefficient_bruteforce",
]


def koszul_sign(r: int) -> int:
    """Sign for pairing ``x_1..x_r`` against ``y_1..y_r`` slot by slot: each
    ``y_k`` moves past the ``r - k`` later odd ``x``'s."""
    return -1 if (r * (r - 1) // 2) % 2 else 1


@dataclass(frozen=True)
class EpsilonPattern:
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e not in (1, -1) for e in entries):
            raise ValueError(f"pattern entries must be +1 or -1: {entries}")
        if sum(entries):
            raise ValueError(f"pattern {entries} does not sum to zero")
        object.__setattr__(self, "entries", entries)

    @property
    def r(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __neg__(self) -> "EpsilonPattern":
        return EpsilonPattern(tuple(-e for e in self.entries))

    def __str__(self) -> str:
        return "(" + ",".join("+" if e > 0 else "-" for e in self.entries) + ")"


def epsilon_patterns(r: int) -> list[EpsilonPattern]:
    """All zero-sum sign sequences of length ``r``, ``+`` before ``-``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return [EpsilonPattern(p) for p in itertools.product((1, -1), repeat=r) if sum(p) == 0]


@dataclass(frozen=True)
class CycleTensor:
    """Sparse multilinear functional; absent basis tuples have coefficient 0."""

    D: int
    pattern: EpsilonPattern
    coeffs: Mapping[tuple, object]
    zero: object = 0

    @property
    def r(self) -> int:
        return self.pattern.r

    def __getitem__(self, idx: tuple):
        return self.coeffs.get(tuple(idx), self.zero)

    def support(self) -> list[tuple]:
        return sorted(self.coeffs)

    def items(self):
        for k in sorted(self.coeffs):
            yield k, self.coeffs[k]

    def scaled(self, c) -> "CycleTensor":
        return CycleTensor(self.D, self.pattern, {k: v * c for k, v in self.coeffs.items()}, self.zero)

    def __add__(self, other: "CycleTensor") -> "CycleTensor":
        if other.pattern != self.pattern or other.D != self.D:
            raise PatternMismatch("can only add tensors of the same pattern and dimension")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return CycleTensor(self.D, self.pattern, {k: v for k, v in out.items() if v}, self.zero)

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def to_dense(self):
        import numpy as np

        arr = np.empty((self.D,) * self.r, dtype=object)
        arr.fill(self.zero)
        for k, v in self.coeffs.items():
            arr[k] = v
        return arr


# ---------------------------------------------------------------------------
# coefficient evaluation


def _local_diagonal(kinds: Sequence[int], sign_n: int):
    """Diagonal entries (on vacuum, on e_i) of a word in one wedge (+1) and
    one contraction (-1) acting on the 2-dim exterior algebra of a line."""
    out = []
    for start in (0, 1):
        state, c = start, 1
        for k in reversed(kinds):
            if k > 0:
                if state:
                    c = 0
                    break
                state = 1
            else:
                if not state:
                    c = 0
                    break
                state = 0
                c *= sign_n
        out.append(c if c and state == start else 0)
    return out


def _inversion_sign(idxs: Sequence[int]) -> int:
    inv = 0
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            if idxs[a] > idxs[b]:
                inv += 1
    return -1 if inv % 2 else 1


def _word_supertrace(mod: FockModule, kinds: Sequence[int], idxs: Sequence[int], occupation: int | None = None):
    """Supertrace of ``a(x_1)..a(x_r) o Frob``, optionally restricted to
    basis vectors with ``|S| = occupation``."""
    backend = mod.backend
    per_index: dict[int, list[int]] = {}
    for k, i in zip(kinds, idxs):
        per_index.setdefault(i, []).append(k)
    local = {}
    for i, ks in per_index.items():
        if sum(ks):
            return backend.zero
        d = _local_diagonal(ks, mod.sign_n)
        if not d[0] and not d[1]:
            return backend.zero
        local[i] = d
    sign = _inversion_sign(idxs)
    one = backend.one
    if occupation is None:
        val = mod.lambda0 * sign
        for i in range(mod.D):
            d0, d1 = local.get(i, (1, 1))
            val = val * (one * d0 - mod.b[i] * d1)
        return val
    # polynomial in t counting occupied generators
    poly = [mod.lambda0 * sign]
    for i in range(mod.D):
        d0, d1 = local.get(i, (1, 1))
        lo, hi = one * d0, -mod.b[i] * d1
        nxt = [backend.zero] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] = nxt[k] + c * lo
            nxt[k + 1] = nxt[k + 1] + c * hi
        poly = nxt
    if 0 <= occupation < len(poly):
        return poly[occupation]
    return backend.zero


def _balanced_tuples(pattern: EpsilonPattern, D: int) -> Iterator[tuple]:
    """Index tuples whose raised and lowered index multisets agree; every
    other tuple has vanishing coefficient."""
    plus = [k for k, e in enumerate(pattern) if e > 0]
    minus = [k for k, e in enumerate(pattern) if e < 0]
    for up in itertools.product(range(D), repeat=len(plus)):
        for down in sorted(set(itertools.permutations(up))):
            idx = [0] * pattern.r
            for k, i in zip(plus, up):
                idx[k] = i
            for k, i in zip(minus, down):
                idx[k] = i
            yield tuple(idx)


def _tensor(mod: FockModule, pattern: EpsilonPattern, kinds: Sequence[int], occupation=None) -> CycleTensor:
    coeffs = {}
    for idx in _balanced_tuples(pattern, mod.D):
        c = _word_supertrace(mod, kinds, idx, occupation)
        if c:
            coeffs[idx] = c
    return CycleTensor(mod.D, pattern, coeffs, mod.backend.zero)


def fake_cycle_class(mod: FockModule, pattern: EpsilonPattern) -> CycleTensor:
    """``z(x_1..x_r) = str(a(x_1) o ... o a(x_r) o Frob)``."""
    return _tensor(mod, pattern, pattern.entries)


def graded_cycle_class(mod: FockModule, pattern: EpsilonPattern, d: int) -> CycleTensor:
    """Degree-``d`` refinement: the supertrace restricted to ``|S| = d + D/2``.

    Degrees outside ``[-D/2, D/2]`` give the zero tensor.
    """
    if mod.D % 2:
        raise DegreeOutOfRange("the degree grading needs even D")
    k = d + mod.D // 2
    if not 0 <= k <= mod.D:
        return CycleTensor(mod.D, pattern, {}, mod.backend.zero)
    return _tensor(mod, pattern, pattern.entries, occupation=k)


def total_cycle_class(mod: FockModule, r: int) -> dict[EpsilonPattern, CycleTensor]:
    """The whole class ``z_r``: one component per balanced pattern."""
    return {p: fake_cycle_class(mod, p) for p in epsilon_patterns(r)}


def dual_system_cycle_class(dual_mod: FockModule, pattern: EpsilonPattern) -> CycleTensor:
    """Cycle class of the dual system on the same tensor slots.

    ``dual_mod`` is the exterior algebra on L* (eigenvalues ``1/b_i``), where
    ``f_j`` wedges and ``e_i`` contracts, so raise/lower roles are swapped.
    """
    return _tensor(dual_mod, pattern, tuple(-e for e in pattern))


def total_dual_cycle_class(dual_mod: FockModule, r: int) -> dict[EpsilonPattern, CycleTensor]:
    return {p: dual_system_cycle_class(dual_mod, p) for p in epsilon_patterns(r)}


def cycle_coefficient_bruteforce(mod: FockModule, kinds: Sequence[int], idxs: Sequence[int], d: int | None = None):
    """Direct composition of Fock operators followed by the supertrace."""
    op = frobenius_op(mod)
    if d is not None:
        op = degree_projector(mod, d) @ op
    for k, i in zip(reversed(kinds), reversed(idxs)):
        op = (raise_op(mod, i) if k > 0 else lower_op(mod, i)) @ op
    return supertrace(mod, op)


# ---------------------------------------------------------------------------
# pairing


def omega_dual_pairing(z: CycleTensor, zp: CycleTensor, form: OmegaForm | None = None):
    """Pairing of functionals on ``L^eps`` and ``L^{-eps}`` through the inverse
    Gram matrix of omega_M, with the Koszul sign of :func:`koszul_sign`."""
    if z.r != zp.r or z.D != zp.D:
        raise PatternMismatch("tensors differ in length or dimension")
    if zp.pattern != -z.pattern:
        raise PatternMismatch(f"patterns {z.pattern} and {zp.pattern} are not complementary")
    form = form or OmegaForm(z.D)
    D = z.D
    total = z.zero
    for idx, c in z.items():
        partner = []
        weight = 1
        for e, i in zip(z.pattern, idx):
            y, g = form.dual_partner(i if e > 0 else i + D)
            partner.append(y % D)
            weight *= g
        cp = zp[tuple(partner)]
        if cp:
            total = total + c * cp * weight
    return total * koszul_sign(z.r)


def omega_pairing_total(zs: Mapping[EpsilonPattern, CycleTensor], zps: Mapping[EpsilonPattern, CycleTensor],
                        form: OmegaForm | None = None):
    """Bilinear extension over full pattern sums, pairing each component with
    the complementary one."""
    total = None
    for p in sorted(zs, key=lambda p: tuple(-e for e in p.entries)):
        other = zps.get(-p)
        if other is None:
            continue
        v = omega_dual_pairing(zs[p], other, form)
        total = v if total is None else total + v
    if total is None:
        some = next(iter(zs.values()), None) or next(iter(zps.values()), None)
        return some.zero if some is not None else 0
    return total
