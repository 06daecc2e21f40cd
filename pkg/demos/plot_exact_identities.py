"""
Exact verification on a hand-built fixture
==========================================

Uses Gaussian-rational arithmetic with q = 4 and normalized eigenvalues that
are fourth roots of unity, so every identity is checked with zero
discrepancy.
"""

from rsfock import PeriodSpec
from rsfock.cycles import EpsilonPattern, fake_cycle_class
from rsfock.identity import dual_relation_check, kolyvagin_norm_check, main_identity_check
from rsfock.scalars import ExactBackend

bk = ExactBackend()
i = bk.coerce([0, 1])

spec = PeriodSpec(
    q=4, n=2, g=2,
    h1_alphas=(2 * i, 2 * i, 2 * i, -2),
    chi_n_half=i, chi_n1_half=-1,
    adjoint_n_alphas=(2 * i, -2 * i) * 4 + (2, -2),
    adjoint_n1_alphas=(2 * i, -2 * i, 2, -2),
    backend=bk,
)
print("b =", spec.b, " epsilon =", spec.epsilon, " lambda0 =", spec.lambda0)

# %%
# The r = 2 class on the (+, -) pattern: only index tuples (i, i) survive.
z = fake_cycle_class(spec.fock_module(), EpsilonPattern((1, -1)))
for idx, c in z.items():
    print(idx, c)

# %%
for r in (0, 2, 4):
    for check in (kolyvagin_norm_check, main_identity_check, dual_relation_check):
        print(check(spec, r).line())
