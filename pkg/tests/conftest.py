"""Shared fixtures: hand-built exact specs and seeded float specs."""
from __future__ import annotations

import pytest
from hypothesis import settings

from rsfock import PeriodSpec
from rsfock.runner import generate_spec
from rsfock.scalars import ExactBackend

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EX = ExactBackend()
I = EX.coerce([0, 1])

# q = 4, so sqrt(q) = 2 and alpha = 2 b.  Adjoint blocks use pairs {2i, -2i}
# (since 4 / 2i = -2i) and the self-paired values +-2.
_ADJ_N1 = (2 * I, -2 * I, 2, -2)
_ADJ_N = (2 * I, -2 * I, 2 * I, -2 * I, 2, 2, -2, -2, 2 * I, -2 * I)

# (normalized H^1 eigenvalues, chi_n(Omega^(1/2)), chi_{n-1}(Omega^(1/2)))
_EXACT_DATA = [
    ((-1, -1), 1, 1),
    ((I, -I), 1, 1),
    ((I, I), I, 1),
    ((-1, I), -1, -I),
    ((-I, -I), 1, I),
    ((-1, -1, -1, -1), 1, 1),
    ((I, -I, -1, -1), 1, 1),
    ((I, I, I, -1), I, -1),
    ((-I, -I, I, -1), -I, I),
    ((I, I, -I, -I), -1, -1),
]


def make_exact_spec(bs, chi_n, chi_n1) -> PeriodSpec:
    counts = len(bs) == 4
    return PeriodSpec(
        4, 2, 2, tuple(2 * EX.coerce(b) for b in bs), chi_n, chi_n1,
        _ADJ_N if counts else _ADJ_N[:4], _ADJ_N1, EX, check_counts=counts,
    )


EXACT_FIXTURES = [make_exact_spec(*d) for d in _EXACT_DATA]


@pytest.fixture(scope="session")
def exact_fixtures():
    return EXACT_FIXTURES


@pytest.fixture(scope="session")
def float_specs():
    small = [generate_spec(9, 2, 2, seed, "float") for seed in range(20)]
    large = [generate_spec(9, 2, 3, 100 + seed, "float") for seed in range(5)]
    return small + large
