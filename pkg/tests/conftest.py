import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sigmahull.gf import field_new

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (2, 4)]


@st.composite
def fields(draw, choices=SMALL_FIELDS):
    p, e = draw(st.sampled_from(choices))
    return field_new(p, e)


@pytest.fixture
def gf9():
    return field_new(3, 2)


@pytest.fixture
def gf81():
    return field_new(3, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def brute_mul(ctx, x, y):
    """Schoolbook product of the coefficient vectors, reduced by the monic modulus."""
    p, e = ctx.p, ctx.e
    a, b = ctx.to_coeffs(x), ctx.to_coeffs(y)
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    mod = list(ctx.modulus)
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for i in range(e + 1):
                prod[d - e + i] = (prod[d - e + i] - c * mod[i]) % p
    return ctx.from_coeffs(prod[:e])


def brute_pow(ctx, x, n):
    out = 1
    for _ in range(n):
        out = brute_mul(ctx, out, x)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
