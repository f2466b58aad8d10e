import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fields
from sigmahull.code import (
    LinearCode,
    TooLarge,
    check_image_dual_transport,
    check_parity_transport,
    euclidean_dual,
    galois_dual,
    galois_dual_alt,
    galois_hull,
    hermitian_dual_direct,
    hull,
    hull_dim_from_parity,
    intersection_dim,
    is_mds,
    is_mds_by_minors,
    min_distance,
    sigma_dual,
    sigma_dual_direct,
    sigma_image,
)
from sigmahull.gf import field_new
from sigmahull.grs import GrsSpec
from sigmahull.linalg import DimensionMismatch, Mat
from sigmahull.semilinear import SigmaMap, sigma_inner


def brute_sigma_dual(C, sigma):
    ctx = C.ctx
    out = []
    for x in itertools.product(range(ctx.q), repeat=C.n):
        if all(sigma_inner(x, g, sigma) == 0 for g in C.gen.data):
            out.append(x)
    return out


def test_hull_examples():
    gf3 = field_new(3)
    C = LinearCode.from_rows(gf3, [[1, 0]])
    assert hull(C, SigmaMap.identity(gf3, 2)).method_dim == 0
    gf2 = field_new(2)
    C = LinearCode.from_rows(gf2, [[1, 1]])
    assert hull(C, SigmaMap.identity(gf2, 2)).method_dim == 1


def test_repetition_and_grs_distance():
    gf5 = field_new(5)
    rep = LinearCode.from_rows(gf5, [[1] * 6])
    assert min_distance(rep) == 6
    gf9 = field_new(3, 2)
    spec = GrsSpec(gf9, (0, 1, 2, 3), (1, 1, 1, 1), 2)
    assert min_distance(spec.code()) == 3 and is_mds(spec.code())
    assert is_mds_by_minors(spec.code())


def test_distance_enumeration_cap():
    ctx = field_new(2, 4)
    C = LinearCode.random(ctx, 12, 8, np.random.default_rng(0))
    with pytest.raises(TooLarge):
        min_distance(C, limit=1000)


def test_trivial_codes():
    ctx = field_new(3, 2)
    sig = SigmaMap.identity(ctx, 4)
    Z, F = LinearCode.zero(ctx, 4), LinearCode.full(ctx, 4)
    assert hull(Z, sig).method_dim == 0 and hull(F, sig).method_dim == 0
    assert sigma_dual(Z, sig) == F and sigma_dual(F, sig) == Z


@pytest.mark.parametrize("p,e,n", [(2, 1, 5), (3, 1, 4), (2, 2, 4), (3, 2, 3)])
def test_sigma_dual_and_hull_by_enumeration(p, e, n):
    ctx = field_new(p, e)
    rng = np.random.default_rng(p * 100 + e * 10 + n)
    for _ in range(6):
        k = int(rng.integers(1, n))
        C = LinearCode.random(ctx, n, k, rng)
        sig = SigmaMap.random(ctx, n, rng)
        words = brute_sigma_dual(C, sig)
        D = sigma_dual(C, sig)
        assert len(words) == ctx.q ** D.k
        assert all(D.contains(w) for w in words)
        assert sigma_dual_direct(C, sig) == D
        inside = [w for w in words if C.contains(w)]
        rep = hull(C, sig)
        assert len(inside) == ctx.q ** rep.method_dim
        assert rep.consistent


@given(fields(), st.data())
def test_dual_dimension_and_transport(ctx, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    n = data.draw(st.integers(1, 8))
    C = LinearCode.random(ctx, n, data.draw(st.integers(0, n)), rng)
    sig = SigmaMap.random(ctx, n, rng)
    assert sigma_dual(C, sig).k == n - C.k
    assert sigma_image(C, sig).k == C.k
    assert check_image_dual_transport(C, sig)
    assert check_parity_transport(C, sig)
    rep = hull(C, sig)
    assert rep.consistent and rep.basis.rows == rep.method_dim
    for which in (1, 2):
        D = LinearCode.random(ctx, n, data.draw(st.integers(0, n)), rng)
        assert intersection_dim(C, D, sig, which).consistent


@given(fields([(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)]), st.data())
def test_galois_specialisations(ctx, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    n = data.draw(st.integers(2, 7))
    C = LinearCode.random(ctx, n, data.draw(st.integers(1, n - 1)), rng)
    for ell in range(ctx.e):
        assert galois_dual(C, ell) == galois_dual_alt(C, ell)
        rep = galois_hull(C, ell)
        assert rep.consistent
        assert hull_dim_from_parity(C, ell) == rep.method_dim
    assert galois_dual(C, 0) == euclidean_dual(C)
    if ctx.e % 2 == 0:
        assert galois_dual(C, ctx.e // 2) == hermitian_dual_direct(C)


def test_galois_dual_is_definition():
    ctx = field_new(3, 2)
    C = LinearCode.from_rows(ctx, [[1, 4, 5]])
    D = galois_dual(C, 1)
    for w in D.codewords():
        acc = 0
        for x, c in zip(w.tolist(), [1, 4, 5]):
            acc = ctx.add(acc, ctx.mul(x, ctx.pow(c, 3)))
        assert acc == 0


def test_mismatched_shapes():
    ctx = field_new(3)
    C = LinearCode.from_rows(ctx, [[1, 0, 1]])
    with pytest.raises(DimensionMismatch):
        hull(C, SigmaMap.identity(ctx, 4))
    with pytest.raises(DimensionMismatch):
        intersection_dim(C, LinearCode.full(ctx, 2), SigmaMap.identity(ctx, 3))


def test_json_roundtrip():
    ctx = field_new(3, 2)
    C = LinearCode.random(ctx, 5, 2, np.random.default_rng(2))
    assert LinearCode.from_json(C.to_json()) == C
    assert Mat.from_json(C.gen.to_json()) == C.gen
