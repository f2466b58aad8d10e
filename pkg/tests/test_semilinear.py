import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fields
from sigmahull.gf import field_new
from sigmahull.linalg import DimensionMismatch, Mat
from sigmahull.semilinear import InvalidSigma, Monomial, SigmaMap, apply_sigma, sigma_gram, sigma_inner


def test_permutation_matrix_convention():
    ctx = field_new(3)
    mono = Monomial.from_perm([1, 2, 0])  # tau: 1->2, 2->3, 3->1
    P = mono.perm_matrix(ctx)
    assert P.data[1, 0] == 1 and P.data[2, 1] == 1 and P.data[0, 2] == 1
    t = np.array([1, 2, 0])
    # t P^T = (t3, t1, t2)
    assert (Mat(ctx, t) @ P.T).data.ravel().tolist() == [0, 1, 2]
    assert mono.apply(ctx, t).tolist() == (Mat(ctx, t) @ P).data.ravel().tolist()


def test_weight_preserving_on_gf3_cube():
    ctx = field_new(3)
    rng = np.random.default_rng(0)
    sig = SigmaMap(ctx, Monomial.random(ctx, 3, rng), 1)
    for v in itertools.product(range(3), repeat=3):
        assert np.count_nonzero(apply_sigma(sig, v)) == np.count_nonzero(v)


@given(fields([(3, 2), (2, 4), (5, 2)]), st.data())
def test_hermitian_inner_product(ctx, data):
    n = data.draw(st.integers(1, 6))
    a = [data.draw(st.integers(0, ctx.q - 1)) for _ in range(n)]
    b = [data.draw(st.integers(0, ctx.q - 1)) for _ in range(n)]
    h = SigmaMap.hermitian(ctx, n)
    r = ctx.p ** (ctx.e // 2)
    expect = 0
    for x, y in zip(a, b):
        expect = ctx.add(expect, ctx.mul(x, ctx.pow(y, r)))
    assert sigma_inner(a, b, h) == expect


@given(fields(), st.data())
def test_sigma_is_semilinear_and_invertible(ctx, data):
    n = data.draw(st.integers(1, 6))
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    sig = SigmaMap.random(ctx, n, rng)
    a, b = rng.integers(0, ctx.q, size=n), rng.integers(0, ctx.q, size=n)
    c = int(rng.integers(0, ctx.q))
    lhs = apply_sigma(sig, ctx.add(a, ctx.mul(c, b)))
    rhs = ctx.add(apply_sigma(sig, a), ctx.mul(ctx.frobenius(c, sig.s), apply_sigma(sig, b)))
    assert np.array_equal(lhs, rhs)
    inv = sig.monomial.inverse(ctx)
    assert inv.matrix(ctx) @ sig.matrix() == Mat.identity(ctx, n)
    # gram matrix agrees with pairwise inner products
    A, B = Mat.random(ctx, 2, n, rng), Mat.random(ctx, 3, n, rng)
    G = sigma_gram(A, B, sig)
    for i in range(2):
        for j in range(3):
            assert G.data[i, j] == sigma_inner(A.data[i], B.data[j], sig)


def test_monomial_kron_matches_matrix_kron():
    ctx = field_new(5)
    rng = np.random.default_rng(4)
    from sigmahull.linalg import kron
    m1, m2 = Monomial.random(ctx, 3, rng), Monomial.random(ctx, 2, rng)
    assert m1.kron(m2, ctx).matrix(ctx) == kron(m1.matrix(ctx), m2.matrix(ctx))


def test_descriptor_json():
    ctx = field_new(3)
    sig = SigmaMap(ctx, Monomial.from_perm([1, 2, 0]), 1)
    assert sig.to_json() == {"perm": [2, 3, 1], "diag": [[1], [1], [1]], "s": 1}
    assert SigmaMap.from_json(sig.to_json(), ctx) == sig


def test_invalid_descriptors():
    ctx = field_new(3, 2)
    with pytest.raises(InvalidSigma):
        Monomial.from_perm([0, 0, 1])
    with pytest.raises(InvalidSigma):
        Monomial.from_perm([0, 1], [1, 0])
    with pytest.raises(InvalidSigma):
        SigmaMap(ctx, Monomial.identity(2), 0)
    with pytest.raises(InvalidSigma):
        SigmaMap.hermitian(field_new(2, 3), 2)
    with pytest.raises(DimensionMismatch):
        apply_sigma(SigmaMap.identity(ctx, 3), [1, 2])


def test_galois_and_identity_maps():
    ctx = field_new(3, 4)
    sig = SigmaMap.galois(ctx, 3, 1)
    a, b = np.array([3, 5, 7]), np.array([10, 0, 44])
    # <a, sigma(b)> is the ell-Galois pairing <b, a>_ell pushed through pi_{e-ell}
    gal = 0
    for x, y in zip(b.tolist(), a.tolist()):
        gal = ctx.add(gal, ctx.mul(x, ctx.pow(y, 3)))
    assert sigma_inner(a, b, sig) == ctx.frobenius(gal, 3)
    v = a
    assert np.array_equal(apply_sigma(SigmaMap.identity(ctx, 3), v), v)
