import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmahull.code import LinearCode, galois_hull, sigma_dual
from sigmahull.gf import field_new
from sigmahull.grs import (
    DegreeTooHigh,
    GrsSpec,
    NotACodeword,
    RepeatedPoint,
    UnsupportedPermutation,
    check_dual_identities,
    direct_membership,
    encode,
    galois_hull_witness,
    galois_sigma,
    generator,
    in_sigma_dual,
    interpolate_message,
    sigma_hull_code,
    u_vector,
)
from sigmahull.semilinear import Monomial, SigmaMap


def test_u_vector_example():
    ctx = field_new(3)
    assert u_vector(ctx, [0, 1]).tolist() == [2, 1]
    with pytest.raises(RepeatedPoint):
        u_vector(ctx, [1, 1])


@pytest.mark.parametrize("p,e", [(3, 2), (5, 1), (2, 3)])
def test_lagrange_identity(p, e):
    """sum_i u_i a_i^j vanishes for j <= n-2."""
    ctx = field_new(p, e)
    rng = np.random.default_rng(0)
    for n in range(2, min(ctx.q, 7) + 1):
        a = rng.choice(ctx.q, size=n, replace=False)
        u = u_vector(ctx, a)
        for j in range(n - 1):
            acc = 0
            for ui, ai in zip(u.tolist(), a.tolist()):
                acc = ctx.add(acc, ctx.mul(ui, ctx.pow(ai, j)))
            assert acc == 0


def test_extended_generator_shape():
    ctx = field_new(3, 2)
    G = generator(GrsSpec(ctx, (0, 1, 2), (1, 1, 1), 1, extended=True))
    assert G.tolist() == [[1, 1, 1, 1]]
    G = generator(GrsSpec(ctx, (0, 1, 2), (1, 1, 1), 2, extended=True))
    assert G.data[:, -1].tolist() == [0, 1]


def test_encode_and_interpolate():
    ctx = field_new(3, 2)
    spec = GrsSpec(ctx, (1, 2, 3, 4, 5), (1, 3, 5, 7, 2), 3, extended=True)
    f = (4, 0, 7)
    c = encode(spec, f)
    assert c[-1] == 7
    assert interpolate_message(spec, c).coeffs == f
    with pytest.raises(DegreeTooHigh):
        encode(spec, (1, 1, 1, 1))
    bad = c.copy()
    bad[0] = ctx.add(int(bad[0]), 1)
    assert interpolate_message(spec, bad) is None


@given(st.sampled_from([(3, 2), (2, 3), (5, 2), (7, 1)]), st.data())
def test_dual_identities(pe, data):
    ctx = field_new(*pe)
    n = data.draw(st.integers(2, min(ctx.q, 8)))
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    a = rng.choice(ctx.q, size=n, replace=False).tolist()
    k = data.draw(st.integers(1, n))
    s = data.draw(st.integers(1, ctx.e))
    assert check_dual_identities(ctx, a, k, s) == (True, True, True, True)


def _all_codewords(spec):
    return spec.code().codewords()


@pytest.mark.parametrize("extended", [False, True])
def test_membership_matches_direct_exhaustively(extended):
    ctx = field_new(3, 2)
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = tuple(rng.choice(9, size=4, replace=False).tolist())
        v = tuple(rng.integers(1, 9, size=4).tolist())
        spec = GrsSpec(ctx, a, v, 2, extended)
        n = spec.length
        perm = list(rng.permutation(spec.n_points)) + ([spec.n_points] if extended else [])
        sig = SigmaMap(ctx, Monomial.from_perm(perm, rng.integers(1, 9, size=n)), int(rng.integers(1, 3)))
        inside = 0
        for c in _all_codewords(spec):
            w = in_sigma_dual(spec, c, sig)
            assert (w is not None) == direct_membership(spec, c, sig)
            inside += w is not None
        assert inside == 9 ** sigma_hull_code(spec, sig).k


def test_membership_of_arbitrary_vectors():
    ctx = field_new(5)
    spec = GrsSpec(ctx, (0, 1, 2, 3), (1, 2, 3, 4), 2)
    sig = SigmaMap.identity(ctx, 4)
    D = sigma_dual(spec.code(), sig)
    for x in itertools.product(range(5), repeat=4):
        w = in_sigma_dual(spec, x, sig, require_codeword=False)
        assert (w is not None) == D.contains(x)
    with pytest.raises(NotACodeword):
        in_sigma_dual(spec, (1, 0, 0, 0), sig)


def test_infinity_coordinate_must_stay():
    ctx = field_new(3, 2)
    spec = GrsSpec(ctx, (0, 1, 2), (1, 1, 1), 2, extended=True)
    sig = SigmaMap(ctx, Monomial.from_perm([3, 0, 1, 2]), 2)
    c = encode(spec, (1, 1))
    with pytest.raises(UnsupportedPermutation):
        in_sigma_dual(spec, c, sig)
    w = in_sigma_dual(spec, c, sig, general_perm=True)
    assert (w is not None) == direct_membership(spec, c, sig)


def test_galois_witness_agrees_with_hull():
    ctx = field_new(3, 4)
    rng = np.random.default_rng(11)
    for ell in range(4):
        a = tuple(rng.choice(81, size=6, replace=False).tolist())
        v = tuple(rng.integers(1, 81, size=6).tolist())
        spec = GrsSpec(ctx, a, v, 3, extended=bool(ell % 2))
        H = sigma_hull_code(spec, galois_sigma(spec, ell))
        assert H.k == galois_hull(spec.code(), ell).method_dim
        for c in H.codewords()[:20]:
            assert galois_hull_witness(spec, c, ell) is not None
        # a message outside the hull gives no witness
        C = spec.code()
        out = [c for c in C.codewords()[:200] if not H.contains(c)]
        for c in out[:10]:
            assert galois_hull_witness(spec, c, ell) is None


def test_json_roundtrip():
    ctx = field_new(3, 2)
    spec = GrsSpec(ctx, (0, 1, 5), (2, 3, 4), 2, extended=True)
    back = GrsSpec.from_json(spec.to_json())
    assert back.a == spec.a and back.v == spec.v and back.extended
    assert LinearCode.from_generator(generator(back)) == spec.code()
