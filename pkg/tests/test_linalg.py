import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fields
from sigmahull.gf import field_new
from sigmahull.linalg import (
    DimensionMismatch,
    Mat,
    SingularMatrix,
    contains_rows,
    hstack,
    inverse,
    kernel,
    kron,
    left_kernel,
    map_frobenius,
    random_full_rank,
    random_invertible,
    rank,
    rowspace_intersect,
    rref,
    same_row_space,
    solve_left,
    vstack,
)


def small_mats(draw, ctx, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = [[draw(st.integers(0, ctx.q - 1)) for _ in range(c)] for _ in range(r)]
    return Mat(ctx, rows, cols=c) if r else Mat.zeros(ctx, 0, c)


@st.composite
def field_and_mat(draw):
    ctx = draw(fields())
    return ctx, small_mats(draw, ctx)


def test_rref_gf3_example():
    ctx = field_new(3)
    R, piv = rref(Mat(ctx, [[1, 2, 0], [2, 1, 0]]))
    assert piv == [0]
    assert R.tolist() == [[1, 2, 0]]
    R, piv = rref(Mat(ctx, [[1, 2, 0], [2, 1, 0]]), trim=False)
    assert R.tolist() == [[1, 2, 0], [0, 0, 0]]


def test_rref_identity_and_zero():
    ctx = field_new(2, 3)
    assert rank(Mat.identity(ctx, 5)) == 5
    assert rank(Mat.zeros(ctx, 3, 4)) == 0
    assert rank(Mat.zeros(ctx, 0, 4)) == 0


def test_shape_errors():
    ctx = field_new(3)
    with pytest.raises(DimensionMismatch):
        Mat.identity(ctx, 2) @ Mat.identity(ctx, 3)
    with pytest.raises(ValueError):
        Mat(ctx, [[3]])
    with pytest.raises(SingularMatrix):
        inverse(Mat(ctx, [[1, 1], [1, 1]]))


@given(field_and_mat())
def test_rank_transpose_and_rref_properties(fm):
    ctx, A = fm
    R, piv = rref(A)
    assert rank(A) == rank(A.T) == R.rows == len(piv)
    assert same_row_space(R, A)
    for i, j in enumerate(piv):
        assert R.data[i, j] == 1
        assert np.count_nonzero(R.data[:, j]) == 1
        assert not R.data[i, :j].any()


@given(field_and_mat())
def test_kernel_dimension_and_orthogonality(fm):
    ctx, A = fm
    K = kernel(A)
    assert K.rows == A.cols - rank(A)
    assert (A @ K.T).is_zero()
    L = left_kernel(A)
    assert L.rows == A.rows - rank(A)
    assert (L @ A).is_zero()


@given(fields(), st.data())
def test_intersection_symmetry_and_dimension(ctx, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    n = data.draw(st.integers(1, 7))
    A = Mat.random(ctx, data.draw(st.integers(1, n)), n, rng)
    B = Mat.random(ctx, data.draw(st.integers(1, n)), n, rng)
    I1, I2 = rowspace_intersect(A, B), rowspace_intersect(B, A)
    assert same_row_space(I1, I2)
    assert contains_rows(A, I1) and contains_rows(B, I1)
    assert I1.rows == rank(A) + rank(B) - rank(vstack(A, B))


def test_intersection_brute_force():
    ctx = field_new(3)
    rng = np.random.default_rng(7)
    for _ in range(30):
        A, B = Mat.random(ctx, 2, 4, rng), Mat.random(ctx, 3, 4, rng)
        span = lambda M: {  # noqa: E731
            tuple(np.asarray(Mat(ctx, c) @ M).ravel().tolist())
            for c in np.ndindex(*(3,) * M.rows)
        }
        common = span(A) & span(B)
        assert len(common) == 3 ** rowspace_intersect(A, B).rows


def test_matmul_against_python_loops():
    ctx = field_new(5, 2)
    rng = np.random.default_rng(3)
    A, B = Mat.random(ctx, 4, 5, rng), Mat.random(ctx, 5, 3, rng)
    C = A @ B
    for i in range(4):
        for j in range(3):
            acc = 0
            for t in range(5):
                acc = ctx.add(acc, ctx.mul(int(A.data[i, t]), int(B.data[t, j])))
            assert C.data[i, j] == acc


def test_kron_and_frobenius():
    ctx = field_new(3, 2)
    rng = np.random.default_rng(1)
    A, B = Mat.random(ctx, 2, 3, rng), Mat.random(ctx, 2, 2, rng)
    K = kron(A, B)
    assert K.shape == (4, 6)
    for i1 in range(2):
        for j1 in range(3):
            for i2 in range(2):
                for j2 in range(2):
                    assert K.data[i1 * 2 + i2, j1 * 2 + j2] == ctx.mul(
                        int(A.data[i1, j1]), int(B.data[i2, j2]))
    C, D = Mat.random(ctx, 3, 2, rng), Mat.random(ctx, 2, 2, rng)
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)
    # pi_s is entrywise and multiplicative on products
    assert map_frobenius(A @ C, 1) == map_frobenius(A, 1) @ map_frobenius(C, 1)
    assert map_frobenius(A, 2) == A


def test_inverse_and_solve():
    ctx = field_new(2, 4)
    rng = np.random.default_rng(9)
    M = random_invertible(ctx, 6, rng)
    assert inverse(M) @ M == Mat.identity(ctx, 6)
    G = random_full_rank(ctx, 3, 7, rng)
    assert rank(G) == 3
    x = rng.integers(0, ctx.q, size=3)
    v = np.asarray((Mat(ctx, x) @ G).data).ravel()
    sol = solve_left(G, v)
    assert sol is not None and np.array_equal(sol, x)
    assert hstack(G, G).cols == 14


def test_json_roundtrip():
    ctx = field_new(3, 2)
    A = Mat(ctx, [[0, 1, 8], [4, 5, 2]])
    d = A.to_json()
    assert d["data"][0][1] == [1, 0]
    assert Mat.from_json(d) == A
