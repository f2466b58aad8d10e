"""Dense exact linear algebra over a :class:`~sigmahull.gf.FieldCtx`.

``Mat`` is a thin immutable wrapper around a 2-d int64 array.  Row spaces are compared by
their trimmed RREF, which is unique for a given subspace.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx, field_from_descriptor


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class Mat:
    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data, cols: int | None = None):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.q):
            raise ValueError(f"entries outside {ctx!r}")
        arr.flags.writeable = False
        self.ctx = ctx
        self.data = arr

    @classmethod
    def _wrap(cls, ctx: FieldCtx, arr: np.ndarray) -> "Mat":
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        m.ctx = ctx
        m.data = arr
        return m

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls._wrap(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx, n):
        return cls._wrap(ctx, np.eye(n, dtype=np.int64))

    @classmethod
    def random(cls, ctx, rows, cols, rng: np.random.Generator):
        return cls._wrap(ctx, rng.integers(0, ctx.q, size=(rows, cols)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Mat":
        return Mat._wrap(self.ctx, self.data.T)

    def transpose(self) -> "Mat":
        return self.T

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ctx == other.ctx
            and self.shape == other.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.ctx, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Mat({self.ctx!r}, {self.data.tolist()})"

    def __getitem__(self, idx):
        out = self.data[idx]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return Mat._wrap(self.ctx, out)
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        _same(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Mat._wrap(self.ctx, self.ctx.add(self.data, other.data))

    def __sub__(self, other: "Mat") -> "Mat":
        _same(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Mat._wrap(self.ctx, self.ctx.sub(self.data, other.data))

    def scale(self, c: int) -> "Mat":
        return Mat._wrap(self.ctx, self.ctx.mul(self.data, c))

    def tolist(self):
        return self.data.tolist()

    def to_json(self) -> dict:
        return {
            "field": self.ctx.descriptor(),
            "rows": self.rows,
            "cols": self.cols,
            "data": [[self.ctx.to_coeffs(x) for x in row] for row in self.data.tolist()],
        }

    @classmethod
    def from_json(cls, d: dict, ctx: FieldCtx | None = None) -> "Mat":
        ctx = ctx or field_from_descriptor(d["field"])
        rows, cols = int(d["rows"]), int(d["cols"])
        data = [[_elt(ctx, x) for x in row] for row in d["data"]]
        arr = np.array(data, dtype=np.int64).reshape(rows, cols)
        return cls(ctx, arr)


def _elt(ctx: FieldCtx, x) -> int:
    return ctx.from_coeffs(x) if isinstance(x, list) else int(x)


def _same(a: Mat, b: Mat) -> None:
    if a.ctx != b.ctx:
        raise DimensionMismatch(f"field mismatch: {a.ctx!r} vs {b.ctx!r}")


def matmul(a: Mat, b: Mat) -> Mat:
    _same(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    ctx = a.ctx
    if ctx.e == 1 and ctx.p < (1 << 20):
        # entries < p and inner dimension small, so int64 never overflows at desk scale
        return Mat._wrap(ctx, (a.data @ b.data) % ctx.p)
    return Mat._wrap(ctx, _ext_matmul(ctx, a.data, b.data))


def _ext_matmul(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        col = A[:, j]
        row = B[j, :]
        if not col.any() or not row.any():
            continue
        acc = ctx.add(acc, ctx.mul(col[:, None], row[None, :]))
    return np.asarray(acc, dtype=np.int64).reshape(A.shape[0], B.shape[1])


def vecmat(v, m: Mat) -> np.ndarray:
    """Row vector times matrix."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    return matmul(Mat._wrap(m.ctx, v), m).data[0]


def _rref_array(ctx: FieldCtx, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    M = np.array(A, dtype=np.int64, copy=True)
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r] = ctx.mul(M[r], ctx.inv(lead))
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if others.size:
            f = M[others, c]
            M[others] = ctx.sub(M[others], ctx.mul(f[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots


def rref(m: Mat, trim: bool = True) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the pivot columns; zero rows dropped when ``trim``."""
    R, piv = _rref_array(m.ctx, m.data)
    if trim:
        R = R[: len(piv)]
    return Mat._wrap(m.ctx, R), piv


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.ctx, m.data)[1])


def kernel(m: Mat) -> Mat:
    """Basis (as rows) of the right null space ``{x : M x^T = 0}``."""
    ctx = m.ctx
    n = m.cols
    R, piv = _rref_array(ctx, m.data)
    R = R[: len(piv)]
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        if piv:
            K[i, piv] = ctx.neg(R[:, f])
    return Mat._wrap(ctx, K)


def left_kernel(m: Mat) -> Mat:
    """Basis of ``{y : y M = 0}``."""
    return kernel(m.T)


def vstack(*mats: Mat) -> Mat:
    ctx = mats[0].ctx
    for x in mats[1:]:
        _same(mats[0], x)
    cols = {x.cols for x in mats}
    if len(cols) > 1:
        raise DimensionMismatch(f"vstack of widths {sorted(cols)}")
    return Mat._wrap(ctx, np.vstack([x.data for x in mats]))


def hstack(*mats: Mat) -> Mat:
    ctx = mats[0].ctx
    rows = {x.rows for x in mats}
    if len(rows) > 1:
        raise DimensionMismatch(f"hstack of heights {sorted(rows)}")
    return Mat._wrap(ctx, np.hstack([x.data for x in mats]))


def block_diag(*mats: Mat) -> Mat:
    ctx = mats[0].ctx
    R = sum(x.rows for x in mats)
    C = sum(x.cols for x in mats)
    out = np.zeros((R, C), dtype=np.int64)
    r = c = 0
    for x in mats:
        _same(mats[0], x)
        out[r : r + x.rows, c : c + x.cols] = x.data
        r += x.rows
        c += x.cols
    return Mat._wrap(ctx, out)


def row_space(m: Mat) -> Mat:
    return rref(m)[0]


def same_row_space(a: Mat, b: Mat) -> bool:
    _same(a, b)
    if a.cols != b.cols:
        return False
    return row_space(a) == row_space(b)


def contains_rows(big: Mat, small: Mat) -> bool:
    """True when every row of ``small`` lies in the row space of ``big``."""
    if small.rows == 0:
        return True
    return rank(vstack(big, small)) == rank(big)


def rowspace_intersect(a: Mat, b: Mat) -> Mat:
    """Basis of rowspace(a) ∩ rowspace(b), via the left kernel of the stacked matrix."""
    _same(a, b)
    if a.cols != b.cols:
        raise DimensionMismatch(f"intersect of widths {a.cols} and {b.cols}")
    A = row_space(a)
    B = row_space(b)
    if A.rows == 0 or B.rows == 0:
        return Mat.zeros(a.ctx, 0, a.cols)
    # x A = y B  <=>  (x, -y) [A; B] = 0; the x-part of the left kernel spans the answer
    L = left_kernel(vstack(A, B))
    X = Mat._wrap(a.ctx, L.data[:, : A.rows])
    return row_space(matmul(X, A))


def kron(a: Mat, b: Mat) -> Mat:
    _same(a, b)
    ctx = a.ctx
    out = ctx.mul(a.data[:, None, :, None], b.data[None, :, None, :])
    out = np.asarray(out).reshape(a.rows * b.rows, a.cols * b.cols)
    return Mat._wrap(ctx, out)


def map_frobenius(m: Mat, s: int) -> Mat:
    return Mat._wrap(m.ctx, np.asarray(m.ctx.frobenius(m.data, s)).reshape(m.shape))


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionMismatch(f"inverse of non-square {m.shape}")
    n = m.rows
    aug = np.hstack([m.data, np.eye(n, dtype=np.int64)])
    R, piv = _rref_array(m.ctx, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return Mat._wrap(m.ctx, R[:, n:])


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def random_invertible(ctx: FieldCtx, n: int, rng: np.random.Generator) -> Mat:
    while True:
        m = Mat.random(ctx, n, n, rng)
        if rank(m) == n:
            return m


def random_full_rank(ctx: FieldCtx, k: int, n: int, rng: np.random.Generator) -> Mat:
    while True:
        m = Mat.random(ctx, k, n, rng)
        if rank(m) == k:
            return m


def solve_left(a: Mat, b) -> np.ndarray | None:
    """Some ``x`` with ``x a = b`` (b a row vector), or None when inconsistent."""
    b = np.asarray(b, dtype=np.int64).reshape(1, -1)
    if b.shape[1] != a.cols:
        raise DimensionMismatch(f"rhs length {b.shape[1]} vs {a.cols} columns")
    # x a = b  <=>  a^T x^T = b^T; eliminate on [a^T | b^T]
    aug = np.hstack([a.data.T, b.T])
    R, piv = _rref_array(a.ctx, aug)
    if a.rows in piv:
        return None
    x = np.zeros(a.rows, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, a.rows]
    return x
