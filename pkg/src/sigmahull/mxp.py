"""Matrix-product codes ``[C_1, ..., C_k] . A`` and their duals, hulls and intersections.

Codewords use the row-vector layout ``(c_1, ..., c_k) (A ⊗ I_n)``: coordinate block ``j``
holds ``sum_i a_ij c_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import (
    HullReport,
    LinearCode,
    VerificationFailure,
    hull,
    sigma_dual,
)
from .gf import FieldCtx
from .linalg import (
    DimensionMismatch,
    Mat,
    block_diag,
    inverse,
    is_invertible,
    kernel,
    kron,
    map_frobenius,
    rank,
    rowspace_intersect,
    same_row_space,
)
from .semilinear import InvalidSigma, Monomial, SigmaMap


class MxpError(ValueError):
    pass


class RankDeficientA(MxpError):
    pass


class MixedFields(MxpError):
    pass


class NotSquare(MxpError):
    pass


class SingularDefining(MxpError):
    pass


SingularA = SingularDefining


class NotQuasiDiagonal(MxpError):
    pass


class NotDiagonalRatio(MxpError):
    pass


@dataclass(frozen=True, eq=False)
class MxpSpec:
    constituents: tuple[LinearCode, ...]
    A: Mat
    relaxed: bool = False

    def __post_init__(self):
        cs = self.constituents
        if not cs:
            raise MxpError("need at least one constituent code")
        ctx = cs[0].ctx
        if any(c.ctx != ctx for c in cs) or self.A.ctx != ctx:
            raise MixedFields("constituents and defining matrix must share one field")
        if len({c.n for c in cs}) != 1:
            raise DimensionMismatch("constituents of different lengths")
        if self.A.rows != len(cs):
            raise DimensionMismatch(f"A has {self.A.rows} rows for {len(cs)} constituents")
        if self.A.rows > self.A.cols:
            raise DimensionMismatch(f"A is {self.A.shape}; need k <= t")
        if not self.relaxed and rank(self.A) < self.A.rows:
            raise RankDeficientA("defining matrix is not of full row rank")

    @property
    def ctx(self) -> FieldCtx:
        return self.A.ctx

    @property
    def k(self) -> int:
        return self.A.rows

    @property
    def t(self) -> int:
        return self.A.cols

    @property
    def n(self) -> int:
        return self.constituents[0].n

    def to_json(self) -> dict:
        return {
            "field": self.ctx.descriptor(),
            "constituents": [c.to_json() for c in self.constituents],
            "A": self.A.to_json(),
            "relaxed": self.relaxed,
        }

    @classmethod
    def from_json(cls, d: dict) -> "MxpSpec":
        cs = tuple(LinearCode.from_json(c) for c in d["constituents"])
        A = Mat.from_json(d["A"], cs[0].ctx)
        return cls(cs, A, bool(d.get("relaxed", False)))


@dataclass(frozen=True)
class SigmaKron:
    """sigma on F_q^{tn} whose monomial matrix is ``outer ⊗ inner``."""

    outer: Monomial
    inner: Monomial
    s: int

    @classmethod
    def galois(cls, ctx: FieldCtx, t: int, n: int, ell: int) -> "SigmaKron":
        return cls(Monomial.identity(t), Monomial.identity(n), ctx.e - ell)

    @classmethod
    def random(cls, ctx: FieldCtx, t: int, n: int, rng, outer_identity: bool = False) -> "SigmaKron":
        outer = Monomial.identity(t) if outer_identity else Monomial.random(ctx, t, rng)
        return cls(outer, Monomial.random(ctx, n, rng), int(rng.integers(1, ctx.e + 1)))

    def full(self, ctx: FieldCtx) -> SigmaMap:
        return SigmaMap(ctx, self.outer.kron(self.inner, ctx), self.s)

    def inner_sigma(self, ctx: FieldCtx) -> SigmaMap:
        return SigmaMap(ctx, self.inner, self.s)

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"outer": self.outer.to_json(ctx), "inner": self.inner.to_json(ctx), "s": self.s}

    @classmethod
    def from_json(cls, d: dict, ctx: FieldCtx) -> "SigmaKron":
        s = int(d["s"])
        if not 1 <= s <= ctx.e:
            raise InvalidSigma(f"Frobenius exponent s={s} outside [1, {ctx.e}]")
        return cls(Monomial.from_json(d["outer"], ctx), Monomial.from_json(d["inner"], ctx), s)


def generator(spec: MxpSpec) -> Mat:
    ctx = spec.ctx
    blocks = block_diag(*[c.gen for c in spec.constituents])
    return blocks @ kron(spec.A, Mat.identity(ctx, spec.n))


def build(spec: MxpSpec) -> LinearCode:
    return LinearCode.from_generator(generator(spec))


def codeword_matrix(ctx: FieldCtx, words, A: Mat) -> Mat:
    """The ``n x t`` matrix ``[c_1 ... c_k] A`` with the ``c_i`` as columns."""
    C = Mat(ctx, np.asarray(words, dtype=np.int64).T)
    return C @ A


def flatten_columns(m: Mat) -> np.ndarray:
    """Read an ``n x t`` codeword matrix column by column into a length ``tn`` vector."""
    return m.data.T.reshape(-1).copy()


def sigma_dual_mxp(spec: MxpSpec, sk: SigmaKron, verify: bool = True) -> MxpSpec:
    """Dual of ``C(A)`` under a Kronecker-form sigma, as another matrix-product code."""
    ctx = spec.ctx
    if spec.k != spec.t:
        raise NotSquare(f"defining matrix is {spec.A.shape}")
    if not is_invertible(spec.A):
        raise SingularDefining("defining matrix is singular")
    if sk.outer.n != spec.k or sk.inner.n != spec.n:
        raise DimensionMismatch("sigma does not match the code shape")
    inner = sk.inner_sigma(ctx)
    B = inverse(sk.outer.matrix(ctx).T @ map_frobenius(spec.A, sk.s).T)
    out = MxpSpec(tuple(sigma_dual(c, inner) for c in spec.constituents), B)
    if verify:
        lhs = build(out)
        rhs = sigma_dual(build(spec), sk.full(ctx))
        if lhs != rhs:
            raise VerificationFailure("matrix-product dual formula disagrees with the direct dual")
    return out


def verify_block_identity(B: Mat, sigma: SigmaMap, A: Mat, inner: list[Monomial]) -> bool:
    """Check ``(B ⊗ I)(M^T)(pi_s(A)^T ⊗ I) == diag(M_1^T, ..., M_k^T)`` exactly."""
    ctx = A.ctx
    k = A.rows
    if B.shape != (k, k) or A.shape != (k, k) or len(inner) != k:
        raise DimensionMismatch("B, A and the inner monomials must all have k = rows(A)")
    n = inner[0].n
    if sigma.n != k * n or any(m.n != n for m in inner):
        raise DimensionMismatch("sigma length must equal k * n")
    I = Mat.identity(ctx, n)
    lhs = kron(B, I) @ sigma.matrix().T @ kron(map_frobenius(A, sigma.s).T, I)
    rhs = block_diag(*[m.matrix(ctx).T for m in inner])
    return lhs == rhs


def sigma_dual_mxp_general(spec: MxpSpec, sigma: SigmaMap, B: Mat, inner: list[Monomial],
                           verify: bool = True) -> MxpSpec:
    """Dual for an arbitrary sigma, given a ``B`` and inner monomials satisfying the block identity."""
    if not verify_block_identity(B, sigma, spec.A, inner):
        raise MxpError("B does not satisfy the block identity for this sigma")
    ctx = spec.ctx
    cons = tuple(sigma_dual(c, SigmaMap(ctx, m, sigma.s)) for c, m in zip(spec.constituents, inner))
    out = MxpSpec(cons, B)
    if verify and build(out) != sigma_dual(build(spec), sigma):
        raise VerificationFailure("matrix-product dual formula disagrees with the direct dual")
    return out


def hull_multipliers(spec: MxpSpec, sk: SigmaKron) -> list[int]:
    """The diagonal of ``A M_outer^T pi_s(A)^T``; raises when it is not diagonal."""
    ctx = spec.ctx
    if sk.outer.n != spec.t or sk.inner.n != spec.n:
        raise DimensionMismatch("sigma does not match the code shape")
    gram = spec.A @ sk.outer.matrix(ctx).T @ map_frobenius(spec.A, sk.s).T
    d = np.diag(gram.data).copy()
    off = gram.data - np.diag(d)
    if off.any():
        raise NotQuasiDiagonal(f"A M^T pi_s(A)^T is not diagonal: {gram.data.tolist()}")
    return [int(x) for x in d]


def sigma_hull_mxp(spec: MxpSpec, sk: SigmaKron, verify: bool = True) -> tuple[HullReport, list[int]]:
    ctx = spec.ctx
    mu = hull_multipliers(spec, sk)
    inner = sk.inner_sigma(ctx)
    parts = []
    predicted = 0
    for c, m in zip(spec.constituents, mu):
        if m == 0:
            parts.append(c)
            predicted += c.k
        else:
            h = hull(c, inner, verify=verify)
            parts.append(LinearCode.from_generator(h.basis) if verify else _hull_code(c, inner))
            predicted += parts[-1].k
    formula = build(MxpSpec(tuple(parts), spec.A, relaxed=spec.relaxed))
    dims = {"formula": formula.k, "blockwise": predicted}
    if not verify:
        return HullReport(formula.k, None, formula.gen, "mxp-hull", dims), mu
    oracle = hull(build(spec), sk.full(ctx))
    rep = HullReport(formula.k, oracle.oracle_dim, formula.gen, "mxp-hull", dims)
    if not rep.consistent or not same_row_space(formula.gen, oracle.basis):
        raise VerificationFailure(f"matrix-product hull formula disagrees with the oracle: {rep.to_json()}")
    return rep, mu


def _hull_code(c: LinearCode, sigma: SigmaMap) -> LinearCode:
    return LinearCode.from_generator(rowspace_intersect(c.gen, sigma_dual(c, sigma).gen))


def diagonal_ratio(A: Mat, B: Mat) -> list[int]:
    if A.shape != B.shape or A.rows != A.cols:
        raise NotSquare("A and B must be square of the same size")
    if not is_invertible(A):
        raise SingularDefining("A is singular")
    R = B @ inverse(A)
    d = np.diag(R.data).copy()
    if (R.data - np.diag(d)).any():
        raise NotDiagonalRatio(f"B A^-1 is not diagonal: {R.data.tolist()}")
    return [int(x) for x in d]


def intersect_mxp(spec_a: MxpSpec, spec_b: MxpSpec, verify: bool = True) -> tuple[LinearCode, list[int]]:
    """``C(A) ∩ D(B)`` when ``B A^{-1}`` is diagonal.

    A zero ratio entry makes ``B`` rank deficient; that is only accepted when ``spec_b`` was
    built with ``relaxed=True``.
    """
    mu = diagonal_ratio(spec_a.A, spec_b.A)
    if any(m == 0 for m in mu) and not spec_b.relaxed:
        raise RankDeficientA("a zero ratio entry needs a relaxed second spec")
    parts = []
    for c, d, m in zip(spec_a.constituents, spec_b.constituents, mu):
        if m == 0:
            parts.append(d)
        else:
            parts.append(LinearCode.from_generator(rowspace_intersect(c.gen, d.gen)))
    out = build(MxpSpec(tuple(parts), spec_b.A, relaxed=True))
    if verify:
        oracle = rowspace_intersect(build(spec_a).gen, build(spec_b).gen)
        if not same_row_space(out.gen, oracle):
            raise VerificationFailure("matrix-product intersection formula disagrees with the oracle")
    return out, mu


def _form_matrix(A: Mat, flavor: str) -> tuple[Mat, int]:
    ctx = A.ctx
    if flavor == "euclidean":
        s = ctx.e
    elif flavor == "hermitian":
        if ctx.e % 2:
            raise MxpError("Hermitian flavor needs an even extension degree")
        s = ctx.e // 2
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return A @ map_frobenius(A, s).T, s


def is_quasi_orthogonal(A: Mat, flavor: str = "euclidean") -> bool:
    S, _ = _form_matrix(A, flavor)
    d = np.diag(S.data)
    return not (S.data - np.diag(d)).any() and bool(np.all(d != 0))


def find_quasi_orthogonalizer(A: Mat, flavor: str = "euclidean", rng=None,
                              restarts: int = 64, tries: int = 64) -> Mat | None:
    """Left factor ``X`` such that ``X A`` has an invertible diagonal form matrix.

    Returns ``N`` with ``N^T A`` quasi-orthogonal (euclidean) or ``U`` with ``U A`` quasi-unitary
    (hermitian); None when the randomized Gram-Schmidt gives up.
    """
    ctx = A.ctx
    if A.rows != A.cols:
        raise NotSquare(f"defining matrix is {A.shape}")
    if not is_invertible(A):
        raise SingularDefining("defining matrix is singular")
    if is_quasi_orthogonal(A, flavor):
        return Mat.identity(ctx, A.rows)
    rng = np.random.default_rng(0) if rng is None else rng
    S, s = _form_matrix(A, flavor)
    k = A.rows
    for _ in range(restarts):
        X = _gram_schmidt(S, s, k, rng, tries)
        if X is None:
            continue
        XA = X @ A
        if is_quasi_orthogonal(XA, flavor):
            return X.T if flavor == "euclidean" else X
    return None


def _gram_schmidt(S: Mat, s: int, k: int, rng, tries: int) -> Mat | None:
    ctx = S.ctx
    e = ctx.e
    W = Mat.identity(ctx, k)
    chosen = []
    for _ in range(k):
        found = None
        for _ in range(tries):
            c = rng.integers(0, ctx.q, size=W.rows)
            if not c.any():
                continue
            y = (Mat._wrap(ctx, c.reshape(1, -1)) @ W)
            if (y @ S @ map_frobenius(y, s).T).data[0, 0] != 0:
                found = y
                break
        if found is None:
            return None
        chosen.append(found.data[0])
        # keep z in W with b(y, z) = 0; the condition is linear in pi_s(c), so undo pi_s first
        v = found @ S @ map_frobenius(W, s).T
        v = map_frobenius(v, e - s)
        K = kernel(v)
        if K.rows == 0:
            W = Mat.zeros(ctx, 0, k)
        else:
            W = K @ W
    return Mat(ctx, np.array(chosen, dtype=np.int64))
