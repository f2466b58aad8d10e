"""Semilinear isometries ``sigma = (tau, pi_s)`` of F_q^n.

A monomial matrix is ``M = D P`` with ``P[tau(i), i] = 1``, i.e. row ``tau(i)`` of ``P`` is
row ``i`` of the identity.  Then ``(t P)_j = t_{tau(j)}`` and ``(t P^T)_j = t_{tau^{-1}(j)}``.
The isometry acts on row vectors by ``c -> pi_s(c) M``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx, field_from_descriptor
from .linalg import DimensionMismatch, Mat


class InvalidSigma(ValueError):
    pass


@dataclass(frozen=True)
class Monomial:
    perm: tuple[int, ...]  # 0-indexed tau
    diag: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise InvalidSigma(f"{list(self.perm)} is not a permutation of 0..{n - 1}")
        if len(self.diag) != n:
            raise InvalidSigma(f"diag has length {len(self.diag)}, expected {n}")
        if any(d == 0 for d in self.diag):
            raise InvalidSigma("diagonal entries must be nonzero")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Monomial":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_perm(cls, perm, diag=None) -> "Monomial":
        perm = tuple(int(x) for x in perm)
        diag = (1,) * len(perm) if diag is None else tuple(int(x) for x in diag)
        return cls(perm, diag)

    @classmethod
    def random(cls, ctx: FieldCtx, n: int, rng: np.random.Generator) -> "Monomial":
        perm = tuple(int(x) for x in rng.permutation(n))
        diag = tuple(int(x) for x in rng.integers(1, ctx.q, size=n))
        return cls(perm, diag)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(d == 1 for d in self.diag)

    def perm_matrix(self, ctx: FieldCtx) -> Mat:
        P = np.zeros((self.n, self.n), dtype=np.int64)
        P[list(self.perm), list(range(self.n))] = 1
        return Mat._wrap(ctx, P)

    def matrix(self, ctx: FieldCtx) -> Mat:
        P = self.perm_matrix(ctx).data
        return Mat._wrap(ctx, ctx.mul(np.array(self.diag, dtype=np.int64)[:, None], P))

    def inverse(self, ctx: FieldCtx) -> "Monomial":
        # (D P)^{-1} = P^{-1} D^{-1} = D' P^{-1}  with D'_{j} = d_{tau(j)}^{-1}
        inv_perm = [0] * self.n
        for i, t in enumerate(self.perm):
            inv_perm[t] = i
        dinv = ctx.inv(np.array(self.diag, dtype=np.int64))
        new_diag = tuple(int(dinv[self.perm[j]]) for j in range(self.n))
        return Monomial(tuple(inv_perm), new_diag)

    def apply(self, ctx: FieldCtx, v) -> np.ndarray:
        """``v M`` for a row vector (or each row of a 2-d array)."""
        v = np.asarray(v, dtype=np.int64)
        if v.shape[-1] != self.n:
            raise DimensionMismatch(f"vector length {v.shape[-1]} vs monomial size {self.n}")
        perm = np.array(self.perm, dtype=np.int64)
        d = np.array(self.diag, dtype=np.int64)
        return np.asarray(ctx.mul(v[..., perm], d[perm]))

    def kron(self, other: "Monomial", ctx: FieldCtx) -> "Monomial":
        """Monomial whose matrix is ``self.matrix() ⊗ other.matrix()``."""
        n2 = other.n
        perm = []
        diag = []
        for j1 in range(self.n):
            for j2 in range(n2):
                perm.append(self.perm[j1] * n2 + other.perm[j2])
        for i1 in range(self.n):
            for i2 in range(n2):
                diag.append(int(ctx.mul(self.diag[i1], other.diag[i2])))
        return Monomial(tuple(perm), tuple(diag))

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"perm": [t + 1 for t in self.perm], "diag": [ctx.to_coeffs(d) for d in self.diag]}

    @classmethod
    def from_json(cls, d: dict, ctx: FieldCtx) -> "Monomial":
        perm = [int(t) - 1 for t in d["perm"]]
        diag = d.get("diag")
        if diag is None:
            diag = [1] * len(perm)
        diag = [ctx.from_coeffs(x) if isinstance(x, list) else int(x) for x in diag]
        return cls(tuple(perm), tuple(diag))


@dataclass(frozen=True)
class SigmaMap:
    ctx: FieldCtx
    monomial: Monomial
    s: int

    def __post_init__(self):
        if not 1 <= self.s <= self.ctx.e:
            raise InvalidSigma(f"Frobenius exponent s={self.s} outside [1, {self.ctx.e}]")

    @property
    def n(self) -> int:
        return self.monomial.n

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "SigmaMap":
        return cls(ctx, Monomial.identity(n), ctx.e)

    @classmethod
    def galois(cls, ctx: FieldCtx, n: int, ell: int) -> "SigmaMap":
        """The map whose dual is the ell-Galois dual: identity monomial, ``s = e - ell``."""
        if not 0 <= ell < ctx.e:
            raise InvalidSigma(f"ell={ell} outside [0, {ctx.e - 1}]")
        return cls(ctx, Monomial.identity(n), ctx.e - ell)

    @classmethod
    def hermitian(cls, ctx: FieldCtx, n: int) -> "SigmaMap":
        if ctx.e % 2:
            raise InvalidSigma("Hermitian form needs an even extension degree")
        return cls(ctx, Monomial.identity(n), ctx.e // 2)

    @classmethod
    def random(cls, ctx: FieldCtx, n: int, rng: np.random.Generator) -> "SigmaMap":
        return cls(ctx, Monomial.random(ctx, n, rng), int(rng.integers(1, ctx.e + 1)))

    def matrix(self) -> Mat:
        return self.monomial.matrix(self.ctx)

    def apply(self, v) -> np.ndarray:
        return apply_sigma(self, v)

    def to_json(self) -> dict:
        d = self.monomial.to_json(self.ctx)
        d["s"] = self.s
        return d

    @classmethod
    def from_json(cls, d: dict, ctx: FieldCtx | None = None) -> "SigmaMap":
        if ctx is None:
            ctx = field_from_descriptor(d["field"])
        s = int(d["s"])
        if not 1 <= s <= ctx.e:
            raise InvalidSigma(f"Frobenius exponent s={s} outside [1, {ctx.e}]")
        return cls(ctx, Monomial.from_json(d, ctx), s)


def apply_sigma(sigma: SigmaMap, v) -> np.ndarray:
    """``pi_s(v) M_tau``; accepts one vector or a stack of row vectors."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != sigma.n:
        raise DimensionMismatch(f"vector length {v.shape[-1]} vs sigma on {sigma.n} coordinates")
    return sigma.monomial.apply(sigma.ctx, np.asarray(sigma.ctx.frobenius(v, sigma.s)))


def sigma_inner(a, b, sigma: SigmaMap) -> int:
    """``sum_i a_i sigma(b)_i``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.shape[-1] != sigma.n:
        raise DimensionMismatch(f"inner product of shapes {a.shape}, {b.shape} on n={sigma.n}")
    ctx = sigma.ctx
    terms = np.atleast_1d(ctx.mul(a, apply_sigma(sigma, b)))
    acc = 0
    for t in terms.tolist():
        acc = ctx.add(acc, t)
    return int(acc)


def sigma_gram(A: Mat, B: Mat, sigma: SigmaMap) -> Mat:
    """Matrix of pairwise sigma inner products ``<A_i, B_j>``, i.e. ``A (pi_s(B) M)^T``."""
    SB = Mat._wrap(A.ctx, apply_sigma(sigma, B.data).reshape(B.shape))
    return A @ SB.T
