"""Linear codes, sigma-duals, intersections and hulls.

Every dimension computed from a rank identity can be cross-checked against a plain
row-space intersection; :class:`HullReport` carries both numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldCtx, field_from_descriptor
from .linalg import (
    DimensionMismatch,
    Mat,
    kernel,
    map_frobenius,
    rank,
    rowspace_intersect,
    rref,
    same_row_space,
    vstack,
)
from .semilinear import Monomial, SigmaMap, apply_sigma

MIN_DISTANCE_LIMIT = 1 << 22


class TooLarge(RuntimeError):
    pass


class VerificationFailure(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx
    n: int
    gen: Mat

    def __post_init__(self):
        if self.gen.cols != self.n:
            raise DimensionMismatch(f"generator has {self.gen.cols} columns, code length {self.n}")

    @classmethod
    def from_generator(cls, g: Mat) -> "LinearCode":
        return cls(g.ctx, g.cols, rref(g)[0])

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows, n: int | None = None) -> "LinearCode":
        m = Mat(ctx, rows, cols=n)
        return cls.from_generator(m)

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "LinearCode":
        return cls(ctx, n, Mat.zeros(ctx, 0, n))

    @classmethod
    def full(cls, ctx: FieldCtx, n: int) -> "LinearCode":
        return cls(ctx, n, Mat.identity(ctx, n))

    @classmethod
    def random(cls, ctx: FieldCtx, n: int, k: int, rng: np.random.Generator) -> "LinearCode":
        from .linalg import random_full_rank

        return cls.from_generator(random_full_rank(ctx, k, n, rng))

    @property
    def k(self) -> int:
        return self.gen.rows

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.gen == other.gen
        )

    def __hash__(self):
        return hash(self.gen)

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over {self.ctx!r})"

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank(vstack(self.gen, Mat(self.ctx, v))) == self.k

    def is_subcode_of(self, other: "LinearCode") -> bool:
        return rank(vstack(other.gen, self.gen)) == other.k

    def codewords(self) -> np.ndarray:
        """All ``q^k`` codewords (small codes only)."""
        q, k = self.ctx.q, self.k
        if q**k > MIN_DISTANCE_LIMIT:
            raise TooLarge(f"{q}^{k} codewords exceeds {MIN_DISTANCE_LIMIT}")
        if k == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        msgs = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64).reshape(-1, k)
        return (Mat._wrap(self.ctx, msgs) @ self.gen).data

    def to_json(self) -> dict:
        return {"field": self.ctx.descriptor(), "n": self.n, "gen": self.gen.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "LinearCode":
        ctx = field_from_descriptor(d["field"])
        g = d["gen"]
        if isinstance(g, dict):
            m = Mat.from_json(g, ctx)
        else:
            m = Mat(ctx, [[ctx.from_coeffs(x) if isinstance(x, list) else int(x) for x in row] for row in g], cols=int(d["n"]))
        return cls.from_generator(m)


def _check_sigma(C: LinearCode, sigma: SigmaMap) -> None:
    if sigma.n != C.n:
        raise DimensionMismatch(f"sigma acts on {sigma.n} coordinates, code length {C.n}")
    if sigma.ctx != C.ctx:
        raise DimensionMismatch("sigma and code over different fields")


def parity_check(C: LinearCode) -> Mat:
    return kernel(C.gen)


def sigma_image(C: LinearCode, sigma: SigmaMap) -> LinearCode:
    _check_sigma(C, sigma)
    return LinearCode.from_generator(Mat._wrap(C.ctx, apply_sigma(sigma, C.gen.data).reshape(C.gen.shape)))


def euclidean_dual(C: LinearCode) -> LinearCode:
    return LinearCode.from_generator(parity_check(C))


def sigma_dual_generator(C: LinearCode, sigma: SigmaMap) -> Mat:
    """``pi_s(H) (M^{-1})^T`` with ``H`` the parity-check matrix (not row-reduced)."""
    _check_sigma(C, sigma)
    H = parity_check(C)
    Minv_T = sigma.monomial.inverse(C.ctx).matrix(C.ctx).T
    return map_frobenius(H, sigma.s) @ Minv_T


def sigma_dual(C: LinearCode, sigma: SigmaMap) -> LinearCode:
    return LinearCode.from_generator(sigma_dual_generator(C, sigma))


def sigma_dual_direct(C: LinearCode, sigma: SigmaMap) -> LinearCode:
    """Oracle: vectors orthogonal to every ``sigma(g)``, straight from the definition."""
    _check_sigma(C, sigma)
    S = Mat._wrap(C.ctx, apply_sigma(sigma, C.gen.data).reshape(C.gen.shape))
    return LinearCode.from_generator(kernel(S))


def galois_dual(C: LinearCode, ell: int) -> LinearCode:
    return sigma_dual(C, SigmaMap.galois(C.ctx, C.n, ell))


def galois_dual_alt(C: LinearCode, ell: int) -> LinearCode:
    """``{a : sum_i c_i a_i^(p^ell) = 0}`` computed as ``pi_{e-ell}`` of the Euclidean dual."""
    return LinearCode.from_generator(map_frobenius(parity_check(C), C.ctx.e - ell))


def hermitian_dual_direct(C: LinearCode) -> LinearCode:
    if C.ctx.e % 2:
        raise ValueError("Hermitian dual needs an even extension degree")
    return LinearCode.from_generator(kernel(map_frobenius(C.gen, C.ctx.e // 2)))


def check_image_dual_transport(C: LinearCode, sigma: SigmaMap) -> bool:
    """sigma(C^perp) == sigma(C)^perp M^T M as subspaces."""
    _check_sigma(C, sigma)
    ctx = C.ctx
    M = sigma.matrix()
    H = parity_check(C)
    lhs = Mat._wrap(ctx, apply_sigma(sigma, H.data).reshape(H.shape))
    rhs = euclidean_dual(sigma_image(C, sigma)).gen @ (M.T @ M)
    return same_row_space(lhs, rhs)


def check_parity_transport(C: LinearCode, sigma: SigmaMap, H: Mat | None = None) -> bool:
    """pi_{e-s}(H M^T) generates the Euclidean dual when H generates the sigma-dual."""
    _check_sigma(C, sigma)
    if H is None:
        H = sigma_dual_generator(C, sigma)
    lhs = map_frobenius(H @ sigma.matrix().T, C.ctx.e - sigma.s)
    return same_row_space(lhs, parity_check(C))


@dataclass
class HullReport:
    method_dim: int
    oracle_dim: int | None
    basis: Mat
    identity_used: str
    dims: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        vals = set(self.dims.values())
        if self.oracle_dim is not None:
            vals.add(self.oracle_dim)
        vals.add(self.method_dim)
        return len(vals) == 1

    def to_json(self, with_basis: bool = False) -> dict:
        d = {
            "method_dim": self.method_dim,
            "oracle_dim": self.oracle_dim,
            "identity_used": self.identity_used,
            "dims": dict(self.dims),
            "consistent": self.consistent,
        }
        if with_basis:
            d["basis"] = self.basis.to_json()
        return d


def _assert_consistent(rep: HullReport) -> HullReport:
    if not rep.consistent:
        raise VerificationFailure(f"rank identities disagree: {rep.to_json()}")
    return rep


def intersection_dims(C1: LinearCode, C2: LinearCode, sigma: SigmaMap, which: int = 1,
                      H_other: Mat | None = None) -> dict:
    """Both expressions of the intersection rank identity for one ordering of the pair."""
    a, b = (C1, C2) if which == 1 else (C2, C1)
    _check_sigma(a, sigma)
    _check_sigma(b, sigma)
    e, s = a.ctx.e, sigma.s
    M = sigma.matrix()
    Hb = H_other if H_other is not None else sigma_dual_generator(b, sigma)
    G = a.gen
    form1 = map_frobenius(Hb @ M.T, e - s) @ G.T
    form2 = G @ map_frobenius(M @ Hb.T, e - s)
    return {f"intersect{which}a": a.k - rank(form1), f"intersect{which}b": a.k - rank(form2)}


def intersection_dim(C1: LinearCode, C2: LinearCode, sigma: SigmaMap, which: int = 1,
                     verify: bool = True) -> HullReport:
    """``dim(C1 ∩ C2)`` via a rank identity against the sigma-dual of the other code."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if C1.n != C2.n or C1.ctx != C2.ctx:
        raise DimensionMismatch("codes of different lengths or fields")
    dims = intersection_dims(C1, C2, sigma, which)
    method = dims[f"intersect{which}a"]
    basis = rowspace_intersect(C1.gen, C2.gen) if verify else Mat.zeros(C1.ctx, 0, C1.n)
    rep = HullReport(method, basis.rows if verify else None, basis, f"intersect-{which}", dims)
    return _assert_consistent(rep) if verify else rep


def hull_dims(C: LinearCode, sigma: SigmaMap) -> dict:
    _check_sigma(C, sigma)
    e, s = C.ctx.e, sigma.s
    M = sigma.matrix()
    G = C.gen
    H = sigma_dual_generator(C, sigma)
    from_g = C.k - rank(map_frobenius(G, s) @ M @ G.T)
    from_h = (C.n - C.k) - rank(map_frobenius(H @ M.T, e - s) @ H.T)
    return {"from_generator": from_g, "from_dual_generator": from_h}


def hull(C: LinearCode, sigma: SigmaMap, verify: bool = True) -> HullReport:
    """Hull dimension via the generator and dual-generator rank identities, plus the oracle."""
    dims = hull_dims(C, sigma)
    if not verify:
        return HullReport(dims["from_generator"], None, Mat.zeros(C.ctx, 0, C.n), "hull-G", dims)
    basis = rowspace_intersect(C.gen, sigma_dual(C, sigma).gen)
    rep = HullReport(dims["from_generator"], basis.rows, basis, "hull-G", dims)
    return _assert_consistent(rep)


def galois_hull_dims(C: LinearCode, ell: int) -> dict:
    """The ell-Galois specialisations, including the one built from the parity-check matrix."""
    ctx = C.ctx
    e = ctx.e
    G = C.gen
    H = galois_dual(C, ell).gen
    return {
        "G_piGT": C.k - rank(G @ map_frobenius(G.T, e - ell)),
        "piG_GT": C.k - rank(map_frobenius(G, e - ell) @ G.T),
        "piH_HT": (C.n - C.k) - rank(map_frobenius(H, ell) @ H.T),
        "parity": hull_dim_from_parity(C, ell),
    }


def galois_hull(C: LinearCode, ell: int, verify: bool = True) -> HullReport:
    sigma = SigmaMap.galois(C.ctx, C.n, ell)
    rep = hull(C, sigma, verify=verify)
    rep.dims.update(galois_hull_dims(C, ell))
    rep.identity_used = f"galois-{ell}"
    return _assert_consistent(rep) if verify else rep


def hull_dim_from_parity(C: LinearCode, ell: int, Hhat: Mat | None = None) -> int:
    Hhat = parity_check(C) if Hhat is None else Hhat
    if Hhat.rows == 0:
        return 0
    return (C.n - C.k) - rank(Hhat @ map_frobenius(Hhat.T, C.ctx.e - ell))


def galois_hull_dim(C: LinearCode, ell: int) -> int:
    """Fast path: one rank computation, no oracle."""
    G = C.gen
    return C.k - rank(G @ map_frobenius(G.T, C.ctx.e - ell))


def min_distance(C: LinearCode, limit: int = MIN_DISTANCE_LIMIT) -> int:
    """Minimum weight by enumerating one representative per projective point of the message space."""
    q, k, n = C.ctx.q, C.k, C.n
    if k == 0:
        return n + 1  # convention: the zero code has no nonzero codeword
    if q**k > limit:
        raise TooLarge(f"q^k = {q}^{k} exceeds the enumeration bound {limit}")
    best = n
    G = C.gen
    for lead in range(k):
        # messages (0,...,0,1,*,...,*) with the 1 in position `lead`
        free = k - lead - 1
        total = q**free
        chunk = max(1, min(total, (1 << 16) // max(1, n)))
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            msgs = np.zeros((idx.size, k), dtype=np.int64)
            msgs[:, lead] = 1
            rem = idx.copy()
            for j in range(k - 1, lead, -1):
                msgs[:, j] = rem % q
                rem //= q
            words = (Mat._wrap(C.ctx, msgs) @ G).data
            w = int(np.count_nonzero(words, axis=1).min())
            best = min(best, w)
            if best == 1:
                return 1
    return best


def is_mds(C: LinearCode, limit: int = MIN_DISTANCE_LIMIT) -> bool:
    return min_distance(C, limit) == C.n - C.k + 1


def is_mds_by_minors(C: LinearCode) -> bool:
    """MDS test without enumeration: the systematic part must have no zero minor.

    Equivalent to every k columns of the generator being independent; only used for
    tiny ``n`` where ``C(n, k)`` is small.
    """
    from math import comb

    n, k = C.n, C.k
    if comb(n, k) > 20000:
        raise TooLarge(f"C({n},{k}) column subsets")
    for cols in itertools.combinations(range(n), k):
        if rank(Mat._wrap(C.ctx, C.gen.data[:, list(cols)])) < k:
            return False
    return True


__all__ = [
    "HullReport",
    "LinearCode",
    "Monomial",
    "SigmaMap",
    "TooLarge",
    "VerificationFailure",
    "check_image_dual_transport",
    "check_parity_transport",
    "euclidean_dual",
    "galois_dual",
    "galois_dual_alt",
    "galois_hull",
    "galois_hull_dim",
    "galois_hull_dims",
    "hermitian_dual_direct",
    "hull",
    "hull_dim_from_parity",
    "hull_dims",
    "intersection_dim",
    "intersection_dims",
    "is_mds",
    "min_distance",
    "parity_check",
    "sigma_dual",
    "sigma_dual_direct",
    "sigma_dual_generator",
    "sigma_image",
]
