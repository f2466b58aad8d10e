"""Generalized Reed-Solomon codes, their extended versions and sigma-dual membership.

For evaluation points ``a`` and column multipliers ``v``, ``GRS_k(a, v)`` holds the vectors
``(v_1 f(a_1), ..., v_n f(a_n))`` with ``deg f <= k-1``.  The extended code appends the
coefficient ``f_{k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import LinearCode, VerificationFailure, sigma_dual
from .gf import FieldCtx, field_from_descriptor
from .linalg import (
    DimensionMismatch,
    Mat,
    kernel,
    map_frobenius,
    rowspace_intersect,
    same_row_space,
    solve_left,
)
from .semilinear import SigmaMap, sigma_gram


class GrsError(ValueError):
    pass


class RepeatedPoint(GrsError):
    pass


class DegreeTooHigh(GrsError):
    pass


class NotACodeword(GrsError):
    pass


class UnsupportedPermutation(GrsError):
    pass


@dataclass(frozen=True)
class Poly:
    """Polynomial over a field, ascending coefficients with trailing zeros removed."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def coeff(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, x):
        return poly_eval(self.ctx, self.coeffs, x)

    def is_zero(self) -> bool:
        return not self.coeffs


def poly_eval(ctx: FieldCtx, coeffs, x):
    """Horner evaluation; ``x`` may be an array of points."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(list(coeffs)):
        acc = np.asarray(ctx.add(ctx.mul(acc, x), int(c)), dtype=np.int64)
    return acc


def poly_mul(ctx: FieldCtx, a, b) -> list[int]:
    if not len(a) or not len(b):
        return []
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        if x:
            seg = out[i : i + len(b)]
            out[i : i + len(b)] = ctx.add(seg, ctx.mul(np.asarray(b, dtype=np.int64), int(x)))
    return [int(c) for c in out]


@dataclass(frozen=True, eq=False)
class GrsSpec:
    ctx: FieldCtx
    a: tuple[int, ...]
    v: tuple[int, ...]
    k: int
    extended: bool = False

    def __post_init__(self):
        if len(set(self.a)) != len(self.a):
            raise RepeatedPoint("evaluation points must be distinct")
        if len(self.v) != len(self.a):
            raise DimensionMismatch(f"{len(self.a)} points but {len(self.v)} multipliers")
        if any(x == 0 for x in self.v):
            raise GrsError("column multipliers must be nonzero")
        top = len(self.a) + (1 if self.extended else 0)
        if not 1 <= self.k <= top:
            raise GrsError(f"k={self.k} outside [1, {top}]")

    @property
    def n_points(self) -> int:
        return len(self.a)

    @property
    def length(self) -> int:
        return len(self.a) + (1 if self.extended else 0)

    def code(self) -> LinearCode:
        return LinearCode.from_generator(generator(self))

    def with_v(self, v) -> "GrsSpec":
        return GrsSpec(self.ctx, self.a, tuple(int(x) for x in v), self.k, self.extended)

    def to_json(self) -> dict:
        c = self.ctx.to_coeffs
        return {
            "field": self.ctx.descriptor(),
            "a": [c(x) for x in self.a],
            "v": [c(x) for x in self.v],
            "k": self.k,
            "extended": self.extended,
        }

    @classmethod
    def from_json(cls, d: dict) -> "GrsSpec":
        ctx = field_from_descriptor(d["field"])

        def elt(x):
            return ctx.from_coeffs(x) if isinstance(x, list) else int(x)

        return cls(ctx, tuple(elt(x) for x in d["a"]), tuple(elt(x) for x in d["v"]),
                   int(d["k"]), bool(d.get("extended", False)))


def u_vector(ctx: FieldCtx, a) -> np.ndarray:
    """``u_i = prod_{j != i} (a_i - a_j)^{-1}``."""
    a = np.asarray(a, dtype=np.int64)
    if len(set(a.tolist())) != a.size:
        raise RepeatedPoint("evaluation points must be distinct")
    n = a.size
    diff = np.asarray(ctx.sub(a[:, None], a[None, :]), dtype=np.int64).reshape(n, n)
    np.fill_diagonal(diff, 1)
    if ctx.has_tables:
        logs = ctx.log_table[diff].sum(axis=1) % (ctx.q - 1)
        prod = ctx.exp_table[logs]
    else:
        prod = np.ones(n, dtype=np.int64)
        for j in range(n):
            prod = np.asarray(ctx.mul(prod, diff[:, j]))
    return np.asarray(ctx.inv(prod), dtype=np.int64).reshape(n)


def vandermonde(ctx: FieldCtx, a, rows: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    V = np.zeros((rows, a.size), dtype=np.int64)
    cur = np.ones(a.size, dtype=np.int64)
    for r in range(rows):
        V[r] = cur
        cur = np.asarray(ctx.mul(cur, a), dtype=np.int64)
    return V


def generator(spec: GrsSpec) -> Mat:
    """The Vandermonde-with-multipliers generator; extended codes add a last column that is 1 only in the bottom row."""
    ctx = spec.ctx
    V = vandermonde(ctx, spec.a, spec.k)
    G = np.asarray(ctx.mul(V, np.asarray(spec.v, dtype=np.int64)[None, :]), dtype=np.int64).reshape(V.shape)
    if spec.extended:
        last = np.zeros((spec.k, 1), dtype=np.int64)
        last[-1, 0] = 1
        G = np.hstack([G, last])
    return Mat(ctx, G)


def encode(spec: GrsSpec, f) -> np.ndarray:
    coeffs = f.coeffs if isinstance(f, Poly) else Poly(spec.ctx, tuple(f)).coeffs
    if len(coeffs) > spec.k:
        raise DegreeTooHigh(f"degree {len(coeffs) - 1} exceeds k-1 = {spec.k - 1}")
    ctx = spec.ctx
    vals = poly_eval(ctx, coeffs, np.asarray(spec.a, dtype=np.int64))
    word = np.asarray(ctx.mul(vals, np.asarray(spec.v, dtype=np.int64)), dtype=np.int64)
    if spec.extended:
        lead = coeffs[spec.k - 1] if len(coeffs) == spec.k else 0
        word = np.append(word, lead)
    return word


def _dual_rows(ctx: FieldCtx, a, u, deg: int, extended: bool, s: int) -> Mat:
    """Rows ``pi_s(u_i g(a_i))`` (and ``-pi_s(g_top)``) for ``g = 1, x, ..., x^deg``."""
    n = len(a)
    if deg < 0:
        return Mat.zeros(ctx, 0, n + (1 if extended else 0))
    V = vandermonde(ctx, a, deg + 1)
    R = np.asarray(ctx.mul(V, np.asarray(u, dtype=np.int64)[None, :]), dtype=np.int64).reshape(V.shape)
    if extended:
        last = np.zeros((deg + 1, 1), dtype=np.int64)
        last[-1, 0] = ctx.neg(1)
        R = np.hstack([R, last])
    return map_frobenius(Mat(ctx, R), s)


def check_dual_identities(ctx: FieldCtx, a, k: int, s: int) -> tuple[bool, bool, bool, bool]:
    """Materialise the four GRS duality statements (plain, extended, and their Frobenius twists)."""
    a = tuple(int(x) for x in a)
    n = len(a)
    if not 1 <= k <= n:
        raise GrsError(f"k={k} outside [1, {n}]")
    u = u_vector(ctx, a)
    ones = (1,) * n
    out = []
    for twist in (ctx.e, s):
        plain = GrsSpec(ctx, a, ones, k)
        lhs = kernel(map_frobenius(generator(plain), twist))
        rhs = _dual_rows(ctx, a, u, n - k - 1, False, twist)
        out.append(same_row_space(lhs, rhs))
        ext = GrsSpec(ctx, a, ones, k, extended=True)
        lhs = kernel(map_frobenius(generator(ext), twist))
        rhs = _dual_rows(ctx, a, u, n - k, True, twist)
        out.append(same_row_space(lhs, rhs))
    return tuple(out)  # (plain, extended, plain twisted, extended twisted)


def interpolate_message(spec: GrsSpec, c) -> Poly | None:
    """The ``f`` with ``c = encode(spec, f)``, or None when ``c`` is not a codeword."""
    ctx = spec.ctx
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (spec.length,):
        raise DimensionMismatch(f"word of length {c.size}, code length {spec.length}")
    x = solve_left(generator(spec), c)
    return None if x is None else Poly(ctx, tuple(int(t) for t in x))


def _check_sigma(spec: GrsSpec, sigma: SigmaMap, general_perm: bool) -> None:
    if sigma.n != spec.length or sigma.ctx != spec.ctx:
        raise DimensionMismatch("sigma does not act on this code's ambient space")
    if spec.extended and not general_perm and sigma.monomial.perm[-1] != spec.n_points:
        raise UnsupportedPermutation("permutation moves the infinity coordinate")


def in_sigma_dual(spec: GrsSpec, c, sigma: SigmaMap, general_perm: bool = False,
                  require_codeword: bool = True, cross_check: bool = True) -> Poly | None:
    """Witness polynomial ``g`` certifying ``c`` lies in the sigma-dual of the code, else None.

    The twisted word ``w = c P^T diag(mu_i pi_s(v_i), [mu_{n+1}])`` must equal the Frobenius image
    of ``(u_i g(a_i), [-g_top])`` with ``deg g <= n-k-1`` (``n-k`` when extended).
    """
    ctx = spec.ctx
    _check_sigma(spec, sigma, general_perm)
    c = np.asarray(c, dtype=np.int64).reshape(-1)
    if require_codeword and interpolate_message(spec, c) is None:
        raise NotACodeword("word is not in the code")
    n = spec.n_points
    mono = sigma.monomial
    inv_perm = np.empty(spec.length, dtype=np.int64)
    inv_perm[list(mono.perm)] = np.arange(spec.length)
    scale = np.asarray(ctx.mul(np.asarray(mono.diag[:n], dtype=np.int64),
                               ctx.frobenius(np.asarray(spec.v, dtype=np.int64), sigma.s)))
    if spec.extended:
        scale = np.append(scale, mono.diag[n])
    w = np.asarray(ctx.mul(c[inv_perm], scale), dtype=np.int64)
    # undo pi_s so the right side is linear in the coefficients of g
    target = np.asarray(ctx.frobenius(w, ctx.e - sigma.s), dtype=np.int64)
    deg = n - spec.k - (0 if spec.extended else 1)
    witness = _solve_witness(ctx, spec.a, target, deg, spec.extended)
    if cross_check:
        direct = direct_membership(spec, c, sigma)
        if direct != (witness is not None):
            raise VerificationFailure("witness system and direct inner products disagree")
    return witness


def _solve_witness(ctx: FieldCtx, a, target, deg: int, extended: bool) -> Poly | None:
    a = np.asarray(a, dtype=np.int64)
    u = u_vector(ctx, a)
    if deg < 0:
        return Poly(ctx, ()) if not np.any(target) else None
    # column i of the system: u_i a_i^j for j = 0..deg, plus the infinity equation -g_deg
    rows = _dual_rows(ctx, a, u, deg, extended, ctx.e)
    coef = solve_left(rows, target)
    return None if coef is None else Poly(ctx, tuple(int(t) for t in coef))


def direct_membership(spec: GrsSpec, c, sigma: SigmaMap) -> bool:
    """Oracle: ``<c, g>_sigma = 0`` for every generator row ``g``."""
    G = generator(spec)
    cm = Mat(spec.ctx, np.asarray(c, dtype=np.int64).reshape(1, -1))
    return sigma_gram(cm, G, sigma).is_zero()


def galois_hull_witness(spec: GrsSpec, c, ell: int) -> Poly | None:
    """ell-Galois form: ``v_i^(p^ell+1) f(a_i)^(p^ell) = u_i g(a_i)`` (and ``f_top^(p^ell) = -g_top``)."""
    ctx = spec.ctx
    f = interpolate_message(spec, c)
    if f is None:
        raise NotACodeword("word is not in the code")
    a = np.asarray(spec.a, dtype=np.int64)
    pl = ctx.p**ell
    lhs = ctx.mul(ctx.pow(np.asarray(spec.v, dtype=np.int64), pl + 1), ctx.pow(f(a), pl))
    lhs = np.asarray(lhs, dtype=np.int64)
    if spec.extended:
        lhs = np.append(lhs, ctx.pow(f.coeff(spec.k - 1), pl))
    deg = spec.n_points - spec.k - (0 if spec.extended else 1)
    return _solve_witness(ctx, a, lhs, deg, spec.extended)


def galois_sigma(spec: GrsSpec, ell: int) -> SigmaMap:
    return SigmaMap.galois(spec.ctx, spec.length, ell)


def sigma_hull_code(spec: GrsSpec, sigma: SigmaMap) -> LinearCode:
    C = spec.code()
    return LinearCode.from_generator(rowspace_intersect(C.gen, sigma_dual(C, sigma).gen))

