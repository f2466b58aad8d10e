"""Randomised and exhaustive property checks shared by ``selftest`` and the test suite.

Each check takes an instance count and a seed, compares a formula against a brute-force
oracle, and returns a :class:`CheckResult`.  Nothing here raises on a mismatch; failures are
counted and the first few are kept for the report.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import grs, mxp
from .code import (
    LinearCode,
    VerificationFailure,
    check_image_dual_transport,
    check_parity_transport,
    euclidean_dual,
    galois_dual,
    galois_dual_alt,
    galois_hull,
    hermitian_dual_direct,
    hull,
    intersection_dim,
    intersection_dims,
    sigma_dual,
    sigma_dual_direct,
    sigma_dual_generator,
)
from .families import (
    FAMILIES,
    VARIANTS,
    FamilySpec,
    compare_table,
    construct_mds_with_hull,
    legal_instances,
    smallest_cyclic_pair,
)
from .gf import FieldCtx, field_new, solve_power_eq, subfield_elements
from .linalg import Mat, inverse, kernel, map_frobenius, random_invertible, rank, rowspace_intersect, same_row_space
from .semilinear import Monomial, SigmaMap

MAX_KEPT = 5


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    failures: int = 0
    seconds: float = 0.0
    seed: int | None = None
    details: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.instances > 0

    def fail(self, info) -> None:
        self.failures += 1
        if len(self.details) < MAX_KEPT:
            self.details.append(info)

    def tally(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "instances": self.instances,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
            "seed": self.seed,
            "counts": dict(self.counts),
            "details": self.details,
        }


def _fields(specs) -> list[FieldCtx]:
    return [field_new(p, e) for p, e in specs]


def _random_code(ctx: FieldCtx, n: int, rng, kmin: int = 0) -> LinearCode:
    return LinearCode.random(ctx, n, int(rng.integers(kmin, n + 1)), rng)


def _scrambled(m: Mat, rng) -> Mat:
    if m.rows == 0:
        return m
    return random_invertible(m.ctx, m.rows, rng) @ m


# -- codes: rank identities and transport lemmas ------------------------------------------


def check_rank_identities(count: int = 500, seed: int = 0,
                          fields=((2, 2), (2, 3), (3, 2), (5, 2)), max_n: int = 12) -> CheckResult:
    """Intersection and hull rank identities (every form) against the row-space oracle."""
    res = CheckResult("rank identities", seed=seed)
    t0 = time.perf_counter()
    for ctx in _fields(fields):
        rng = np.random.default_rng([seed, ctx.q])
        for _ in range(count):
            n = int(rng.integers(1, max_n + 1))
            C1 = _random_code(ctx, n, rng)
            C2 = _random_code(ctx, n, rng)
            sigma = SigmaMap.random(ctx, n, rng)
            ell = int(rng.integers(0, ctx.e))
            res.instances += 1
            try:
                for which in (1, 2):
                    rep = intersection_dim(C1, C2, sigma, which)
                    oracle = rowspace_intersect(C1.gen, C2.gen).rows
                    if rep.oracle_dim != oracle or set(rep.dims.values()) != {oracle}:
                        res.fail({"q": ctx.q, "n": n, "which": which, "dims": rep.dims, "oracle": oracle})
                    # any generator of the other dual gives the same ranks
                    other = C2 if which == 1 else C1
                    H = _scrambled(sigma_dual_generator(other, sigma), rng)
                    if set(intersection_dims(C1, C2, sigma, which, H_other=H).values()) != {oracle}:
                        res.fail({"q": ctx.q, "n": n, "which": which, "scrambled": True})
                h = hull(C1, sigma)
                h_oracle = rowspace_intersect(C1.gen, sigma_dual_direct(C1, sigma).gen).rows
                if h.oracle_dim != h_oracle or set(h.dims.values()) != {h_oracle}:
                    res.fail({"q": ctx.q, "n": n, "hull": h.dims, "oracle": h_oracle})
                g = galois_hull(C1, ell)
                g_oracle = rowspace_intersect(C1.gen, galois_dual_alt(C1, ell).gen).rows
                if set(g.dims.values()) != {g_oracle} or g.oracle_dim != g_oracle:
                    res.fail({"q": ctx.q, "n": n, "ell": ell, "galois": g.dims, "oracle": g_oracle})
                res.tally(f"GF({ctx.q})")
            except VerificationFailure as exc:
                res.fail({"q": ctx.q, "n": n, "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    return res


def check_code_lemmas(count: int = 200, seed: int = 0,
                      fields=((2, 2), (2, 3), (3, 2), (5, 2), (3, 3)), max_n: int = 10) -> CheckResult:
    """sigma-dual generator, image/dual transport, parity transport and the Galois/Hermitian specialisations."""
    res = CheckResult("dual transport identities", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        n = int(rng.integers(1, max_n + 1))
        C = _random_code(ctx, n, rng)
        sigma = SigmaMap.random(ctx, n, rng)
        res.instances += 1
        D = sigma_dual(C, sigma)
        if D != sigma_dual_direct(C, sigma) or C.k + D.k != n:
            res.fail({"q": ctx.q, "n": n, "which": "dual generator"})
        else:
            res.tally("dual generator")
        if not check_image_dual_transport(C, sigma):
            res.fail({"q": ctx.q, "n": n, "which": "image transport"})
        else:
            res.tally("image transport")
        H = _scrambled(sigma_dual_generator(C, sigma), rng)
        if not check_parity_transport(C, sigma, H):
            res.fail({"q": ctx.q, "n": n, "which": "parity transport"})
        else:
            res.tally("parity transport")
        ell = int(rng.integers(0, ctx.e))
        ok = galois_dual(C, ell) == galois_dual_alt(C, ell)
        ok &= sigma_dual(C, SigmaMap.identity(ctx, n)) == euclidean_dual(C)
        if ctx.e % 2 == 0:
            ok &= sigma_dual(C, SigmaMap.hermitian(ctx, n)) == hermitian_dual_direct(C)
        if not ok:
            res.fail({"q": ctx.q, "n": n, "which": "specialisations"})
        else:
            res.tally("specialisations")
    res.seconds = time.perf_counter() - t0
    return res


def check_grs_lemmas(count: int = 200, seed: int = 0,
                     fields=((3, 2), (5, 2), (2, 3), (3, 3), (2, 4))) -> CheckResult:
    """The four GRS dual identities (plain, extended, and their Frobenius twists)."""
    res = CheckResult("GRS dual identities", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    names = ("plain", "extended", "plain twisted", "extended twisted")
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        n = int(rng.integers(1, min(ctx.q, 10) + 1))
        a = rng.choice(ctx.q, size=n, replace=False)
        k = int(rng.integers(1, n + 1))
        s = int(rng.integers(1, ctx.e + 1))
        res.instances += 1
        for name, ok in zip(names, grs.check_dual_identities(ctx, a, k, s)):
            if ok:
                res.tally(name)
            else:
                res.fail({"q": ctx.q, "a": a.tolist(), "k": k, "s": s, "which": name})
    res.seconds = time.perf_counter() - t0
    return res


# -- matrix-product codes -----------------------------------------------------------------


def random_diagonal_defining(ctx: FieldCtx, k: int, t: int, outer: Monomial, s: int, rng,
                              zero_rows: int = 0, tries: int = 200) -> Mat | None:
    """A full-rank ``k x t`` matrix with ``A M^T pi_s(A)^T`` diagonal.

    Row ``i`` is drawn from the joint kernel of both orthogonality conditions against the earlier
    rows (each is linear in the new row after a Frobenius twist).  ``zero_rows`` rows are forced
    to be isotropic, which needs ``t > k``.
    """
    Mo = outer.matrix(ctx)
    e = ctx.e
    for _ in range(tries):
        rows: list[np.ndarray] = []
        want_zero = set(rng.choice(k, size=zero_rows, replace=False).tolist()) if zero_rows else set()
        for i in range(k):
            cons = []
            for r in rows:
                R = Mat(ctx, r.reshape(1, -1))
                cons.append((Mo.T @ map_frobenius(R, s).T).T)           # x M^T pi_s(r)^T = 0
                cons.append(map_frobenius(R @ Mo.T, e - s))              # r M^T pi_s(x)^T = 0
            if cons:
                stack = Mat._wrap(ctx, np.vstack([c.data for c in cons]))
                basis = kernel(stack)
            else:
                basis = Mat.identity(ctx, t)
            if basis.rows == 0:
                break
            picked = None
            for _ in range(64):
                coef = rng.integers(0, ctx.q, size=(1, basis.rows))
                x = (Mat(ctx, coef) @ basis).data[0]
                if not x.any():
                    continue
                if rank(Mat._wrap(ctx, np.vstack(rows + [x]))) != len(rows) + 1:
                    continue
                X = Mat(ctx, x.reshape(1, -1))
                mu = int((X @ Mo.T @ map_frobenius(X, s).T).data[0, 0])
                if (mu == 0) == (i in want_zero):
                    picked = x
                    break
            if picked is None:
                break
            rows.append(picked)
        if len(rows) == k:
            return Mat._wrap(ctx, np.vstack(rows))
    return None


def _mxp_spec(ctx: FieldCtx, A: Mat, n: int, rng, constituents=None) -> mxp.MxpSpec:
    cons = constituents or tuple(_random_code(ctx, n, rng) for _ in range(A.rows))
    return mxp.MxpSpec(tuple(cons), A, relaxed=A.rows < A.cols)


def _random_kron(ctx: FieldCtx, t: int, n: int, rng) -> tuple[mxp.SigmaKron, str]:
    kind = rng.choice(["random", "galois", "euclidean", "hermitian"])
    if kind == "hermitian" and ctx.e % 2:
        kind = "random"
    if kind == "random":
        return mxp.SigmaKron.random(ctx, t, n, rng), "random"
    if kind == "galois":
        return mxp.SigmaKron.galois(ctx, t, n, int(rng.integers(0, ctx.e))), "galois"
    if kind == "euclidean":
        return mxp.SigmaKron.galois(ctx, t, n, 0), "euclidean"
    return mxp.SigmaKron.galois(ctx, t, n, ctx.e // 2), "hermitian"


def check_mxp_dual(count: int = 100, seed: int = 0, fields=((3, 2), (5, 2))) -> CheckResult:
    """Dual of a matrix-product code as the product of the constituent duals with ``B``."""
    res = CheckResult("matrix-product dual", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        k = int(rng.choice([2, 3]))
        n = int(rng.choice([4, 5, 6]))
        A = random_invertible(ctx, k, rng)
        spec = _mxp_spec(ctx, A, n, rng)
        sk, kind = _random_kron(ctx, k, n, rng)
        res.instances += 1
        try:
            out = mxp.sigma_dual_mxp(spec, sk)
            if kind == "euclidean" and out.A != inverse(A).T:
                raise VerificationFailure("Euclidean B is not (A^-1)^T")
            res.tally(kind)
            # the general block-identity path agrees when fed the same B
            gen = mxp.sigma_dual_mxp_general(spec, sk.full(ctx), out.A, [sk.inner] * k)
            if mxp.build(gen) != mxp.build(out):
                raise VerificationFailure("general path disagrees")
        except VerificationFailure as exc:
            res.fail({"q": ctx.q, "k": k, "n": n, "kind": kind, "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    return res


def check_mxp_hull(count: int = 100, seed: int = 0, fields=((3, 2), (5, 2))) -> CheckResult:
    """Hull of a matrix-product code from the constituent hulls, including zero multipliers."""
    res = CheckResult("matrix-product hull", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    done = 0
    attempts = 0
    while done < count and attempts < 20 * count:
        attempts += 1
        ctx = ctxs[done % len(ctxs)]
        k = int(rng.choice([2, 3]))
        n = int(rng.choice([4, 5, 6]))
        rect = done % 3 == 2
        t = k + 1 if rect else k
        sk, kind = _random_kron(ctx, t, n, rng)
        A = random_diagonal_defining(ctx, k, t, sk.outer, sk.s, rng, zero_rows=1 if rect else 0)
        if A is None:
            continue
        spec = _mxp_spec(ctx, A, n, rng)
        done += 1
        res.instances += 1
        try:
            rep, mu = mxp.sigma_hull_mxp(spec, sk)
            res.tally("mu has a zero" if 0 in mu else "mu nonzero")
            res.tally(kind)
        except VerificationFailure as exc:
            res.fail({"q": ctx.q, "k": k, "t": t, "n": n, "kind": kind, "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    if done < count:
        res.fail({"error": f"only {done} defining matrices found"})
    return res


def check_mxp_special_hulls(count: int = 100, seed: int = 0, fields=((3, 2), (5, 2))) -> CheckResult:
    """Self-orthogonal and dual-containing constituents with quasi-orthogonal (unitary) ``A``."""
    res = CheckResult("matrix-product hull special cases", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        flavor = "hermitian" if i % 2 and ctx.e % 2 == 0 else "euclidean"
        k = int(rng.choice([2, 3]))
        n = int(rng.choice([4, 5, 6]))
        ell = 0 if flavor == "euclidean" else ctx.e // 2
        sk = mxp.SigmaKron.galois(ctx, k, n, ell)
        inner = sk.inner_sigma(ctx)
        res.instances += 1
        A0 = random_invertible(ctx, k, rng)
        N = mxp.find_quasi_orthogonalizer(A0, flavor, rng)
        if N is None:
            res.fail({"q": ctx.q, "flavor": flavor, "error": "no quasi-orthogonalizer"})
            continue
        A = (N.T if flavor == "euclidean" else N) @ A0
        if not mxp.is_quasi_orthogonal(A, flavor):
            res.fail({"q": ctx.q, "flavor": flavor, "error": "output not quasi-orthogonal"})
            continue
        base = [_random_code(ctx, n, rng) for _ in range(k)]
        selforth = tuple(hull(c, inner).basis for c in base)
        selforth = tuple(LinearCode.from_generator(b) if b.rows else LinearCode.zero(ctx, n) for b in selforth)
        spec = mxp.MxpSpec(selforth, A)
        rep, mu = mxp.sigma_hull_mxp(spec, sk)
        if not same_row_space(rep.basis, mxp.build(spec).gen):
            res.fail({"q": ctx.q, "flavor": flavor, "error": "self-orthogonal hull is not C(A)"})
            continue
        containing = tuple(sigma_dual(c, inner) for c in selforth)
        spec2 = mxp.MxpSpec(containing, A)
        rep2, _ = mxp.sigma_hull_mxp(spec2, sk)
        dual_c = sigma_dual(mxp.build(spec2), sk.full(ctx))
        if not same_row_space(rep2.basis, dual_c.gen):
            res.fail({"q": ctx.q, "flavor": flavor, "error": "dual-containing hull is not the dual"})
            continue
        res.tally(flavor)
    res.seconds = time.perf_counter() - t0
    return res


def check_mxp_intersection(count: int = 100, seed: int = 0, fields=((3, 2), (5, 2))) -> CheckResult:
    """``C(A) ∩ D(B)`` with ``B A^-1`` diagonal, zero ratio entries included."""
    res = CheckResult("matrix-product intersection", seed=seed)
    t0 = time.perf_counter()
    ctxs = _fields(fields)
    rng = np.random.default_rng(seed)
    for i in range(count):
        ctx = ctxs[i % len(ctxs)]
        k = int(rng.choice([2, 3]))
        n = int(rng.choice([4, 5, 6]))
        A = random_invertible(ctx, k, rng)
        mu = rng.integers(1, ctx.q, size=k)
        if i % 2:
            mu[rng.integers(0, k)] = 0
        D = Mat(ctx, np.diag(mu))
        B = D @ A
        sa = _mxp_spec(ctx, A, n, rng)
        sb = mxp.MxpSpec(tuple(_random_code(ctx, n, rng) for _ in range(k)), B, relaxed=True)
        res.instances += 1
        try:
            out, got = mxp.intersect_mxp(sa, sb)
            if got != [int(x) for x in mu]:
                raise VerificationFailure(f"ratio {got} != {mu.tolist()}")
            res.tally("mu has a zero" if 0 in got else "mu nonzero")
        except VerificationFailure as exc:
            res.fail({"q": ctx.q, "k": k, "n": n, "error": str(exc)})
    res.seconds = time.perf_counter() - t0
    return res


# -- GRS membership -----------------------------------------------------------------------


def _random_grs(ctx: FieldCtx, n_pts: int, k: int, extended: bool, rng) -> grs.GrsSpec:
    a = rng.choice(ctx.q, size=n_pts, replace=False)
    v = rng.integers(1, ctx.q, size=n_pts)
    return grs.GrsSpec(ctx, tuple(int(x) for x in a), tuple(int(x) for x in v), k, extended)


def _block_sigma(ctx: FieldCtx, spec: grs.GrsSpec, rng, general: bool) -> SigmaMap:
    n = spec.length
    s = int(rng.integers(1, ctx.e + 1))
    if spec.extended and not general:
        inner = Monomial.random(ctx, spec.n_points, rng)
        mono = Monomial(inner.perm + (spec.n_points,), inner.diag + (int(rng.integers(1, ctx.q)),))
    else:
        mono = Monomial.random(ctx, n, rng)
    return SigmaMap(ctx, mono, s)


def _membership_agree(res: CheckResult, spec: grs.GrsSpec, words, sigma: SigmaMap, general: bool) -> None:
    for c in words:
        res.instances += 1
        w = grs.in_sigma_dual(spec, c, sigma, general_perm=general, cross_check=False)
        d = grs.direct_membership(spec, c, sigma)
        if (w is not None) != d:
            res.fail({"q": spec.ctx.q, "a": list(spec.a), "k": spec.k, "ext": spec.extended,
                      "c": np.asarray(c).tolist(), "witness": w is not None, "direct": d})
        else:
            res.tally("member" if d else "non-member")


def check_membership(random_cases: int = 1000, seed: int = 0, specs_per_shape: int = 2) -> CheckResult:
    """Witness-polynomial membership against direct sigma inner products.

    Exhaustive over every codeword of GF(9) codes with at most 5 coordinates and ``k <= 2``, then
    random larger cases, including words drawn from the hull so both verdicts occur.
    """
    res = CheckResult("GRS membership", seed=seed)
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    ctx = field_new(3, 2)
    for extended in (False, True):
        for length in range(1, 6):
            n_pts = length - 1 if extended else length
            if n_pts < 1:
                continue
            for k in range(1, min(2, length) + 1):
                for rep in range(specs_per_shape):
                    spec = _random_grs(ctx, n_pts, k, extended, rng)
                    general = extended and rep % 2 == 1
                    sigma = _block_sigma(ctx, spec, rng, general)
                    _membership_agree(res, spec, spec.code().codewords(), sigma, general)
                    # hull-type sigma: identity monomial with a Galois twist, so members occur
                    ell = int(rng.integers(0, ctx.e))
                    gs = grs.galois_sigma(spec, ell)
                    _membership_agree(res, spec, spec.code().codewords(), gs, False)
                    for c in spec.code().codewords():
                        g1 = grs.galois_hull_witness(spec, c, ell)
                        g2 = grs.in_sigma_dual(spec, c, gs, cross_check=False)
                        if (g1 is None) != (g2 is None) or (g1 is not None and g1.coeffs != g2.coeffs):
                            res.fail({"a": list(spec.a), "k": k, "ell": ell, "which": "galois path"})
    exhaustive = res.instances
    big = _fields(((5, 2), (3, 3), (2, 4), (7, 2)))
    for i in range(random_cases):
        c2 = big[i % len(big)]
        extended = bool(i % 2)
        n_pts = int(rng.integers(2, 11))
        k = int(rng.integers(1, n_pts + (1 if extended else 0) + 1))
        spec = _random_grs(c2, n_pts, k, extended, rng)
        general = extended and i % 4 == 3
        if i % 3 == 0:
            sigma = grs.galois_sigma(spec, int(rng.integers(0, c2.e)))
            general = False
        else:
            sigma = _block_sigma(c2, spec, rng, general)
        C = spec.code()
        if i % 2 == 0:
            H = grs.sigma_hull_code(spec, sigma)
            words = []
            if H.k:
                coef = Mat(c2, rng.integers(0, c2.q, size=(1, H.k)))
                words = [(coef @ H.gen).data[0]]
        else:
            coef = Mat(c2, rng.integers(0, c2.q, size=(1, C.k)))
            words = [(coef @ C.gen).data[0]]
        if not words:
            coef = Mat(c2, rng.integers(0, c2.q, size=(1, C.k)))
            words = [(coef @ C.gen).data[0]]
        _membership_agree(res, spec, words, sigma, general)
    res.counts["exhaustive"] = exhaustive
    res.counts["random"] = res.instances - exhaustive
    res.seconds = time.perf_counter() - t0
    return res


# -- power equation -----------------------------------------------------------------------


def check_power_equation(fields=((3, 2), (3, 4), (5, 2), (3, 3), (5, 3), (3, 6))) -> CheckResult:
    """``v^(p^ell+1) = u`` solvable for every ``u`` in ``F_{p^ell}^*`` exactly when ``2 ell | e``.

    ``ell`` ranges over the proper divisors of ``e`` so that ``F_{p^ell}`` is a subfield; every
    unit of ``F_q`` is raised to the power to get the image set, so solvability is exhaustive.
    """
    res = CheckResult("power equation", seed=None)
    t0 = time.perf_counter()
    for ctx in _fields(fields):
        units = ctx.units()
        for ell in range(1, ctx.e):
            if ctx.e % ell:
                continue
            image = set(np.asarray(ctx.pow(units, ctx.p**ell + 1)).tolist())
            sub = [int(x) for x in subfield_elements(ctx, ell) if x]
            all_ok = all(u in image for u in sub)
            res.instances += 1
            solver = all((solve_power_eq(ctx, u, ell) is not None) == (u in image) for u in sub)
            if all_ok != (ctx.e % (2 * ell) == 0) or not solver:
                res.fail({"q": ctx.q, "ell": ell, "all_solvable": all_ok})
            res.tally(f"GF({ctx.q}) ell={ell}: {'all' if all_ok else 'not all'} solvable")
    res.seconds = time.perf_counter() - t0
    return res


def check_subfield_containment(fields=((3, 2), (3, 4), (3, 3), (5, 2), (3, 6))) -> CheckResult:
    """``(e-r) | e`` implies every element fixed by ``pi_{e-r}`` is fixed by ``pi_r``."""
    res = CheckResult("subfield containment", seed=None)
    t0 = time.perf_counter()
    for ctx in _fields(fields):
        for r in range(1, ctx.e):
            if ctx.e % (ctx.e - r):
                continue
            res.instances += 1
            sub = subfield_elements(ctx, ctx.e - r)
            if not np.all(np.asarray(ctx.frobenius(sub, r)) == sub):
                res.fail({"q": ctx.q, "r": r})
    res.seconds = time.perf_counter() - t0
    return res


# -- families -----------------------------------------------------------------------------


def scaled_family_specs() -> list[FamilySpec]:
    """Base parameter choices for the desk-scale family runs (``k``, ``h`` filled in later)."""
    out = []
    for p, e, ell in ((3, 4, 3), (3, 2, 1)):
        q1 = p**e - 1
        c = p ** (e - ell) - 1
        x1, x2 = smallest_cyclic_pair(p, e, ell)
        y = q1 // c
        r_cyc = q1 // math.gcd(x1, q1)
        for var in VARIANTS["norm"]:
            for t in range(1, c + 1):
                out.append(FamilySpec("norm", var, ell, p, e, {"t": t}))
            for r in range(1, r_cyc + 1):
                out.append(FamilySpec("cyclic", var, ell, p, e, {"x1": x1, "x2": x2, "r": r}))
            for m in sorted({2, y}):
                m1 = m // math.gcd(m, y)
                for r in range(1, c // m1 + 1):
                    out.append(FamilySpec("coset", var, ell, p, e, {"m": m, "r": r}))
        for var in VARIANTS["additive"]:
            a = 1
            w = e // a - 1
            for t in sorted({1, p**a}):
                out.append(FamilySpec("additive", var, ell, p, e, {"a": a, "w": w, "t": t}))
    return out


def check_families(specs=None, verify: bool = True) -> CheckResult:
    """Every legal ``(variant, k, h)`` constructs and passes the hull oracle and the MDS check."""
    res = CheckResult("family constructions", seed=None)
    t0 = time.perf_counter()
    for base in specs if specs is not None else scaled_family_specs():
        for fs in legal_instances(base):
            res.instances += 1
            try:
                c = construct_mds_with_hull(fs, verify=verify)
                res.tally(fs.family)
                res.tally(f"mds {c.mds}")
            except Exception as exc:  # every failure is a result, not a crash
                res.fail({"spec": fs.to_json(), "error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - t0
    return res


def check_tables() -> CheckResult:
    res = CheckResult("table arithmetic", seed=None)
    t0 = time.perf_counter()
    for fam in FAMILIES:
        for row in compare_table(fam):
            res.instances += 1
            res.tally(fam, len(row["checks"]))
            if not row["ok"]:
                res.fail({"family": fam, "bad": [k for k, v in row["checks"].items() if not v]})
    res.seconds = time.perf_counter() - t0
    return res


def check_medium_field(hs=(0, 1)) -> CheckResult:
    """GF(625), norm fibres with ``t = 1``: length-156 codes with ``k = 2`` and each target hull."""
    specs = [FamilySpec("norm", "n", 3, 5, 4, {"t": 1}, 2, h) for h in hs]
    res = CheckResult("medium field", seed=None)
    t0 = time.perf_counter()
    for fs in specs:
        res.instances += 1
        try:
            c = construct_mds_with_hull(fs)
            if c.grs.length != 156 or c.report.oracle_dim != fs.h:
                res.fail({"h": fs.h, "length": c.grs.length, "oracle": c.report.oracle_dim})
            res.tally(f"h={fs.h} mds {c.mds}")
        except Exception as exc:
            res.fail({"h": fs.h, "error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - t0
    return res


# -- registry -----------------------------------------------------------------------------

TIERS = {
    "small": {
        "rank identities": lambda seed: check_rank_identities(40, seed),
        "dual transport identities": lambda seed: check_code_lemmas(60, seed),
        "GRS dual identities": lambda seed: check_grs_lemmas(60, seed),
        "matrix-product dual": lambda seed: check_mxp_dual(20, seed),
        "matrix-product hull": lambda seed: check_mxp_hull(20, seed),
        "matrix-product hull special cases": lambda seed: check_mxp_special_hulls(20, seed),
        "matrix-product intersection": lambda seed: check_mxp_intersection(20, seed),
        "GRS membership": lambda seed: check_membership(100, seed, specs_per_shape=1),
        "power equation": lambda seed: check_power_equation(),
        "subfield containment": lambda seed: check_subfield_containment(),
        "family constructions": lambda seed: check_families(
            [s for s in scaled_family_specs() if s.e == 2]),
        "table arithmetic": lambda seed: check_tables(),
    },
    "medium": {
        "rank identities": lambda seed: check_rank_identities(500, seed),
        "dual transport identities": lambda seed: check_code_lemmas(200, seed),
        "GRS dual identities": lambda seed: check_grs_lemmas(200, seed),
        "matrix-product dual": lambda seed: check_mxp_dual(100, seed),
        "matrix-product hull": lambda seed: check_mxp_hull(100, seed),
        "matrix-product hull special cases": lambda seed: check_mxp_special_hulls(100, seed),
        "matrix-product intersection": lambda seed: check_mxp_intersection(100, seed),
        "GRS membership": lambda seed: check_membership(1000, seed),
        "power equation": lambda seed: check_power_equation(),
        "subfield containment": lambda seed: check_subfield_containment(),
        "family constructions": lambda seed: check_families(),
        "table arithmetic": lambda seed: check_tables(),
        "medium field": lambda seed: check_medium_field(),
    },
}


def run_tier(tier: str, seed: int = 0, only=None) -> list[CheckResult]:
    checks = TIERS[tier]
    names = [n for n in checks if only is None or n in only]
    return [checks[n](seed) for n in names]
