"""Arithmetic in GF(p^e).

Elements are plain integers in ``[0, q)``: the element ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}``
is encoded as ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``.  Every arithmetic method accepts either
Python ints or integer numpy arrays and broadcasts like numpy.

Subfields are never separate objects: ``F_{p^d}`` is the fixed field of ``x -> x^(p^d)`` inside
the parent field.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1 << 10
DLOG_LIMIT = 1 << 24
CACHE_ENV = "SIGMAHULL_CACHE"  # directory for on-disk exp tables; unset disables the cache


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class NotDivisor(FieldError):
    pass


class ZeroInput(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


# -- polynomials over GF(p), ascending coefficient lists ---------------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _ptrim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _ppowmod(a: list[int], n: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        n >>= 1
    return result


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    e = len(modulus) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]

    def frob_iter(k: int) -> list[int]:
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, modulus, p)
        return r

    if _psub(frob_iter(e), x, p):
        return False
    for r in prime_factors(e):
        g = _pgcd(modulus, _psub(frob_iter(e // r), x, p), p)
        if len(g) > 1:
            return False
    return True


def _digits(n: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        n, c = divmod(n, p)
        out.append(c)
    return out


def _undigits(c: list[int], p: int) -> int:
    v = 0
    for x in reversed(c):
        v = v * p + x
    return v


# -- field context ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(p^e) with a fixed modulus and primitive element.

    Build instances with :func:`field_new`; the constructor does no validation.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    alpha: int
    exp_table: np.ndarray | None = field(default=None, repr=False)
    log_table: np.ndarray | None = field(default=None, repr=False)
    _add_table: np.ndarray | None = field(default=None, repr=False)
    _neg_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.q

    @property
    def has_tables(self) -> bool:
        return self.exp_table is not None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- element conversion

    def to_coeffs(self, x: int) -> list[int]:
        return _digits(int(x), self.p, self.e)

    def from_coeffs(self, coeffs) -> int:
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > self.e or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"{coeffs} is not an element of {self!r}")
        return _undigits(coeffs, self.p)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def units(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    # -- scalar fallbacks used when q exceeds the table limit

    def _mul_scalar(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, e = self.p, self.e
        prod = _pmul(_digits(a, p, e), _digits(b, p, e), p)
        return _undigits(_pmod(prod, list(self.modulus), p), p)

    def _pow_scalar(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if n == 0 else 0
        n %= self.q - 1
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_scalar(result, base)
            base = self._mul_scalar(base, base)
            n >>= 1
        return result

    # -- vectorised arithmetic

    def add(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self._add_table is not None:
            return _out(self._add_table[x, y])
        return self._digitwise(x, y, 1)

    def sub(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self._add_table is not None:
            return _out(self._add_table[x, self._neg_table[y]])
        return self._digitwise(x, y, -1)

    def neg(self, x):
        if self.p == 2:
            return x
        if self._neg_table is not None:
            return _out(self._neg_table[x])
        return self._digitwise(0, x, -1)

    def _digitwise(self, x, y, sign: int):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            cx = (x // pw) % self.p
            cy = (y // pw) % self.p
            out += ((cx + sign * cy) % self.p) * pw
            pw *= self.p
        return _out(out)

    def mul(self, x, y):
        if self.e == 1:
            return _out(np.asarray(x, dtype=np.int64) * np.asarray(y, dtype=np.int64) % self.p)
        if self.has_tables:
            x = np.asarray(x, dtype=np.int64)
            y = np.asarray(y, dtype=np.int64)
            lg = self.log_table
            r = self.exp_table[lg[x] + lg[y]]
            return _out(np.where((x == 0) | (y == 0), 0, r))
        return _out(_vmul(self)(x, y))

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise DivisionByZero(f"inverse of 0 in {self!r}")
        if self.has_tables:
            return _out(self.exp_table[(self.q - 1 - self.log_table[x]) % (self.q - 1)])
        return _out(_vpow(self)(x, -1))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n: int):
        """``x**n``; negative ``n`` requires nonzero ``x``."""
        x = np.asarray(x, dtype=np.int64)
        if n < 0 and np.any(x == 0):
            raise DivisionByZero(f"0 ** {n} in {self!r}")
        if self.has_tables:
            lg = self.log_table[x]
            r = self.exp_table[(lg * (n % (self.q - 1))) % (self.q - 1)]
            zero = 1 if n == 0 else 0
            return _out(np.where(x == 0, zero, r))
        return _out(_vpow(self)(x, n))

    def frobenius(self, x, s: int):
        """``x -> x^(p^s)``; ``s`` is taken mod ``e`` so that ``s = 0`` and ``s = e`` are the identity."""
        s %= self.e
        if s == 0:
            return _out(np.asarray(x, dtype=np.int64))
        return self.pow(x, self.p**s)

    def is_zero(self, x) -> bool:
        return not np.any(x)


def _out(a):
    a = np.asarray(a, dtype=np.int64)
    return int(a) if a.ndim == 0 else a


@lru_cache(maxsize=32)
def _vmul(ctx: FieldCtx):
    return np.frompyfunc(lambda a, b: ctx._mul_scalar(int(a), int(b)), 2, 1)


@lru_cache(maxsize=32)
def _vpow(ctx: FieldCtx):
    return np.frompyfunc(lambda a, n: ctx._pow_scalar(int(a), int(n)), 2, 1)


def _has_full_order(ctx: FieldCtx, a: int) -> bool:
    n = ctx.q - 1
    if ctx._pow_scalar(a, n) != 1:
        return False
    return all(ctx._pow_scalar(a, n // r) != 1 for r in prime_factors(n))


@lru_cache(maxsize=64)
def field_new(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    """Construct GF(p^e).

    Without a modulus the smallest monic irreducible polynomial is used, comparing
    non-leading coefficients by their base-p integer value.  The primitive element is the
    smallest integer-encoded element of multiplicative order ``p^e - 1``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}: {list(modulus)}")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    else:
        for c in range(p**e):
            cand = _digits(c, p, e) + [1]
            if is_irreducible(cand, p):
                modulus = tuple(cand)
                break
    q = p**e
    bare = FieldCtx(p, e, modulus, 1)
    exp1 = _cached_exp(p, e, modulus) if q <= TABLE_LIMIT else None
    if exp1 is not None:
        alpha = int(exp1[1]) if q > 2 else 1
    else:
        alpha = next(a for a in range(1, q) if q == 2 or _has_full_order(bare, a))

    exp_table = log_table = add_table = neg_table = None
    if q <= TABLE_LIMIT:
        if exp1 is None:
            exp1 = np.empty(q - 1, dtype=np.int64)
            cur = 1
            for i in range(q - 1):
                exp1[i] = cur
                cur = bare._mul_scalar(cur, alpha)
            _store_exp(p, e, modulus, exp1)
        exp_table = np.concatenate([exp1, exp1, exp1[:1]])
        log_table = np.full(q, 0, dtype=np.int64)
        log_table[exp1] = np.arange(q - 1)
        # log(0) points at a slot whose sums stay in range; callers mask zeros explicitly
        log_table[0] = 0
        digits = np.array([_digits(c, p, e) for c in range(q)], dtype=np.int64)
        pw = p ** np.arange(e, dtype=np.int64)
        neg_table = ((-digits) % p) @ pw
        if q <= ADD_TABLE_LIMIT:
            add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ pw
        exp_table.flags.writeable = False
        log_table.flags.writeable = False
        neg_table.flags.writeable = False
        if add_table is not None:
            add_table.flags.writeable = False
    return FieldCtx(p, e, modulus, alpha, exp_table, log_table, add_table, neg_table)


def _cache_path(p: int, e: int, modulus) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"gf_{p}_{e}_{'-'.join(map(str, modulus))}.npy"


def _cached_exp(p: int, e: int, modulus) -> np.ndarray | None:
    """Powers of alpha from the cache, or None; a file that fails the sanity checks is ignored."""
    path = _cache_path(p, e, modulus)
    if path is None or not path.exists():
        return None
    try:
        exp1 = np.load(path, allow_pickle=False).astype(np.int64)
    except (OSError, ValueError):
        return None
    q = p**e
    if exp1.shape != (q - 1,) or exp1[0] != 1 or len(set(exp1.tolist())) != q - 1 or exp1.min() < 1:
        return None
    bare = FieldCtx(p, e, modulus, 1)
    alpha = int(exp1[1]) if q > 2 else 1
    if q > 2 and (not _has_full_order(bare, alpha)
                  or any(_has_full_order(bare, a) for a in range(1, alpha))):
        return None
    if q > 2 and bare._mul_scalar(int(exp1[-1]), alpha) != 1:
        return None
    return exp1


def _store_exp(p: int, e: int, modulus, exp1: np.ndarray) -> None:
    path = _cache_path(p, e, modulus)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=path.parent, suffix=".npy", delete=False) as fh:
            np.save(fh, exp1)
        os.replace(fh.name, path)
    except OSError:
        pass  # the cache is an optimisation only


def field_from_descriptor(d: dict) -> FieldCtx:
    mod = d.get("modulus")
    return field_new(int(d["p"]), int(d["e"]), tuple(mod) if mod is not None else None)


# -- number-theoretic helpers on field elements ------------------------------------------


def norm_to_subfield(ctx: FieldCtx, x: int, d: int) -> int:
    """``x^((q-1)/(p^d-1))``, landing in the units of ``F_{p^d}``."""
    if x == 0:
        raise ZeroInput("norm of 0")
    if ctx.e % d:
        raise NotDivisor(f"{d} does not divide {ctx.e}")
    return ctx.pow(x, (ctx.q - 1) // (ctx.p**d - 1))


def in_subfield(ctx: FieldCtx, x, d: int):
    """True where ``x^(p^d) == x``."""
    r = np.asarray(ctx.frobenius(x, d)) == np.asarray(x)
    return bool(r) if r.ndim == 0 else r


def subfield_elements(ctx: FieldCtx, d: int) -> np.ndarray:
    """Sorted elements of the subfield ``F_{p^d}`` (``d`` must divide ``e``)."""
    if ctx.e % d:
        raise NotDivisor(f"{d} does not divide {ctx.e}")
    allx = ctx.elements()
    return allx[np.asarray(ctx.frobenius(allx, d)) == allx]


def discrete_log(ctx: FieldCtx, x: int) -> int:
    x = int(x)
    if x == 0:
        raise ZeroInput("discrete log of 0")
    if ctx.has_tables:
        return int(ctx.log_table[x])
    if ctx.q > DLOG_LIMIT:
        raise FieldTooLarge(f"{ctx!r} exceeds the discrete-log bound {DLOG_LIMIT}")
    # baby-step giant-step
    n = ctx.q - 1
    m = math.isqrt(n) + 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = ctx._mul_scalar(cur, ctx.alpha)
    factor = ctx._pow_scalar(ctx.alpha, -m)
    gamma = x
    for i in range(m):
        if gamma in baby:
            return (i * m + baby[gamma]) % n
        gamma = ctx._mul_scalar(gamma, factor)
    raise AssertionError("discrete log not found; alpha is not primitive")


def element_order(ctx: FieldCtx, x: int) -> int:
    if x == 0:
        raise ZeroInput("order of 0")
    n = ctx.q - 1
    return n // math.gcd(n, discrete_log(ctx, x))


def solve_power_eq(ctx: FieldCtx, u: int, ell: int) -> int | None:
    """A ``v`` with ``v^(p^ell + 1) == u``, or None when no such unit exists."""
    if u == 0:
        raise ZeroInput("power equation with u = 0")
    n = ctx.q - 1
    d = ctx.p**ell + 1
    lg = discrete_log(ctx, u)
    g = math.gcd(d, n)
    if lg % g:
        return None
    m = n // g
    x = (lg // g) * pow(d // g, -1, m) % m if m > 1 else 0
    v = ctx.pow(ctx.alpha, x)
    assert ctx.pow(v, d) == u
    return v


def subfield_lattice(ctx: FieldCtx) -> list[dict]:
    """Subfields ``F_{p^d}`` for each divisor ``d`` of ``e``."""
    return [
        {"degree": d, "order": ctx.p**d, "contains": [d2 for d2 in range(1, d + 1) if d % d2 == 0]}
        for d in range(1, ctx.e + 1)
        if ctx.e % d == 0
    ]
