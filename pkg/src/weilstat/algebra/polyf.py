"""Polynomials over prime fields and their factorization.

The low-level helpers work on plain ascending coefficient lists with
entries in ``[0, ell)``; :class:`PolyF` is the validated value type.
Factorization is squarefree decomposition, distinct-degree splitting and
Cantor-Zassenhaus equal-degree splitting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import AlgebraError
from .primes import is_prime


@dataclass(frozen=True)
class PrimeFieldCtx:
    ell: int
    seed: int = 0

    def __post_init__(self):
        if self.ell < 2 or not is_prime(self.ell):
            raise AlgebraError(f"{self.ell} is not prime", "NOT_PRIME")

    def inv(self, a: int) -> int:
        a %= self.ell
        if a == 0:
            raise AlgebraError("inverse of zero", "ZERO_DIVISION")
        return pow(a, -1, self.ell)


# --- list-level arithmetic ------------------------------------------------


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def psub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def pscale(a, c, p):
    c %= p
    return trim([x * c % p for x in a]) if c else []


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise AlgebraError("division by zero polynomial", "ZERO_POLY")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - c * y) % p
    return trim(q), trim(r[:db])


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def pderiv(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def ppowmod(base, e, m, p):
    result = [1]
    base = pmod(base, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        base = pmod(pmul(base, base, p), m, p)
        e >>= 1
    return result


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# --- value type -------------------------------------------------------------


@dataclass(frozen=True)
class PolyF:
    ctx: PrimeFieldCtx
    coeffs: tuple = field(default=())

    def __post_init__(self):
        ell = self.ctx.ell
        cs = trim([int(c) % ell for c in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: PolyF) -> PolyF:
        return PolyF(self.ctx, pmul(self.coeffs, other.coeffs, self.ctx.ell))

    def __pow__(self, n: int) -> PolyF:
        out = PolyF(self.ctx, (1,))
        for _ in range(n):
            out = out * self
        return out

    def monic(self) -> PolyF:
        return PolyF(self.ctx, monic(list(self.coeffs), self.ctx.ell))


@dataclass(frozen=True)
class FactorizationF:
    ctx: PrimeFieldCtx
    unit: int
    factors: tuple  # ((PolyF monic irreducible, multiplicity), ...)

    def expand(self) -> PolyF:
        acc = [self.unit]
        for f, m in self.factors:
            for _ in range(m):
                acc = pmul(acc, list(f.coeffs), self.ctx.ell)
        return PolyF(self.ctx, acc)

    def degrees(self) -> list[int]:
        return sorted(f.degree for f, m in self.factors for _ in range(m))


# --- factorization ----------------------------------------------------------


def _pth_root(a, p):
    # a(x) = b(x^p) over F_p, and b(x)^p = b(x^p) since Frobenius fixes F_p
    return [a[i] for i in range(0, len(a), p)]


def squarefree_factor_list(a, p):
    """Squarefree decomposition over F_p: list of (squarefree monic, mult)."""
    a = monic(trim(list(a)), p)
    out = []
    if len(a) <= 1:
        return out
    da = pderiv(a, p)
    if not da:
        for g, m in squarefree_factor_list(_pth_root(a, p), p):
            out.append((g, m * p))
        return out
    c = pgcd(a, da, p)
    w = pdivmod(a, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        w = y
        c = pdivmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for g, m in squarefree_factor_list(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(f, p):
    """Distinct-degree factorization of a squarefree monic f: [(g_d, d), ...]."""
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    f = list(f)
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    if len(f) > 1:
        out.append((monic(f, p), len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Split a squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = trim([rng.randrange(p) for _ in range(n)])
        if len(r) <= 1:
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^(2^(d-1))
            t, acc = r, list(r)
            for _ in range(d - 1):
                t = pmod(pmul(t, t, p), f, p)
                acc = padd(acc, t, p)
            g = pgcd(f, acc, p)
        else:
            g = pgcd(f, r, p)
            if 1 < len(g) < len(f):
                break
            e = (p**d - 1) // 2
            g = pgcd(f, psub(ppowmod(r, e, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            break
    h = pdivmod(f, g, p)[0]
    return equal_degree(monic(g, p), d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor_list(a, p, rng=None):
    """Complete factorization of a nonzero list over F_p.

    Returns (unit, [(monic irreducible list, multiplicity), ...]) sorted by
    (degree, coefficients).
    """
    a = trim([c % p for c in a])
    if not a:
        raise AlgebraError("cannot factor the zero polynomial", "ZERO_POLY")
    rng = rng or random.Random(0)
    unit = a[-1]
    out = []
    for sq, m in squarefree_factor_list(a, p):
        for g, d in distinct_degree(sq, p):
            for h in equal_degree(g, d, p, rng):
                out.append((h, m))
    merged: dict[tuple, int] = {}
    for h, m in out:
        merged[tuple(h)] = merged.get(tuple(h), 0) + m
    facs = sorted(merged.items(), key=lambda t: (len(t[0]), t[0][::-1]))
    return unit, [(list(h), m) for h, m in facs]


def factor_mod_l(poly: PolyF) -> FactorizationF:
    """Factor a nonzero polynomial over F_ell into monic irreducibles."""
    if poly.is_zero():
        raise AlgebraError("cannot factor the zero polynomial", "ZERO_POLY")
    ctx = poly.ctx
    rng = random.Random(f"{ctx.seed}:{ctx.ell}:{poly.coeffs}")
    unit, facs = factor_list(list(poly.coeffs), ctx.ell, rng)
    return FactorizationF(ctx, unit, tuple((PolyF(ctx, tuple(h)), m) for h, m in facs))


def is_irreducible_mod(a, p) -> bool:
    a = trim([c % p for c in a])
    if len(a) <= 1:
        return False
    f = monic(a, p)
    if len(pgcd(f, pderiv(f, p), p)) > 1:
        return False
    dd = distinct_degree(f, p)
    return len(dd) == 1 and dd[0][1] == len(f) - 1
