"""Factorization over the integers for small degree.

Squarefree decomposition, then for each squarefree part: factor modulo a
good prime, Hensel-lift to a modulus above twice the coefficient bound and
recombine subsets of the modular factors (Zassenhaus).  Degree is capped at
16 so exhaustive recombination stays cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..errors import AlgebraError
from . import polyf as F
from .polyz import PolyZ, divmod_q, squarefree_decomposition
from .primes import next_prime

MAX_DEGREE = 16


@dataclass(frozen=True)
class FactorizationZ:
    unit: int
    factors: tuple  # ((PolyZ primitive irreducible, multiplicity), ...)

    def expand(self) -> PolyZ:
        acc = PolyZ((self.unit,))
        for f, m in self.factors:
            acc = acc * f**m
        return acc

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def shape(self) -> str:
        """Compact description like ``Q1^2`` or ``Q1*Q2``; degrees in brackets."""
        if self.is_irreducible():
            return "irreducible"
        parts = []
        for i, (f, m) in enumerate(self.factors, 1):
            parts.append(f"Q{i}[{f.degree}]" + (f"^{m}" if m > 1 else ""))
        return "*".join(parts)


def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _egcd_mod(a, b, p):
    """s, t with s*a + t*b == 1 over F_p (a, b coprime)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = F.pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, F.psub(s0, F.pmul(q, s1, p), p)
        t0, t1 = t1, F.psub(t0, F.pmul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return F.pscale(s0, inv, p), F.pscale(t0, inv, p)


def _mul_mod(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return F.trim([c % m for c in out])


def hensel_lift(f, g, h, p, k):
    """Lift f == g*h (mod p), g monic, to f == G*H (mod p**k)."""
    s, t = _egcd_mod(g, h, p)
    m = p
    for _ in range(1, k):
        m2 = m * p
        gh = _mul_mod(g, h, m2)
        e = [(x - y) % m2 for x, y in itertools.zip_longest(f, gh, fillvalue=0)]
        assert all(c % m == 0 for c in e)
        e = F.trim([(c // m) % p for c in e])
        # tau_g = (e*t) mod g ; tau_h = e*s + Q*h  with e*t = Q*g + tau_g
        et = F.pmul(e, t, p)
        qg, tau_g = F.pdivmod(et, F.trim([c % p for c in g]), p)
        tau_h = F.padd(F.pmul(e, s, p), F.pmul(qg, [c % p for c in h], p), p)
        g = F.trim([(x + m * y) % m2 for x, y in itertools.zip_longest(g, tau_g, fillvalue=0)])
        h = F.trim([(x + m * y) % m2 for x, y in itertools.zip_longest(h, tau_h, fillvalue=0)])
        m = m2
    return g, h


def multifactor_lift(f, facs, p, k):
    """Lift lc(f) * prod(facs) == f (mod p) to monic factors modulo p**k."""
    mod = p**k
    out = []
    rest = [c % mod for c in f]
    for i, g in enumerate(facs[:-1]):
        others = [1]
        for h in facs[i + 1 :]:
            others = F.pmul(others, h, p)
        others = F.pscale(others, rest[-1], p)
        G, H = hensel_lift(rest, g, others, p, k)
        out.append(G)
        rest = H
    # the last factor absorbs the leading coefficient; make it monic
    inv = pow(rest[-1], -1, mod)
    out.append([c * inv % mod for c in rest])
    return out


def _choose_prime(f: PolyZ):
    best = None
    p = 2
    tried = 0
    while tried < 6:
        p = next_prime(p)
        if f.lc % p == 0:
            continue
        fl = [c % p for c in f.coeffs]
        if len(F.pgcd(fl, F.pderiv(fl, p), p)) > 1:
            continue
        _, facs = F.factor_list(fl, p)
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            break
    return best


def _factor_squarefree(f: PolyZ):
    """Irreducible factors of a primitive squarefree f with lc > 0."""
    if f.degree <= 1:
        return [f]
    p, facs = _choose_prime(f)
    if len(facs) == 1:
        return [f]
    n = f.degree
    lc = f.lc
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    bound = 2 * abs(lc) * (2**n) * norm2 + 1
    k = 1
    while p**k <= bound:
        k += 1
    mod = p**k
    lifted = multifactor_lift(list(f.coeffs), [g for g, _ in facs], p, k)
    result = []
    remaining = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in itertools.combinations(remaining, size):
            g = [lc % mod]
            for i in subset:
                g = _mul_mod(g, lifted[i], mod)
            cand = PolyZ(tuple(_sym(c, mod) for c in g)).primitive()
            q, r = _try_div(f, cand)
            if r:
                continue
            result.append(cand)
            f = q
            lc = f.lc
            remaining = [i for i in remaining if i not in subset]
            found = True
            break
        if not found:
            size += 1
    result.append(f.primitive())
    return result


def _try_div(f: PolyZ, g: PolyZ):
    if g.degree < 1 or f.lc % g.lc or (g[0] and f[0] % g[0]):
        return None, True
    q, r = divmod_q(f, g)
    if r or any(c.denominator != 1 for c in q):
        return None, True
    return PolyZ(tuple(int(c) for c in q)), False


def factor_over_z(p: PolyZ) -> FactorizationZ:
    """Factor a nonzero integer polynomial of degree at most 16."""
    if not isinstance(p, PolyZ):
        p = PolyZ(tuple(p))
    if p.is_zero():
        raise AlgebraError("cannot factor the zero polynomial", "ZERO_POLY")
    if p.degree > MAX_DEGREE:
        raise AlgebraError(f"degree {p.degree} exceeds {MAX_DEGREE}", "DEGREE_TOO_LARGE")
    unit = p.content()
    factors = []
    for s, m in squarefree_decomposition(p):
        for g in _factor_squarefree(s):
            if g.lc < 0:
                g = -g
            factors.append((g, m))
    # fold signs of the chosen factor normalisation into the unit
    probe = PolyZ((unit,))
    for g, m in factors:
        probe = probe * g**m
    if probe.lc != p.lc:
        unit = -unit
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1], t[1]))
    return FactorizationZ(unit, tuple(factors))


def is_irreducible_z(p: PolyZ) -> bool:
    return factor_over_z(p).is_irreducible()
