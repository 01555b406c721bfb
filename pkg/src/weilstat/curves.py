"""Point counting on y^2 = f(x) over F_p and F_p^2, Jacobian arithmetic in
Mumford representation (Cantor's algorithm) and the Frobenius polynomial.

Sign convention: the Frobenius polynomial is ``P(x) = prod (x - pi_i)``, so
with ``n1 = #C(F_p)`` the trace is ``sum pi_i = p + 1 - n1`` and the stored
coefficient ``a1`` (of ``x^(2g-1)``) is ``n1 - p - 1``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

import numpy as np

from .algebra import polyf as F
from .algebra.polyz import PolyZ, discriminant
from .algebra.primes import is_prime, sqrt_mod, square_table
from .errors import CurveError

ENUM_THRESHOLD = 500
FP2_BUDGET = 499
FALLBACK_THRESHOLD = 5000


@dataclass(frozen=True)
class HyperellipticCurve:
    genus: int
    f: PolyZ
    label: str = ""

    def __post_init__(self):
        f = self.f if isinstance(self.f, PolyZ) else PolyZ(tuple(self.f))
        object.__setattr__(self, "f", f)
        if self.genus not in (1, 2):
            raise CurveError(f"genus {self.genus} unsupported", "BAD_GENUS")
        if f.degree != 2 * self.genus + 1:
            raise CurveError(
                f"genus {self.genus} needs an odd model of degree {2 * self.genus + 1}, got {f.degree}",
                "BAD_DEGREE",
            )
        if not f.is_monic():
            raise CurveError("f must be monic", "NOT_MONIC")
        if discriminant(f) == 0:
            raise CurveError("f has a repeated root", "SINGULAR")

    @property
    def disc(self) -> int:
        return discriminant(self.f)

    def has_good_reduction(self, p: int) -> bool:
        return p > 2 and is_prime(p) and self.disc % p != 0

    def check_good(self, p: int):
        if p == 2 or not is_prime(p) or (2 * self.disc) % p == 0:
            raise CurveError(f"bad reduction at p={p}", "BAD_REDUCTION")

    @classmethod
    def from_dict(cls, d) -> HyperellipticCurve:
        return cls(int(d["genus"]), PolyZ(tuple(int(c) for c in d["f"])), d.get("label", ""))

    @classmethod
    def from_json(cls, text: str) -> HyperellipticCurve:
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"label": self.label, "genus": self.genus, "f": list(self.f.coeffs)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class PointCounts:
    p: int
    n1: int
    n2: int | None
    a1: int
    a2: int | None


# --- counting ---------------------------------------------------------------


def _eval_fp(coeffs, p):
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * x + (c % p)) % p
    return acc


def count_points_fp(curve: HyperellipticCurve, p: int) -> int:
    """#C(F_p) for the odd-degree model: affine points plus one at infinity."""
    curve.check_good(p)
    chi = square_table(p)
    vals = _eval_fp(curve.f.coeffs, p)
    return 1 + p + int(chi[vals].sum(dtype=np.int64))


def nonresidue(p: int) -> int:
    u = 2
    while pow(u, (p - 1) // 2, p) != p - 1:
        u += 1
    return u


def count_points_fp2(curve: HyperellipticCurve, p: int, max_p: int = FP2_BUDGET) -> int:
    """#C(F_{p^2}) by enumeration over F_p[t]/(t^2 - u)."""
    curve.check_good(p)
    if p > max_p:
        raise CurveError(f"p={p} exceeds the F_p^2 enumeration budget {max_p}", "BUDGET_EXCEEDED")
    u = nonresidue(p)
    chi = square_table(p)
    coeffs = [c % p for c in curve.f.coeffs]
    a = np.arange(p, dtype=np.int64)
    rows = max(1, 2_000_000 // p)
    total = 0
    for b0 in range(0, p, rows):
        b = np.arange(b0, min(p, b0 + rows), dtype=np.int64)[:, None]
        xa = np.broadcast_to(a, (b.shape[0], p))
        xb = np.broadcast_to(b, (b.shape[0], p))
        y0 = np.full(xa.shape, coeffs[-1], dtype=np.int64)
        y1 = np.zeros(xa.shape, dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            # (y0 + y1 t)(a + b t) with t^2 = u
            n0 = (y0 * xa + (u * y1 % p) * xb + c) % p
            n1 = (y0 * xb + y1 * xa) % p
            y0, y1 = n0, n1
        norm = (y0 * y0 - (u * (y1 * y1 % p))) % p
        # z in F_{p^2} is a nonzero square iff its norm is a nonzero square in F_p
        total += int(chi[norm].sum(dtype=np.int64))
    return 1 + p * p + total


def point_counts(curve: HyperellipticCurve, p: int, with_fp2: bool = True) -> PointCounts:
    n1 = count_points_fp(curve, p)
    a1 = n1 - p - 1
    if not with_fp2:
        return PointCounts(p, n1, None, a1, None)
    n2 = count_points_fp2(curve, p, max_p=max(p, FP2_BUDGET))
    s1, s2 = -a1, p * p + 1 - n2
    a2 = (s1 * s1 - s2) // 2
    return PointCounts(p, n1, n2, a1, a2)


# --- Mumford representation and Cantor's algorithm ------------------------------


def _xgcd(a, b, p):
    """(d, s, t) with d = s*a + t*b monic gcd over F_p."""
    r0, r1 = F.trim(list(a)), F.trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = F.pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, F.psub(s0, F.pmul(q, s1, p), p)
        t0, t1 = t1, F.psub(t0, F.pmul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return F.pscale(r0, inv, p), F.pscale(s0, inv, p), F.pscale(t0, inv, p)


class Jacobian:
    """Group law on J(F_p) for y^2 = f(x) with deg f = 2g + 1.

    Elements are pairs ``(u, v)`` of coefficient tuples, ``u`` monic of degree
    at most g, ``deg v < deg u`` and ``u | v^2 - f``.  The pair is canonical,
    so it doubles as a hash key.
    """

    def __init__(self, curve: HyperellipticCurve, p: int):
        curve.check_good(p)
        self.curve = curve
        self.p = p
        self.g = curve.genus
        self.f = [c % p for c in curve.f.coeffs]
        self.zero = ((1,), ())

    def is_valid(self, D) -> bool:
        u, v = list(D[0]), list(D[1])
        p = self.p
        if not u or u[-1] != 1 or len(u) - 1 > self.g or len(v) >= len(u):
            return False
        return not F.pmod(F.psub(F.pmul(v, v, p), self.f, p), u, p)

    def neg(self, D):
        u, v = D
        return (u, tuple(F.pmod([(-c) % self.p for c in v], list(u), self.p)))

    def add(self, D1, D2):
        p, f = self.p, self.f
        u1, v1 = list(D1[0]), list(D1[1])
        u2, v2 = list(D2[0]), list(D2[1])
        d1, e1, e2 = _xgcd(u1, u2, p)
        d, c1, c2 = _xgcd(d1, F.padd(v1, v2, p), p)
        s1, s2, s3 = F.pmul(c1, e1, p), F.pmul(c1, e2, p), c2
        dd = F.pmul(d, d, p)
        u = F.pdivmod(F.pmul(u1, u2, p), dd, p)[0]
        num = F.padd(
            F.padd(F.pmul(F.pmul(s1, u1, p), v2, p), F.pmul(F.pmul(s2, u2, p), v1, p), p),
            F.pmul(s3, F.padd(F.pmul(v1, v2, p), f, p), p),
            p,
        )
        v = F.pmod(F.pdivmod(num, d, p)[0], u, p)
        while len(u) - 1 > self.g:
            u = F.pdivmod(F.psub(f, F.pmul(v, v, p), p), u, p)[0]
            v = F.pmod([(-c) % p for c in v], u, p)
        u = F.monic(u, p)
        v = F.pmod(v, u, p) if len(u) > 1 else []
        return (tuple(u), tuple(v))

    def mul(self, n: int, D):
        if n < 0:
            return self.mul(-n, self.neg(D))
        result, base = self.zero, D
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def random_point(self, rng):
        p = self.p
        while True:
            x0 = rng.randrange(p)
            y2 = F.peval(self.f, x0, p)
            y0 = sqrt_mod(y2, p)
            if y0 is not None:
                if rng.random() < 0.5:
                    y0 = (-y0) % p
                return ((-x0 % p, 1), (y0,) if y0 else ())

    def random_element(self, rng):
        D = self.zero
        for _ in range(self.g):
            D = self.add(D, self.random_point(rng))
        return D

    def order_of(self, D, multiple: int) -> int:
        """Exact order of D given a known multiple of it."""
        if self.mul(multiple, D) != self.zero:
            raise CurveError("not a multiple of the order", "BAD_MULTIPLE")
        n = multiple
        for q, _ in _factorize_int(multiple):
            while n % q == 0 and self.mul(n // q, D) == self.zero:
                n //= q
        return n


def _factorize_int(n: int):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# --- a2 determination -----------------------------------------------------------


def a2_window(a1: int, p: int) -> tuple[int, int]:
    """Integer range for a2 allowed by the real Weil polynomial
    y^2 + a1*y + (a2 - 2p) having both roots in [-2 sqrt(p), 2 sqrt(p)]."""
    t = 4 * a1 * a1 * p
    r = math.isqrt(t)
    if r * r < t:
        r += 1
    lo = r - 2 * p
    hi = (a1 * a1 + 8 * p) // 4
    return lo, hi


def jacobian_order_from(a1: int, a2: int, p: int) -> int:
    return 1 + a1 + a2 + p * a1 + p * p


def hasse_witt(curve: HyperellipticCurve, p: int):
    """Cartier-Manin matrix entries [c_{ip-j}] of f^((p-1)/2) mod p (genus 2).

    Returns ``(trace, det)``; they satisfy ``a1 == -trace`` and
    ``a2 == det (mod p)``.
    """
    if p > 1_000_000:
        raise CurveError("Hasse-Witt fallback limited to p < 1e6", "BUDGET_EXCEEDED")
    n = 2 * p
    base = np.array([c % p for c in curve.f.coeffs], dtype=np.int64)
    result = np.array([1], dtype=np.int64)
    e = (p - 1) // 2
    while e:
        if e & 1:
            result = np.convolve(result, base)[:n] % p
        e >>= 1
        if e:
            base = np.convolve(base, base)[:n] % p
    c = np.zeros(n, dtype=np.int64)
    c[: len(result)] = result
    w = [[int(c[i * p - j]) for j in (1, 2)] for i in (1, 2)]
    return (w[0][0] + w[1][1]) % p, (w[0][0] * w[1][1] - w[0][1] * w[1][0]) % p


def jacobian_order_bsgs(
    curve: HyperellipticCurve,
    p: int,
    a1: int,
    seed: int = 0,
    max_tries: int = 12,
    fallback_threshold: int = FALLBACK_THRESHOLD,
) -> tuple[int, int]:
    """Determine a2 (and |J(F_p)| = P(1)) by baby-step giant-step.

    Every a2 in the Weil window with ``P(1) * D == 0`` is kept, for random
    classes D; candidate sets are intersected until one value remains.  If
    the group exponent is too small to separate candidates, the Hasse-Witt
    congruence mod p is applied, then enumeration over F_{p^2}.
    """
    if curve.genus != 2:
        raise CurveError("jacobian_order_bsgs is for genus 2; genus 1 uses n1 alone", "BAD_GENUS")
    J = Jacobian(curve, p)
    lo, hi = a2_window(a1, p)
    width = hi - lo
    m = math.isqrt(width) + 1
    rng = random.Random(seed * 1_000_003 + p)
    candidates = None
    det = None
    stale = 0
    for _ in range(max_tries):
        D = J.random_element(rng)
        baby = {}
        step = J.zero
        for j in range(m):
            baby.setdefault(J.neg(step), []).append(j)
            step = J.add(step, D)
        giant = step  # m * D
        T = J.mul(jacobian_order_from(a1, lo, p), D)
        found = set()
        i = 0
        while i * m <= width:
            for j in baby.get(T, ()):
                k = i * m + j
                if k <= width:
                    found.add(lo + k)
            T = J.add(T, giant)
            i += 1
        before = None if candidates is None else len(candidates)
        candidates = found if candidates is None else candidates & found
        if len(candidates) > 1:
            if det is None:
                _, det = hasse_witt(curve, p)
            candidates = {c for c in candidates if (c - det) % p == 0}
        if len(candidates) <= 1:
            break
        # a small group exponent keeps the same survivors for every class
        stale = stale + 1 if before == len(candidates) else 0
        if stale >= 3:
            break
    if candidates is not None and len(candidates) == 1:
        a2 = candidates.pop()
        return a2, jacobian_order_from(a1, a2, p)
    if p <= fallback_threshold:
        pc = point_counts(curve, p)
        return pc.a2, jacobian_order_from(a1, pc.a2, p)
    raise CurveError(f"a2 not unique after {max_tries} classes at p={p}", "NONUNIQUE_AFTER_LIMIT")


def frobenius_poly(
    curve: HyperellipticCurve,
    p: int,
    method: str = "auto",
    enum_threshold: int = ENUM_THRESHOLD,
    seed: int = 0,
):
    """Frobenius polynomial of the Jacobian at a good odd prime, validated.

    ``method`` is ``auto`` (enumeration for p <= enum_threshold, BSGS above),
    ``enum``, ``bsgs`` or ``both`` (runs both and insists they agree).
    """
    from .weil import validate_weil

    n1 = count_points_fp(curve, p)
    a1 = n1 - p - 1
    if curve.genus == 1:
        return validate_weil(PolyZ((p, a1, 1)), p)
    if method == "auto":
        method = "enum" if p <= enum_threshold else "bsgs"
    if method == "enum":
        a2 = point_counts(curve, p).a2
    elif method == "bsgs":
        a2, _ = jacobian_order_bsgs(curve, p, a1, seed=seed)
    elif method == "both":
        a2 = point_counts(curve, p).a2
        b2, _ = jacobian_order_bsgs(curve, p, a1, seed=seed)
        if a2 != b2:
            raise CurveError(f"enumeration a2={a2} but BSGS a2={b2} at p={p}", "METHOD_MISMATCH")
    else:
        raise CurveError(f"unknown method {method!r}", "BAD_METHOD")
    return validate_weil(PolyZ((p * p, p * a1, a2, a1, 1)), p)
