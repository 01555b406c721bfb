"""Exact univariate polynomials over the integers.

Coefficients are stored ascending (``coeffs[i]`` multiplies ``x**i``) as
Python ints, so nothing overflows.  Division-based algorithms run over
``fractions.Fraction`` and convert back when the result is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from ..errors import AlgebraError


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


@dataclass(frozen=True)
class PolyZ:
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in _trim(self.coeffs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return PolyZ(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return PolyZ(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return PolyZ(())
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyZ(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = PolyZ((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        q, r = divmod_q(self, other)
        if any(c.denominator != 1 for c in q + r):
            raise AlgebraError("division not exact over Z", "NOT_DIVISIBLE")
        return PolyZ(tuple(int(c) for c in q)), PolyZ(tuple(int(c) for c in r))

    def __floordiv__(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise AlgebraError("nonzero remainder", "NOT_DIVISIBLE")
        return q

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> PolyZ:
        return PolyZ(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def content(self) -> int:
        g = reduce(math.gcd, self.coeffs, 0)
        return -g if self.lc < 0 else g

    def primitive(self) -> PolyZ:
        c = self.content()
        return PolyZ(tuple(a // c for a in self.coeffs)) if c else self

    def compose_scale(self, s: int) -> PolyZ:
        """p(s*x)."""
        return PolyZ(tuple(c * s**i for i, c in enumerate(self.coeffs)))

    def reverse(self) -> PolyZ:
        return PolyZ(tuple(reversed(self.coeffs)))

    def __repr__(self):
        return f"PolyZ({self.to_text()!r})"

    def to_text(self, var="x") -> str:
        from ..polytext import format_poly

        return format_poly(self.coeffs, var)


def _coerce(p) -> PolyZ:
    if isinstance(p, PolyZ):
        return p
    if isinstance(p, int):
        return PolyZ((p,))
    return PolyZ(tuple(p))


def divmod_q(a, b):
    """Polynomial long division over Q.  Returns Fraction coefficient lists."""
    a, b = _coerce(a), _coerce(b)
    if b.is_zero():
        raise AlgebraError("division by zero polynomial", "ZERO_POLY")
    r = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, b.lc
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b.coeffs):
                r[k + j] -= c * bj
    return _trim(q), _trim(r[:db])


def _frac_poly_to_primitive(cs) -> PolyZ:
    if not cs:
        return PolyZ(())
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in cs), 1)
    return PolyZ(tuple(int(c * den) for c in cs)).primitive()


def gcd(a: PolyZ, b: PolyZ) -> PolyZ:
    """Primitive gcd over Z with positive leading coefficient."""
    a, b = _coerce(a), _coerce(b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    ca, cb = abs(a.content()), abs(b.content())
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = divmod_q(a, b)
        a, b = b, _frac_poly_to_primitive(r)
    g = a.primitive()
    c = math.gcd(ca, cb)
    return PolyZ(tuple(c * x for x in g.coeffs)) if g.degree == 0 else g


def squarefree_decomposition(p: PolyZ):
    """Yun's algorithm.  Returns ``[(s_1, 1), (s_2, 2), ...]`` with primitive,
    pairwise coprime, squarefree ``s_i`` and ``p = c * prod s_i**i``; entries
    with ``s_i == 1`` are omitted."""
    p = _coerce(p)
    if p.is_zero():
        raise AlgebraError("zero polynomial", "ZERO_POLY")
    if p.degree == 0:
        return []
    # Yun over Q with monic normalisation so that d = c - b' stays consistent
    f = _monic_q([Fraction(c) for c in p.coeffs])
    df = _deriv_q(f)
    a0 = _gcd_q(f, df)
    b = _quo_q(f, a0)
    c = _quo_q(df, a0)
    d = _sub_q(c, _deriv_q(b))
    out, i = [], 1
    while len(b) > 1:
        a = _gcd_q(b, d)
        if len(a) > 1:
            out.append((_frac_poly_to_primitive(a), i))
        b = _quo_q(b, a)
        c = _quo_q(d, a)
        d = _sub_q(c, _deriv_q(b))
        i += 1
    return out


def _monic_q(f):
    return [c / f[-1] for c in f]


def _deriv_q(f):
    return _trim([i * c for i, c in enumerate(f)][1:])


def _sub_q(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _gcd_q(a, b):
    while b:
        a, b = b, _rem_q(a, b)
    return _monic_q(a) if a else a


def _quo_q(a, b):
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return []
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return _trim(q)


def squarefree_part(p: PolyZ) -> PolyZ:
    parts = squarefree_decomposition(p)
    return reduce(lambda x, y: x * y, (s for s, _ in parts), PolyZ((1,)))


def squarefree_degree(p: PolyZ) -> int:
    p = _coerce(p)
    return p.degree - gcd(p, p.derivative()).degree


def resultant(a: PolyZ, b: PolyZ) -> int:
    """Res(a, b) = lc(a)**deg(b) * prod b(alpha) over the roots alpha of a."""
    a, b = _coerce(a), _coerce(b)
    if a.is_zero() or b.is_zero():
        raise AlgebraError("resultant of zero polynomial", "ZERO_POLY")
    return _resultant_q([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])


def _resultant_q(a, b):
    # Euclid over Q using Res(a, b) = (-1)^(m n) Res(b, a) and
    # Res(b, a) = lc(b)^(deg a - deg r) Res(b, r) for r = a mod b.
    res = Fraction(1)
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            res *= b[0] ** m
            break
        if m == 0:
            res *= a[0] ** n
            break
        if m < n:
            a, b = b, a
            res *= (-1) ** (m * n)
            continue
        r = _rem_q(a, b)
        if not r:
            return 0
        # Res(a, b) = (-1)^(mn) Res(b, a) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)
        res *= (-1) ** (m * n) * b[-1] ** (m - (len(r) - 1))
        a, b = b, r
    assert res.denominator == 1
    return int(res)


def _rem_q(a, b):
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return _trim(r[:db])


def discriminant(p: PolyZ) -> int:
    p = _coerce(p)
    if p.is_zero():
        raise AlgebraError("discriminant of zero polynomial", "ZERO_POLY")
    n = p.degree
    if n < 1:
        raise AlgebraError("discriminant of a constant", "ZERO_POLY")
    if n == 1:
        return 1
    r = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p.lc)
    assert rem == 0
    return q


def power_sums(p: PolyZ, count: int) -> list[int]:
    """Newton power sums ``[s_0, s_1, ..., s_count]`` of the roots of monic p."""
    p = _coerce(p)
    if not p.is_monic():
        raise AlgebraError("power sums need a monic polynomial", "NOT_MONIC")
    n = p.degree
    # e-form: x^n + c_{n-1} x^{n-1} + ... ; c_k = coefficient of x^(n-k)
    c = [p[n - k] for k in range(n + 1)]
    s = [n] + [0] * count
    for k in range(1, count + 1):
        acc = -k * c[k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc -= c[i] * s[k - i]
        s[k] = acc
    return s


def from_power_sums(s, n: int) -> PolyZ:
    """Monic degree-n polynomial whose roots have power sums s[1..n]."""
    c = [1] + [0] * n
    for k in range(1, n + 1):
        acc = s[k]
        for i in range(1, k):
            acc += c[i] * s[k - i]
        q, r = divmod(-acc, k)
        if r:
            raise AlgebraError("power sums are not those of an integer polynomial", "NOT_INTEGRAL")
        c[k] = q
    return PolyZ(tuple(reversed(c)))


def graeffe_power(p: PolyZ, n: int) -> PolyZ:
    """Monic polynomial whose roots are the n-th powers of the roots of p.

    Equals Res_y(p(y), x - y**n) for monic p; computed from the power sums
    s_n, s_2n, ..., s_dn of p via Newton's identities.
    """
    p = _coerce(p)
    if not p.is_monic():
        raise AlgebraError("graeffe_power needs a monic polynomial", "NOT_MONIC")
    if n < 1:
        raise AlgebraError("exponent must be positive", "BAD_EXPONENT")
    d = p.degree
    if n == 1 or d == 0:
        return p
    s = power_sums(p, d * n)
    return from_power_sums([s[k * n] for k in range(d + 1)], d)


def composed_product(a: PolyZ, b: PolyZ) -> PolyZ:
    """Monic polynomial whose roots are all products alpha*beta.

    Equals Res_y(a(y), y**deg(b) * b(x/y)); computed through power sums,
    using s_k(alpha*beta) = s_k(alpha) * s_k(beta).
    """
    a, b = _coerce(a), _coerce(b)
    if not (a.is_monic() and b.is_monic()):
        raise AlgebraError("composed_product needs monic inputs", "NOT_MONIC")
    n = a.degree * b.degree
    sa, sb = power_sums(a, n), power_sums(b, n)
    return from_power_sums([x * y for x, y in zip(sa, sb)], n)


def cauchy_bound(p: PolyZ) -> Fraction:
    """Rational upper bound on the absolute value of every complex root."""
    lc = abs(p.lc)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lc)


def sturm_sequence(p: PolyZ):
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while len(seq[-1]) > 1:
        r = _rem_q(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x) -> int:
    changes, last = 0, 0
    for poly in seq:
        v = Fraction(0)
        for c in reversed(poly):
            v = v * x + c
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                changes += 1
            last = s
    return changes


def sturm_roots_in_interval(p: PolyZ, lo, hi) -> int:
    """Number of distinct real roots of a squarefree p in ``(lo, hi]``."""
    p = _coerce(p)
    if p.is_zero():
        raise AlgebraError("zero polynomial", "ZERO_POLY")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise AlgebraError("need lo < hi", "BAD_INTERVAL")
    if p.degree == 0:
        return 0
    if gcd(p, p.derivative()).degree > 0:
        raise AlgebraError("Sturm counting needs a squarefree polynomial", "NOT_SQUAREFREE")
    seq = sturm_sequence(p)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def real_root_count(p: PolyZ) -> int:
    """Number of distinct real roots (squarefree part is taken internally)."""
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    b = cauchy_bound(sf)
    return sturm_roots_in_interval(sf, -b, b)
