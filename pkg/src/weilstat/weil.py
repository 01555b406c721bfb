"""Weil polynomials: validation, isogeny splitting, root-ratio tests, base
extension, absolute simplicity and the S_A membership report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from .algebra.factor_z import FactorizationZ, factor_over_z
from .algebra.polyz import (
    PolyZ,
    cauchy_bound,
    composed_product,
    divmod_q,
    from_power_sums,
    graeffe_power,
    power_sums,
    squarefree_decomposition,
    squarefree_degree,
    squarefree_part,
    sturm_roots_in_interval,
)
from .algebra.primes import euler_phi, is_prime, is_prime_power
from .errors import WeilError


@dataclass(frozen=True)
class WeilPoly:
    q: int
    g: int
    poly: PolyZ

    @property
    def coeffs(self):
        return self.poly.coeffs

    def to_text(self) -> str:
        return self.poly.to_text()

    def middle(self) -> int:
        return self.poly[self.g]


@dataclass(frozen=True)
class IsogenyDecomposition:
    factors: tuple  # ((PolyZ, multiplicity), ...)
    certified: bool
    notes: str = ""

    def shape(self) -> str:
        if len(self.factors) == 1 and self.factors[0][1] == 1:
            return "irreducible"
        return "*".join(
            f"Q{i}[{f.degree}]" + (f"^{m}" if m > 1 else "") for i, (f, m) in enumerate(self.factors, 1)
        )


@dataclass(frozen=True)
class SAStatus:
    prime_field: bool
    torsion_free: bool
    rank_ok: bool | None
    in_sa: bool
    relations: tuple = field(default=())

    def to_dict(self):
        return {
            "prime_field": self.prime_field,
            "torsion_free": self.torsion_free,
            "rank_ok": self.rank_ok,
            "in_sa": self.in_sa,
        }


# --- validation ---------------------------------------------------------------


def _functional_sign(p: PolyZ, q: int, g: int):
    """+1 if x^(2g) P(q/x) == q^g P(x), -1 for the antisymmetric variant, else None."""
    sym = all(p[j] == q ** (g - j) * p[2 * g - j] for j in range(g + 1))
    if sym:
        return 1
    anti = all(p[j] == -(q ** (g - j)) * p[2 * g - j] for j in range(g + 1))
    return -1 if anti else None


def _real_transform(p: PolyZ, q: int, g: int):
    # peel x^(g-k) (x^2 + q)^k off from the top
    rest = list(p.coeffs) + [0] * (2 * g + 1 - len(p.coeffs))
    b = [0] * (g + 1)
    for k in range(g, -1, -1):
        c = rest[g + k]
        b[k] = c
        if c:
            term = PolyZ((q, 0, 1)) ** k
            for i, t in enumerate(term.coeffs):
                rest[g - k + i] -= c * t
    if any(rest):
        return None
    return PolyZ(tuple(b))


def real_weil_transform(P) -> PolyZ:
    """The monic h of degree g with P(x) = x^g h(x + q/x)."""
    p, q, g = (P.poly, P.q, P.g) if isinstance(P, WeilPoly) else P
    h = _real_transform(p, q, g) if _functional_sign(p, q, g) == 1 else None
    if h is None:
        raise WeilError("P(x) is not of the form x^g h(x + q/x)", "FUNCTIONAL_EQUATION_FAILED")
    return h


def _roots_in_weil_interval(h: PolyZ, q: int) -> bool:
    """Exact check that every root of h is real and lies in [-2 sqrt q, 2 sqrt q]."""
    sf = squarefree_part(h)
    if sf.degree <= 0:
        return True
    b = cauchy_bound(sf)
    if sturm_roots_in_interval(sf, -b, b) != sf.degree:
        return False
    # |y| <= 2 sqrt(q)  <=>  y^2 <= 4q ; G(y^2) = sf(y) sf(-y) has roots y_i^2
    even = sf * sf.compose_scale(-1)
    G = squarefree_part(PolyZ(tuple(even.coeffs[::2])))
    if G.degree <= 0:
        return True
    gb = cauchy_bound(G)
    if gb <= 4 * q:
        return True
    return sturm_roots_in_interval(G, 4 * q, gb) == 0


def validate_weil(p, q: int) -> WeilPoly:
    """Check that p is a q-Weil polynomial and wrap it.

    Polynomials with an odd power of x^2 - q (possible only in the
    antisymmetric form of the functional equation) are accepted after
    dividing that factor out.
    """
    p = p if isinstance(p, PolyZ) else PolyZ(tuple(p))
    if not p.is_monic() or p.degree % 2:
        raise WeilError("Weil polynomials are monic of even degree", "NOT_MONIC_EVEN")
    if not is_prime_power(q):
        raise WeilError(f"q={q} is not a prime power", "BAD_Q")
    g = p.degree // 2
    sign = _functional_sign(p, q, g)
    core, cg = p, g
    if sign == -1:
        quo, rem = divmod_q(p, PolyZ((-q, 0, 1)))
        if rem:
            raise WeilError("antisymmetric but x^2 - q does not divide", "FUNCTIONAL_EQUATION_FAILED")
        core, cg = PolyZ(tuple(int(c) for c in quo)), g - 1
        if _functional_sign(core, q, cg) != 1:
            raise WeilError("functional equation fails", "FUNCTIONAL_EQUATION_FAILED")
    elif sign is None:
        raise WeilError("functional equation fails", "FUNCTIONAL_EQUATION_FAILED")
    h = _real_transform(core, q, cg)
    if h is None:
        raise WeilError("functional equation fails", "FUNCTIONAL_EQUATION_FAILED")
    if not _roots_in_weil_interval(h, q):
        raise WeilError("some root does not have absolute value sqrt(q)", "ROOTS_OFF_CIRCLE")
    return WeilPoly(q, g, p)


def weil_poly(coeffs, q: int) -> WeilPoly:
    return validate_weil(PolyZ(tuple(coeffs)), q)


# --- isogeny splitting ---------------------------------------------------------------


def honda_tate_split(P: WeilPoly) -> IsogenyDecomposition:
    fz = factor_over_z(P.poly)
    real = PolyZ((-P.q, 0, 1))
    divisible = not divmod_q(P.poly, real)[1]
    notes = []
    if not is_prime(P.q):
        notes.append("PRIME_POWER_FIELD")
    if divisible:
        notes.append("REAL_FACTOR")
    return IsogenyDecomposition(fz.factors, certified=not notes, notes=",".join(notes))


def mth_power_split(P) -> tuple[PolyZ, int]:
    p = P.poly if isinstance(P, WeilPoly) else P
    parts = squarefree_decomposition(p)
    m = reduce(math.gcd, (i for _, i in parts), 0) or 1
    Q = reduce(lambda a, b: a * b, (s ** (i // m) for s, i in parts), PolyZ((1,)))
    if Q.lc < 0:
        Q = -Q
    assert Q**m == p
    return Q, m


# --- roots of unity among ratios ------------------------------------------------------


@lru_cache(maxsize=None)
def unity_orders(g: int, n_cap: int = 120) -> tuple[int, ...]:
    """All n <= n_cap with phi(n) <= (2g)!: possible orders of a root of unity
    lying in the splitting field of a degree-2g Weil polynomial."""
    bound = math.factorial(2 * g)
    return tuple(n for n in range(1, n_cap + 1) if euler_phi(n) <= bound)


@lru_cache(maxsize=None)
def _maximal_orders(g: int) -> tuple[int, ...]:
    ns = unity_orders(g)
    return tuple(n for n in ns if not any(m != n and m % n == 0 for m in ns))


def has_unit_root_ratio(P) -> bool:
    """True iff two roots at distinct positions have a root-of-unity ratio.

    A ratio of order n collapses two roots of the n-th Graeffe transform,
    lowering the degree of its squarefree part; it suffices to test the
    orders that are maximal under divisibility.
    """
    return _unit_root_ratio(P.poly if isinstance(P, WeilPoly) else P)


@lru_cache(maxsize=4096)
def _unit_root_ratio(p: PolyZ) -> bool:
    g = p.degree // 2 if p.degree >= 2 else 1
    d = p.degree
    base = squarefree_degree(p)
    if base < d:
        # repeated roots: ratios between equal roots do not count, so test
        # the squarefree part (distinct values) instead
        p = squarefree_part(p)
        if p.lc < 0:
            p = -p
        d = p.degree
    if d <= 1:
        return False
    orders = _maximal_orders(g)
    s = power_sums(p, d * max(orders))
    for n in orders:
        R = from_power_sums([s[k * n] for k in range(d + 1)], d)
        if squarefree_degree(R) < d:
            return True
    return False


# --- multiplicative relations ---------------------------------------------------------


def _shifted(P: PolyZ, c: int) -> PolyZ:
    """Monic polynomial with roots c * alpha."""
    d = P.degree
    return PolyZ(tuple(P[i] * c ** (d - i) for i in range(d + 1)))


def phi_relation_search(P: WeilPoly, bound: int = 1):
    """Search for multiplicative relations among the Weil numbers.

    Generators are the roots pi_1..pi_2g and q; with conj(pi) = q/pi every
    monomial reduces to ``alpha^a * beta^b * q^c``.  Taking absolute values
    forces ``c = -(a+b)/2``, and flipping alpha or beta to its conjugate makes
    ``a, b >= 0``.  Exponents with ``|e_i| <= bound`` give ``a, b <= 2*bound``.

    For a single position the test is ``q^(a/2)`` being a root of the a-th
    Graeffe transform.  For two positions (beta not at alpha or at its
    conjugate) the composed product of the a-th and b-th transforms is
    divided by the polynomials of the excluded pairs (alpha, alpha) and
    (alpha, conj alpha); a relation exists iff ``q^((a+b)/2)`` is a root of
    the quotient.  Returns ``[((a,), c) or ((a, b), c), ...]``.
    """
    if not 1 <= bound <= 3:
        raise WeilError("relation search bound must be between 1 and 3", "BOUND_TOO_LARGE")
    p, q = P.poly, P.q
    top = 2 * bound
    relations = []
    for a in range(2, top + 1, 2):
        if graeffe_power(p, a)(q ** (a // 2)) == 0:
            relations.append(((a,), a // 2))
    # +-sqrt(q) are self-conjugate, which breaks the positional pairing used
    # below; they already produced the single-position relation alpha^2 = q
    real = PolyZ((-q, 0, 1))
    while p.degree >= 2:
        quo, rem = divmod_q(p, real)
        if rem:
            break
        p = PolyZ(tuple(int(c) for c in quo))
    if p.degree < 4:
        return relations
    ones = PolyZ.from_roots([1] * p.degree)
    for a in range(1, top + 1):
        for b in range(1, a + 1):
            if (a + b) % 2:
                continue
            allpairs = composed_product(graeffe_power(p, a), graeffe_power(p, b))
            same = graeffe_power(p, a + b)
            # alpha^a (q/alpha)^b = q^b alpha^(a-b)
            conj = _shifted(graeffe_power(p, a - b) if a > b else ones, q**b)
            quo, rem = divmod_q(allpairs, same * conj)
            assert not rem, "pair multiset division must be exact"
            Q = PolyZ(tuple(int(c) for c in quo))
            if Q(q ** ((a + b) // 2)) == 0:
                relations.append(((a, b), (a + b) // 2))
    return relations


def sa_membership(P: WeilPoly, expected_rank: int | None = None, relation_bound: int | None = None) -> SAStatus:
    r = expected_rank if expected_rank is not None else P.g + 1
    prime_field = is_prime(P.q)
    torsion_free = not has_unit_root_ratio(P)
    rank_ok = None
    relations = ()
    if relation_bound:
        relations = tuple(phi_relation_search(P, relation_bound))
        if not relations:
            rank_ok = r == P.g + 1 or None
        else:
            rank_ok = False if r >= P.g + 1 else None
    in_sa = prime_field and torsion_free and rank_ok is not False
    return SAStatus(prime_field, torsion_free, rank_ok, in_sa, relations)


# --- base extension and simplicity ----------------------------------------------------


def base_extension(P: WeilPoly, i: int) -> WeilPoly:
    if i < 1:
        raise WeilError("extension degree must be positive", "BAD_EXPONENT")
    if i == 1:
        return P
    return validate_weil(graeffe_power(P.poly, i), P.q**i)


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    certificate: str
    witness: int | None = None

    def __bool__(self):
        return self.simple


def is_absolutely_simple(P: WeilPoly) -> SimplicityResult:
    fz = factor_over_z(P.poly)
    if not fz.is_irreducible():
        return SimplicityResult(False, "REDUCIBLE", 1)
    if not has_unit_root_ratio(P):
        return SimplicityResult(True, "ROOT_RATIO")
    for i in unity_orders(P.g):
        if not factor_over_z(graeffe_power(P.poly, i)).is_irreducible():
            return SimplicityResult(False, "REDUCIBLE_EXTENSION", i)
    return SimplicityResult(True, "EXHAUSTION")


def absolutely_simple_exhaustive(P: WeilPoly) -> bool:
    """Reference check: every base extension up to the order bound stays irreducible."""
    return all(factor_over_z(graeffe_power(P.poly, i)).is_irreducible() for i in unity_orders(P.g))


def is_ordinary(P: WeilPoly) -> bool:
    return math.gcd(P.middle(), P.q) == 1
