"""Galois groups of Weil polynomials as subgroups of B_g.

Frobenius at an auxiliary prime ell permutes the roots; its signed cycle
type is read off from the factorization of P mod ell together with the
pairing alpha <-> q/alpha.  Sampling many ell bounds the group from below;
for quartics the resolvent cubic gives the exact answer.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import polyf as F
from .algebra.factor_z import factor_over_z
from .algebra.polyz import PolyZ, discriminant
from .algebra.primes import is_prime, iroot, next_prime
from .errors import GaloisError
from .weyl import SignedCycleType, all_subgroups, build_group, conjugacy_classes

EXACT = "EXACT"
SAMPLED = "SAMPLED"
AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class GaloisId:
    group: str
    method: str
    samples_used: int = 0
    observed_types: frozenset = frozenset()
    rejected_ells: tuple = ()
    candidates: tuple = ()  # competing labels when AMBIGUOUS
    certificate: str = ""
    type_counts: dict = field(default_factory=dict, compare=False)

    @property
    def ambiguous(self) -> bool:
        return self.group == AMBIGUOUS

    def to_dict(self):
        return {
            "group": self.group,
            "method": self.method,
            "samples_used": self.samples_used,
            "observed_types": sorted(str(t) for t in self.observed_types),
            "rejected_ells": list(self.rejected_ells),
            "candidates": list(self.candidates),
            "certificate": self.certificate,
            "type_counts": {str(k): v for k, v in sorted(self.type_counts.items())},
        }


def _unpack(P):
    """(ascending integer coefficients, q, g) from a WeilPoly or (poly, q)."""
    if isinstance(P, tuple) and len(P) == 2:
        poly, q = P
        poly = poly if isinstance(poly, PolyZ) else PolyZ(tuple(poly))
        return poly, q, poly.degree // 2
    return P.poly, P.q, P.g


# --- Frobenius types -------------------------------------------------------------


def reciprocal_partner(g: list, q: int, ell: int) -> list:
    """Monic factor whose roots are q/alpha for the roots alpha of g."""
    k = len(g) - 1
    out = [g[k - j] * pow(q, k - j, ell) % ell for j in range(k + 1)]
    return F.monic(F.trim(out), ell)


def frob_signed_type(P, ell: int) -> SignedCycleType:
    """Signed cycle type of Frobenius at ell acting on the roots of P."""
    poly, q, _ = _unpack(P)
    if not is_prime(ell) or q % ell == 0:
        raise GaloisError(f"ell={ell} is not a prime coprime to q", "BAD_ELL")
    f = [c % ell for c in poly.coeffs]
    if len(F.pgcd(f, F.pderiv(f, ell), ell)) > 1:
        raise GaloisError(f"P is not squarefree mod {ell}", "BAD_ELL")
    if len(F.pgcd(f, F.trim([-q % ell, 0, 1]), ell)) > 1:
        raise GaloisError(f"P shares a root with x^2-q mod {ell}", "BAD_ELL")
    rng = __import__("random").Random(f"0:{ell}:{tuple(f)}")
    _, facs = F.factor_list(f, ell, rng)
    remaining = [tuple(h) for h, _ in facs]
    cycles = []
    while remaining:
        h = remaining.pop(0)
        partner = tuple(reciprocal_partner(list(h), q, ell))
        k = len(h) - 1
        if partner == h:
            if k % 2:
                raise GaloisError("odd self-paired factor", "BAD_ELL")
            cycles.append((k // 2, -1))
        else:
            remaining.remove(partner)
            cycles.append((k, 1))
    return SignedCycleType(tuple(sorted(cycles, key=lambda c: (c[0], -c[1]))))


# --- subgroup lattice of B_g --------------------------------------------------------


@dataclass(frozen=True)
class SubgroupClass:
    label: str
    order: int
    types: frozenset  # SignedCycleType of every element
    transitive: bool


def _label_b2(order, type_strs):
    if order == 1:
        return "1"
    if order == 2:
        return {"[1-1-]": "C2(center)", "[1+1-]": "C2(sign)", "[2+]": "C2(swap±)"}[
            next(t for t in type_strs if t != "[1+1+]")
        ]
    if order == 4:
        if "[2-]" in type_strs:
            return "C4"
        return "V4(diag)" if "[1+1-]" in type_strs else "V4(trans)"
    return "D4"


def _is_transitive(H, n):
    """Transitivity on the 2n roots, i.e. on the signed coordinates."""
    reach = {(0, 1)}
    frontier = [(0, 1)]
    while frontier:
        i, s = frontier.pop()
        for x in H:
            pt = (x.perm[i], s * x.signs[i])
            if pt not in reach:
                reach.add(pt)
                frontier.append(pt)
    return len(reach) == 2 * n


@lru_cache(maxsize=None)
def subgroup_classes(g: int) -> tuple:
    """Subgroups of B_g up to conjugacy, sorted by order."""
    if g not in (1, 2, 3):
        raise GaloisError("subgroup tables are built for g <= 3", "UNSUPPORTED_GENUS")
    B = build_group("B", g)
    gens = list(B.gens) + [x.inverse() for x in B.gens]
    seen = set()
    out = []
    counts = Counter()
    for H in all_subgroups(B):
        if H in seen:
            continue
        orbit = {H}
        frontier = [H]
        while frontier:
            K = frontier.pop()
            for x in gens:
                xi = x.inverse()
                J = frozenset(x * k * xi for k in K)
                if J not in orbit:
                    orbit.add(J)
                    frontier.append(J)
        seen |= orbit
        types = frozenset(k.cycle_type() for k in H)
        strs = {str(t) for t in types}
        if g == 1:
            label = "1" if len(H) == 1 else "B1"
        elif g == 2:
            label = _label_b2(len(H), strs)
        else:
            counts[len(H)] += 1
            label = "B3" if len(H) == B.order else f"G{len(H)}#{counts[len(H)]}"
        out.append(SubgroupClass(label, len(H), types, _is_transitive(H, g)))
    out.sort(key=lambda s: (s.order, s.label))
    return tuple(out)


def full_group_label(g: int) -> str:
    return subgroup_classes(g)[-1].label


def minimal_covers(observed, g: int) -> list[SubgroupClass]:
    """Smallest-order subgroup classes whose type set contains ``observed``."""
    covers = [s for s in subgroup_classes(g) if set(observed) <= s.types]
    if not covers:
        raise GaloisError("observed types fit no subgroup of B_g", "INCONSISTENT_TYPES")
    best = covers[0].order
    return [s for s in covers if s.order == best]


def forces_full_group(observed, g: int) -> bool:
    return len([s for s in subgroup_classes(g) if set(observed) <= s.types]) == 1


# --- sampling ---------------------------------------------------------------------------


def identify_galois_sampled(P, ell_budget: int = 100, max_scan: int | None = None, early_exit: bool = True) -> GaloisId:
    """Minimal subgroup of B_g consistent with Frobenius types at the first
    ``ell_budget`` usable primes.  The result is a lower bound for the true
    group; equality is Monte Carlo."""
    poly, q, g = _unpack(P)
    max_scan = max_scan or 4 * ell_budget + 50
    observed = Counter()
    rejected = []
    used = 0
    ell = 2
    scanned = 0
    while used < ell_budget and scanned < max_scan:
        ell = next_prime(ell)
        scanned += 1
        try:
            t = frob_signed_type((poly, q), ell)
        except GaloisError:
            rejected.append(ell)
            continue
        observed[t] += 1
        used += 1
        if early_exit and forces_full_group(observed, g):
            break
    if not used:
        raise GaloisError(f"no usable ell among the first {scanned} primes", "NO_USABLE_ELL")
    covers = minimal_covers(observed, g)
    types = frozenset(observed)
    if len(covers) > 1:
        return GaloisId(AMBIGUOUS, SAMPLED, used, types, tuple(rejected), tuple(c.label for c in covers),
                        "equal-order covers", dict(observed))
    return GaloisId(covers[0].label, SAMPLED, used, types, tuple(rejected), (),
                    f"minimal cover of {len(types)} observed types", dict(observed))


# --- exact quartic ----------------------------------------------------------------------


def _is_square(n: int) -> bool:
    return n >= 0 and iroot(n, 2) ** 2 == n


def _square_or_times(n: int, delta: int) -> bool:
    """n in Q^2 or delta*Q^2 (n an integer, delta a nonzero integer)."""
    return n == 0 or _is_square(n) or (n * delta > 0 and _is_square(n * delta))


def resolvent_cubic(P: PolyZ) -> PolyZ:
    d, c, b, a, _ = P.coeffs
    return PolyZ((-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1))


def galois_quartic_exact(P) -> GaloisId:
    """Exact Galois group of an irreducible Weil quartic (C4, V4(trans) or D4)."""
    poly, q, g = _unpack(P)
    if poly.degree != 4:
        raise GaloisError("quartic expected", "NOT_QUARTIC")
    if not factor_over_z(poly).is_irreducible():
        raise GaloisError("P is reducible over Q", "NOT_IRREDUCIBLE")
    R = resolvent_cubic(poly)
    fac = factor_over_z(R)
    roots = sorted(-f[0] for f, m in fac.factors for _ in range(m) if f.degree == 1)
    if not roots:
        raise GaloisError(f"resolvent {R.to_text('y')} is irreducible", "UNEXPECTED_GROUP")
    if len(roots) == 3:
        return GaloisId("V4(trans)", EXACT, certificate=f"resolvent {R.to_text('y')} splits completely")
    r = roots[0]
    d, c, b, a, _ = poly.coeffs
    delta = discriminant(poly)
    d1 = r * r - 4 * d
    d2 = a * a - 4 * (b - r)
    cyclic = _square_or_times(d1, delta) and _square_or_times(d2, delta)
    cert = (f"resolvent {R.to_text('y')} has one rational root {r}; "
            f"discriminants {d1}, {d2} vs disc {delta}")
    return GaloisId("C4" if cyclic else "D4", EXACT, certificate=cert)


def galois_exact(P) -> GaloisId:
    """Exact group for g = 1 or for an irreducible quartic."""
    poly, q, g = _unpack(P)
    if g == 1:
        irreducible = factor_over_z(poly).is_irreducible()
        return GaloisId("B1" if irreducible else "1", EXACT,
                        certificate=f"discriminant {discriminant(poly)}")
    return galois_quartic_exact((poly, q))


def is_below(lower: str, upper: str, g: int = 2) -> bool:
    """Whether some conjugate of ``lower`` sits inside ``upper`` (g <= 2)."""
    if lower == upper:
        return True
    classes = {s.label: s for s in subgroup_classes(g)}
    lo, hi = classes[lower], classes[upper]
    if hi.order % lo.order or lo.order >= hi.order:
        return False
    B = build_group("B", g)
    subs = all_subgroups(B)
    his = [H for H in subs if len(H) == hi.order and _label_of(H, g) == upper]
    los = [H for H in subs if len(H) == lo.order and _label_of(H, g) == lower]
    return any(L <= H for L in los for H in his)


def _label_of(H, g):
    types = frozenset(k.cycle_type() for k in H)
    for s in subgroup_classes(g):
        if s.order == len(H) and s.types == types:
            return s.label
    return None


def class_types(g: int) -> list:
    """Signed cycle types of B_g with their class sizes."""
    return [(c.type, c.size) for c in conjugacy_classes(build_group("B", g))]
