"""Signed permutation groups: B_n, W(D_n), the (Z/2)^3 x| S_3 example,
conjugacy classes, and the class-transversal generation check.

A signed permutation sends ``e_i`` to ``signs[i] * e_{perm[i]}`` (0-based).
Products apply the right factor first: ``(g * h)(v) = g(h(v))``.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import GroupError

MAX_ENUM_N = 6


@dataclass(frozen=True, order=True)
class SignedPerm:
    perm: tuple
    signs: tuple

    @classmethod
    def identity(cls, n: int) -> SignedPerm:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_images(cls, images) -> SignedPerm:
        """From 1-based signed images, e.g. ``(2, -1)`` for e1->e2, e2->-e1."""
        return cls(tuple(abs(i) - 1 for i in images), tuple(1 if i > 0 else -1 for i in images))

    @property
    def n(self) -> int:
        return len(self.perm)

    def images(self) -> tuple:
        return tuple(s * (j + 1) for j, s in zip(self.perm, self.signs))

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        # other first: e_i -> t_i e_{tau(i)} -> t_i s_{tau(i)} e_{sigma(tau(i))}
        perm = tuple(self.perm[j] for j in other.perm)
        signs = tuple(t * self.signs[j] for j, t in zip(other.perm, other.signs))
        return SignedPerm(perm, signs)

    def inverse(self) -> SignedPerm:
        n = self.n
        perm = [0] * n
        signs = [1] * n
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            perm[j] = i
            signs[j] = s
        return SignedPerm(tuple(perm), tuple(signs))

    def apply(self, v):
        """Act on a coordinate vector."""
        out = [0] * self.n
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = s * v[i]
        return tuple(out)

    def sign_product(self) -> int:
        prod = 1
        for s in self.signs:
            prod *= s
        return prod

    def cycle_type(self) -> SignedCycleType:
        seen = [False] * self.n
        cycles = []
        for start in range(self.n):
            if seen[start]:
                continue
            length, sign, i = 0, 1, start
            while not seen[i]:
                seen[i] = True
                sign *= self.signs[i]
                i = self.perm[i]
                length += 1
            cycles.append((length, sign))
        return SignedCycleType(tuple(sorted(cycles, key=lambda c: (c[0], -c[1]))))

    def order(self) -> int:
        o = 1
        for length, sign in self.cycle_type().cycles:
            k = length if sign > 0 else 2 * length
            o = o * k // _gcd(o, k)
        return o

    def __repr__(self):
        return f"SignedPerm{self.images()}"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True, order=True)
class SignedCycleType:
    cycles: tuple  # sorted ((length, +-1), ...)

    @classmethod
    def parse(cls, text: str) -> SignedCycleType:
        """Parse ``[1+1-]`` or ``[2-]`` notation."""
        body = text.strip().strip("[]")
        cycles = []
        num = ""
        for ch in body:
            if ch.isdigit():
                num += ch
            elif ch in "+-":
                cycles.append((int(num), 1 if ch == "+" else -1))
                num = ""
        return cls(tuple(sorted(cycles, key=lambda c: (c[0], -c[1]))))

    @property
    def n(self) -> int:
        return sum(length for length, _ in self.cycles)

    def negative_cycles(self) -> int:
        return sum(1 for _, s in self.cycles if s < 0)

    def factor_degrees(self) -> list[int]:
        """Degrees of the factors of a degree-2n polynomial with this Frobenius
        type: a negative k-cycle is one factor of degree 2k, a positive k-cycle
        two factors of degree k."""
        out = []
        for length, sign in self.cycles:
            out += [2 * length] if sign < 0 else [length, length]
        return sorted(out)

    def __str__(self):
        return "[" + "".join(f"{k}{'+' if s > 0 else '-'}" for k, s in self.cycles) + "]"

    def __repr__(self):
        return f"SignedCycleType({self})"


# --- groups -------------------------------------------------------------------------


def closure(gens, n: int) -> frozenset:
    ident = SignedPerm.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class FiniteSignedGroup:
    name: str
    n: int
    gens: tuple
    elements: tuple = field(repr=False)

    @classmethod
    def generated(cls, name: str, n: int, gens) -> FiniteSignedGroup:
        gens = tuple(gens)
        return cls(name, n, gens, tuple(sorted(closure(gens, n))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.element_set

    @property
    def element_set(self) -> frozenset:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set", s)
        return s

    def identity(self) -> SignedPerm:
        return SignedPerm.identity(self.n)

    def is_closed(self) -> bool:
        s = self.element_set
        return all((a * b) in s for a in self.elements for b in self.gens) and all(
            a.inverse() in s for a in self.elements
        )


def _transposition(n, i):
    perm = list(range(n))
    perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return SignedPerm(tuple(perm), (1,) * n)


def _flip(n, idx):
    return SignedPerm(tuple(range(n)), tuple(-1 if i in idx else 1 for i in range(n)))


def build_group(name: str, n: int = 3) -> FiniteSignedGroup:
    """``B`` (hyperoctahedral), ``D`` (even sign changes), ``S`` (plain
    permutations), ``MUMFORD_PI`` ((Z/2)^3 x| S_3 inside B_3),
    ``MUMFORD_PI_A3`` ((Z/2)^3 x| A_3) or ``TRIVIAL``."""
    key = name.upper()
    if key in ("MUMFORD_PI", "MUMFORD", "MUMFORD_PI_A3"):
        n = 3
    if n > MAX_ENUM_N:
        raise GroupError(f"n={n} too large for full enumeration (max {MAX_ENUM_N})", "TOO_LARGE")
    if n < 1:
        raise GroupError("n must be positive", "BAD_N")
    swaps = [_transposition(n, i) for i in range(n - 1)]
    if key in ("B", "BC", "C"):
        return FiniteSignedGroup.generated(f"B_{n}", n, swaps + [_flip(n, {0})])
    if key == "D":
        gens = list(swaps) + ([_flip(n, {0, 1})] if n >= 2 else [])
        return FiniteSignedGroup.generated(f"W(D_{n})", n, gens)
    if key == "S":
        return FiniteSignedGroup.generated(f"S_{n}", n, swaps)
    if key in ("MUMFORD_PI", "MUMFORD"):
        return FiniteSignedGroup.generated("MUMFORD_PI", 3, swaps + [_flip(3, {0})])
    if key == "MUMFORD_PI_A3":
        three = SignedPerm((1, 2, 0), (1, 1, 1))
        return FiniteSignedGroup.generated("MUMFORD_PI_A3", 3, [three, _flip(3, {0})])
    if key == "TRIVIAL":
        return FiniteSignedGroup.generated("1", n, [])
    raise GroupError(f"unknown group {name!r}", "UNKNOWN_GROUP")


def subgroup(G: FiniteSignedGroup, gens, name="H") -> FiniteSignedGroup:
    H = FiniteSignedGroup.generated(name, G.n, gens)
    if not H.element_set <= G.element_set:
        raise GroupError("generators leave the ambient group", "NOT_SUBGROUP")
    return H


# --- conjugacy --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    representative: SignedPerm
    size: int
    type: SignedCycleType
    elements: frozenset = field(repr=False)
    ambient: str = ""


def conjugacy_classes(G: FiniteSignedGroup, by=None) -> list[ConjClass]:
    """Orbits of G under conjugation by ``by`` (default: G itself).

    Conjugating by generators suffices to trace an orbit.
    """
    conj_gens = list((by or G).gens) or []
    conj_gens = conj_gens + [g.inverse() for g in conj_gens]
    remaining = set(G.elements)
    classes = []
    for x in G.elements:
        if x not in remaining:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in conj_gens:
                z = g * y * g.inverse()
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        remaining -= orbit
        rep = min(orbit)
        classes.append(ConjClass(rep, len(orbit), rep.cycle_type(), frozenset(orbit), G.name))
    classes.sort(key=lambda c: (c.type, c.representative))
    return classes


def is_subgroup(G: FiniteSignedGroup, H: FiniteSignedGroup) -> bool:
    hs = H.element_set
    if not hs <= G.element_set or G.identity() not in hs:
        return False
    return all((a * b) in hs for a in H.elements for b in H.elements)


def overgroup_classes_in_subgroup(G: FiniteSignedGroup, H: FiniteSignedGroup) -> list[ConjClass]:
    """Conjugacy classes of G lying entirely inside the subgroup H."""
    if not is_subgroup(G, H):
        raise GroupError(f"{H.name} is not a subgroup of {G.name}", "NOT_SUBGROUP")
    hs = H.element_set
    return [c for c in conjugacy_classes(G) if c.elements <= hs]


def element_order_profile(G: FiniteSignedGroup) -> Counter:
    return Counter(x.order() for x in G.elements)


def class_equation_holds(G: FiniteSignedGroup) -> bool:
    classes = conjugacy_classes(G)
    return sum(c.size for c in classes) == G.order and all(G.order % c.size == 0 for c in classes)


# --- transversal generation search -------------------------------------------------------


def _conj_orbits(C: frozenset, H_gens) -> list:
    """Representatives of the orbits of H (given by generators) on C."""
    gens = list(H_gens) + [g.inverse() for g in H_gens]
    remaining = set(C)
    reps = []
    while remaining:
        x = min(remaining)
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = g * y * g.inverse()
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        remaining -= orbit
        reps.append(x)
    return reps


def transversal_search(W: FiniteSignedGroup, classes) -> dict:
    """Check that every choice of one element per class generates all of W.

    Classes are visited in order; the candidates for the next class are taken
    up to conjugation by the subgroup generated so far, visited subgroups
    are memoised, and a branch stops as soon as it reaches W.
    """
    n = W.n
    target = W.order
    classes = [frozenset(c) for c in classes]
    counterexamples = []
    visited = set()
    stats = {"nodes": 0}

    def rec(idx, H: frozenset, gens: tuple):
        stats["nodes"] += 1
        if len(H) == target:
            return
        if idx == len(classes):
            counterexamples.append(H)
            return
        key = (idx, H)
        if key in visited:
            return
        visited.add(key)
        C = classes[idx]
        if C & H:
            # an element inside H leaves H unchanged; other choices only grow H
            rec(idx + 1, H, gens)
        for x in _conj_orbits(C - H, gens) if gens else sorted(C - H):
            new_gens = gens + (x,)
            rec(idx + 1, closure(new_gens, n), new_gens)

    rec(0, frozenset([W.identity()]), ())
    unique = {frozenset(h) for h in counterexamples}
    return {"counterexamples": [sorted(h) for h in unique], "nodes": stats["nodes"]}


def wdn_generation_check(n: int = 4) -> dict:
    """Every subgroup of W(D_n) meeting each B_n-class inside W(D_n) is all of W(D_n).

    Equivalent formulation searched here: every transversal of those
    classes generates W(D_n).
    """
    if n not in (4, 5):
        raise GroupError("the check is defined for n = 4 or 5", "BAD_N")
    t0 = time.perf_counter()
    B = build_group("B", n)
    W = build_group("D", n)
    classes = overgroup_classes_in_subgroup(B, W)
    nontrivial = [c for c in classes if c.representative != B.identity()]
    # large classes of high order first: they generate big subgroups early
    nontrivial.sort(key=lambda c: (-c.representative.order(), -c.size))
    result = transversal_search(W, [c.elements for c in nontrivial])
    return {
        "n": n,
        "order_B": B.order,
        "order_W": W.order,
        "classes_in_W": [str(c.type) for c in classes],
        "counterexamples": result["counterexamples"],
        "nodes": result["nodes"],
        "seconds": time.perf_counter() - t0,
        "ok": not result["counterexamples"] and W.order == 2 ** (n - 1) * _factorial(n),
    }


lemma42_check = wdn_generation_check


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def all_subgroups(G: FiniteSignedGroup) -> list[frozenset]:
    """Every subgroup of a small group (joins of cyclic subgroups)."""
    n = G.n
    cyclic = {closure((x,), n) for x in G.elements}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = closure(tuple(H | C), n) if len(H) + len(C) < 64 else closure(
                    tuple(_small_gens(H, n)) + tuple(_small_gens(C, n)), n
                )
                if J not in subs:
                    subs.add(J)
                    new.add(J)
        frontier = new
    return sorted(subs, key=len)


def _small_gens(H, n):
    gens = []
    cur = frozenset([SignedPerm.identity(n)])
    for x in sorted(H):
        if x not in cur:
            gens.append(x)
            cur = closure(tuple(gens), n)
            if len(cur) == len(H):
                break
    return gens


def subgroups_meeting_all_classes(G: FiniteSignedGroup, classes) -> list[frozenset]:
    """Brute force: subgroups H of G with H meeting every given class."""
    return [H for H in all_subgroups(G) if all(H & c.elements for c in classes)]


# --- action on the weights {+-1}^n ---------------------------------------------------------


def weight_points(n: int = 3):
    return list(itertools.product((1, -1), repeat=n))


def point_permutation(x: SignedPerm, points) -> list[int]:
    index = {pt: i for i, pt in enumerate(points)}
    return [index[x.apply(pt)] for pt in points]


def permutation_cycles(perm) -> list[int]:
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        k, i = 0, s
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            k += 1
        lengths.append(k)
    return sorted(lengths, reverse=True)


def weight_action_check(G: FiniteSignedGroup | None = None) -> dict:
    """Action of the group on the 2^n sign vectors: transitivity and the
    largest cycle.  With no full-length cycle, a polynomial of degree 2^n
    with this Galois group is reducible modulo every prime."""
    G = G or build_group("MUMFORD_PI")
    points = weight_points(G.n)
    orbit = {points[0]}
    queue = deque([points[0]])
    while queue:
        pt = queue.popleft()
        for g in G.gens:
            y = g.apply(pt)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    structures = Counter(tuple(permutation_cycles(point_permutation(x, points))) for x in G.elements)
    max_cycle = max(s[0] for s in structures)
    return {
        "group": G.name,
        "order": G.order,
        "points": len(points),
        "transitive": len(orbit) == len(points),
        "max_cycle": max_cycle,
        "full_cycle_present": max_cycle == len(points),
        "cycle_structures": {"+".join(map(str, k)): v for k, v in sorted(structures.items())},
    }


def order_profile_report(G: FiniteSignedGroup) -> dict:
    prof = element_order_profile(G)
    return {
        "group": G.name,
        "order": G.order,
        "element_orders": dict(sorted(prof.items())),
        "order_8_absent": 8 not in prof,
    }
