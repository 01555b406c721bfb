"""Finite reductive groups over F_ell: sampling, the torus-class map theta,
equidistribution of theta classes and order / class-count bounds.

Sampling and classification are batched over numpy arrays of shape
``(N, n, n)`` with entries in ``[0, ell)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import polyf as F
from .algebra.primes import is_prime, square_table
from .errors import GroupError
from .weyl import ConjClass, SignedCycleType, build_group, conjugacy_classes

FAMILIES = ("GL", "SL", "SP", "GSP")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    ell: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise GroupError(f"unknown family {self.family!r}", "UNKNOWN_FAMILY")
        if fam in ("SP", "GSP") and self.n != 4:
            raise GroupError("symplectic families are implemented for n = 4", "UNKNOWN_FAMILY")
        if self.ell < 3 or not is_prime(self.ell):
            raise GroupError("ell must be an odd prime", "BAD_ELL")

    @property
    def d(self) -> int:
        return {"GL": self.n**2, "SL": self.n**2 - 1, "SP": 10, "GSP": 11}[self.family]

    @property
    def r(self) -> int:
        return {"GL": self.n, "SL": self.n - 1, "SP": 2, "GSP": 3}[self.family]

    @property
    def symplectic(self) -> bool:
        return self.family in ("SP", "GSP")

    @cached_property
    def weyl(self):
        return build_group("B", 2) if self.symplectic else build_group("S", self.n)

    @cached_property
    def weyl_classes(self) -> dict:
        return {c.type: c for c in conjugacy_classes(self.weyl)}

    def __str__(self):
        return f"{self.family}_{self.n}(F_{self.ell})"


def parse_spec(family: str, ell: int, n: int | None = None) -> GroupSpec:
    fam = family.upper().replace("_", "")
    digits = "".join(ch for ch in fam if ch.isdigit())
    fam = "".join(ch for ch in fam if ch.isalpha())
    n = n or (int(digits) if digits else (4 if fam in ("SP", "GSP") else 2))
    return GroupSpec(fam, n, ell)


def symplectic_form(n: int = 4) -> np.ndarray:
    h = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    J[:h, h:] = np.eye(h, dtype=np.int64)
    J[h:, :h] = -np.eye(h, dtype=np.int64)
    return J


# --- matrix helpers -----------------------------------------------------------------


def det_mod(M, ell: int) -> int:
    A = [[int(x) % ell for x in row] for row in np.asarray(M)]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % ell
        inv = pow(A[c][c], -1, ell)
        for r in range(c + 1, n):
            f = A[r][c] * inv % ell
            if f:
                A[r] = [(x - f * y) % ell for x, y in zip(A[r], A[c])]
    return det % ell


def charpoly_batch(M: np.ndarray, ell: int) -> np.ndarray:
    """Characteristic polynomials (ascending, monic) of a batch, by Faddeev-LeVerrier.

    Falls back to Hessenberg reduction when ell <= n.
    """
    N, n, _ = M.shape
    if ell <= n:
        return np.array([_charpoly_hessenberg(m, ell) for m in M], dtype=np.int64).reshape(N, n + 1)
    coeffs = np.zeros((N, n + 1), dtype=np.int64)
    coeffs[:, n] = 1
    eye = np.eye(n, dtype=np.int64)
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = (M @ Mk + coeffs[:, n - k + 1, None, None] * eye) % ell
        tr = np.trace(M @ Mk, axis1=1, axis2=2) % ell
        coeffs[:, n - k] = (-tr * pow(k, -1, ell)) % ell
    return coeffs


def _charpoly_hessenberg(M, ell: int) -> list[int]:
    """Characteristic polynomial of one matrix over F_ell, any ell."""
    H = [[int(x) % ell for x in row] for row in np.asarray(M)]
    n = len(H)
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if H[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for row in H:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = pow(H[c + 1][c], -1, ell)
        for r in range(c + 2, n):
            f = H[r][c] * inv % ell
            if f:
                H[r] = [(x - f * y) % ell for x, y in zip(H[r], H[c + 1])]
                for row in H:
                    row[c + 1] = (row[c + 1] + f * row[r]) % ell
    # p_k = charpoly of the leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        pk = F.psub([0] + polys[k - 1], F.pscale(polys[k - 1], H[k - 1][k - 1], ell), ell)
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % ell
            pk = F.psub(pk, F.pscale(polys[i - 1], prod * H[i - 1][k - 1], ell), ell)
        polys.append(pk)
    out = polys[n] + [0] * (n + 1 - len(polys[n]))
    return out


def similitude_batch(M: np.ndarray, ell: int) -> np.ndarray:
    """mu with M^T J M = mu J; -1 where M is not a similitude."""
    J = symplectic_form(M.shape[1])
    G = np.swapaxes(M, 1, 2) @ J @ M % ell
    mu = G[:, 0, 2]
    ok = np.all(G == (mu[:, None, None] * J) % ell, axis=(1, 2)) & (mu != 0)
    return np.where(ok, mu, -1)


# --- sampling -----------------------------------------------------------------------------


def symplectic_generators(ell: int, similitude: bool = False) -> list[np.ndarray]:
    """Unipotent generators [[I,S],[0,I]] and [[I,0],[S,I]] of Sp_4(F_ell),
    plus diag(1,1,lam,lam) for GSp_4 with lam a primitive root."""
    I2 = np.eye(2, dtype=np.int64)
    Z2 = np.zeros((2, 2), dtype=np.int64)
    sym = [np.array(s, dtype=np.int64) for s in ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]])]
    gens = [np.block([[I2, S], [Z2, I2]]) for S in sym] + [np.block([[I2, Z2], [S, I2]]) for S in sym]
    if similitude:
        lam = _primitive_root(ell)
        gens.append(np.diag([1, 1, lam, lam]).astype(np.int64))
    stack = np.array(gens) % ell
    mu = similitude_batch(stack, ell)
    if np.any(mu < 0) or (not similitude and np.any(mu != 1)):
        raise GroupError("generator violates the symplectic relation", "BAD_GENERATOR")
    return list(stack)


def _primitive_root(p: int) -> int:
    from .curves import _factorize_int

    primes = [f for f, _ in _factorize_int(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in primes):
            return g
    return 1


@dataclass
class ProductReplacement:
    """Batched product-replacement walks (with an accumulator) on a
    generated matrix group; one independent walk per chain."""

    gens: list
    ell: int
    chains: int
    rng: np.random.Generator
    slots: int = 10
    burn_in: int = 50
    state: np.ndarray = field(init=False)
    acc: np.ndarray = field(init=False)

    def __post_init__(self):
        k = max(self.slots, len(self.gens) + 2)
        n = self.gens[0].shape[0]
        base = np.array([self.gens[i % len(self.gens)] for i in range(k)])
        self.state = np.broadcast_to(base, (self.chains, k, n, n)).copy()
        self.acc = np.broadcast_to(np.eye(n, dtype=np.int64), (self.chains, n, n)).copy()
        for _ in range(self.burn_in):
            self.step()

    def step(self) -> np.ndarray:
        c, k = self.state.shape[:2]
        rows = np.arange(c)
        i = self.rng.integers(0, k, c)
        j = (i + self.rng.integers(1, k, c)) % k
        left = self.rng.integers(0, 2, c).astype(bool)
        si, sj = self.state[rows, i], self.state[rows, j]
        new = np.where(left[:, None, None], sj @ si, si @ sj) % self.ell
        self.state[rows, i] = new
        self.acc = self.acc @ new % self.ell
        return self.acc

    def sample(self, count: int) -> np.ndarray:
        out = []
        got = 0
        while got < count:
            batch = self.step().copy()
            out.append(batch)
            got += len(batch)
        return np.concatenate(out)[:count]


def _gl_batch(spec: GroupSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    n, ell = spec.n, spec.ell
    out = []
    got = 0
    while got < count:
        M = rng.integers(0, ell, (max(count - got, 16), n, n), dtype=np.int64)
        if n == 2:
            dets = (M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]) % ell
        else:
            dets = np.array([det_mod(m, ell) for m in M])
        M, dets = M[dets != 0], dets[dets != 0]
        if spec.family == "SL":
            # scaling the first row by det^-1 maps GL uniformly onto SL
            inv = np.array([pow(int(d), -1, ell) for d in dets], dtype=np.int64)
            M[:, 0, :] = M[:, 0, :] * inv[:, None] % ell
        out.append(M)
        got += len(M)
    return np.concatenate(out)[:count]


def sample_batch(spec: GroupSpec, count: int, rng: np.random.Generator, chains: int | None = None) -> np.ndarray:
    """``count`` group elements; symplectic families are verified exactly."""
    if not spec.symplectic:
        return _gl_batch(spec, count, rng)
    chains = chains or max(1, min(count, 2048))
    walk = ProductReplacement(symplectic_generators(spec.ell, spec.family == "GSP"), spec.ell, chains, rng)
    M = walk.sample(count)
    mu = similitude_batch(M, spec.ell)
    if np.any(mu < 0) or (spec.family == "SP" and np.any(mu != 1)):
        raise GroupError("sampled element left the group", "WALK_DRIFT")
    return M


def random_group_element(spec: GroupSpec, rng: np.random.Generator) -> np.ndarray:
    return sample_batch(spec, 1, rng, chains=1)[0]


# --- theta classes --------------------------------------------------------------------------


def _type(cycles) -> SignedCycleType:
    return SignedCycleType(tuple(sorted(cycles, key=lambda c: (c[0], -c[1]))))


def _sqrt_table(ell: int) -> np.ndarray:
    table = np.full(ell, -1, dtype=np.int64)
    x = np.arange(ell, dtype=np.int64)
    table[x * x % ell] = x
    return table


def _symplectic_codes(M: np.ndarray, ell: int) -> np.ndarray:
    """Codes 0..4 for [1+1+], [1+1-], [1-1-], [2+], [2-]; -1 when not regular.

    With P = x^2 h(x + mu/x), h(y) = y^2 + a y + (b - 2 mu), each root y of h
    gives x^2 - y x + mu.  Split h: per-root residuosity of y^2 - 4 mu.
    Irreducible h: residuosity of the norm of y^2 - 4 mu.
    """
    chi = square_table(ell).astype(np.int64)
    roots = _sqrt_table(ell)
    cp = charpoly_batch(M, ell)
    mu = similitude_batch(M, ell)
    a, b = cp[:, 3], cp[:, 2]
    c0 = (b - 2 * mu) % ell
    s = (-a) % ell
    disc_h = (a * a - 4 * c0) % ell
    norm = (c0 * c0 - 4 * mu * ((s * s - 2 * c0) % ell) + 16 * mu * mu) % ell
    codes = np.full(len(M), -1, dtype=np.int64)
    regular = (disc_h != 0) & (norm != 0) & (mu > 0)
    split = regular & (chi[disc_h] == 1)
    inert = regular & (chi[disc_h] == -1)
    codes[inert] = np.where(chi[norm[inert]] == 1, 3, 4)
    inv2 = pow(2, -1, ell)
    r = roots[disc_h[split]]
    y1 = (-a[split] + r) * inv2 % ell
    y2 = (-a[split] - r) * inv2 % ell
    m = mu[split]
    neg = (chi[(y1 * y1 - 4 * m) % ell] == -1).astype(np.int64) + (chi[(y2 * y2 - 4 * m) % ell] == -1)
    codes[split] = neg
    return codes


SYMPLECTIC_TYPES = tuple(SignedCycleType.parse(t) for t in ("[1+1+]", "[1+1-]", "[1-1-]", "[2+]", "[2-]"))


def _gl2_codes(M: np.ndarray, ell: int) -> np.ndarray:
    """0 for split, 1 for non-split, -1 when the discriminant vanishes."""
    chi = square_table(ell).astype(np.int64)
    tr = (M[:, 0, 0] + M[:, 1, 1]) % ell
    det = (M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]) % ell
    disc = (tr * tr - 4 * det) % ell
    return np.where(disc == 0, -1, np.where(chi[disc] == 1, 0, 1))


def theta_types(spec: GroupSpec, M: np.ndarray) -> list:
    """Weyl class type per matrix, ``None`` where not regular semisimple."""
    M = np.asarray(M, dtype=np.int64) % spec.ell
    if spec.symplectic:
        return [None if c < 0 else SYMPLECTIC_TYPES[c] for c in _symplectic_codes(M, spec.ell)]
    if spec.n == 2:
        types = (_type([(1, 1), (1, 1)]), _type([(2, 1)]))
        return [None if c < 0 else types[c] for c in _gl2_codes(M, spec.ell)]
    out = []
    for cp in charpoly_batch(M, spec.ell):
        f = F.trim([int(c) for c in cp])
        if len(F.pgcd(f, F.pderiv(f, spec.ell), spec.ell)) > 1:
            out.append(None)
            continue
        _, facs = F.factor_list(f, spec.ell)
        out.append(_type([(len(h) - 1, 1) for h, _ in facs]))
    return out


def theta_class(spec: GroupSpec, g) -> ConjClass:
    """Weyl class of the maximal torus containing a regular semisimple g."""
    t = theta_types(spec, np.asarray(g, dtype=np.int64)[None])[0]
    if t is None:
        raise GroupError("element is not regular semisimple", "NOT_REGULAR_SEMISIMPLE")
    return spec.weyl_classes[t]


# --- experiments -------------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassFrequency:
    type: str
    size: int
    target: float
    count: int
    frequency: float
    deviation: float


@dataclass(frozen=True)
class EquidistReport:
    spec: str
    samples: int
    regular: int
    filtered_fraction: float
    rows: tuple

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows), default=0.0)

    def to_dict(self):
        return {
            "spec": self.spec,
            "samples": self.samples,
            "regular": self.regular,
            "filtered_fraction": self.filtered_fraction,
            "max_deviation": self.max_deviation,
            "rows": [r.__dict__ for r in self.rows],
        }


def equidist_experiment(spec: GroupSpec, N: int, rng: np.random.Generator | int = 0,
                        sampler=None, chunk: int = 50_000) -> EquidistReport:
    """Theta-class frequencies of N sampled elements against |C|/|W|.

    ``sampler(count, rng)`` overrides the group sampler (used to inject
    synthetic inputs).
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    counts = Counter()
    done = 0
    while done < N:
        k = min(chunk, N - done)
        M = sampler(k, rng) if sampler else sample_batch(spec, k, rng)
        counts.update(t for t in theta_types(spec, M) if t is not None)
        done += k
    regular = sum(counts.values())
    W = spec.weyl.order
    rows = []
    for t, cls in sorted(spec.weyl_classes.items()):
        if regular == 0:
            continue
        freq = counts[t] / regular
        target = cls.size / W
        rows.append(ClassFrequency(str(t), cls.size, target, counts[t], freq, abs(freq - target)))
    return EquidistReport(str(spec), N, regular, 1 - regular / N if N else 0.0, tuple(rows))


# --- orders and class counts --------------------------------------------------------------------


def group_order(spec: GroupSpec) -> int:
    ell, n = spec.ell, spec.n
    if spec.family in ("GL", "SL"):
        order = 1
        for i in range(n):
            order *= ell**n - ell**i
        return order if spec.family == "GL" else order // (ell - 1)
    half = n // 2
    sp = ell ** (half * half)
    for i in range(1, half + 1):
        sp *= ell ** (2 * i) - 1
    return sp if spec.family == "SP" else (ell - 1) * sp


KAPPA = {"GL": 1, "SL": 5, "SP": 35, "GSP": 35}


def group_order_and_bounds(spec: GroupSpec, samples: int = 20_000, seed: int = 0) -> dict:
    """Exact order against ell^d, and a class count against kappa * ell^r.

    Class counts are exact for GL_2 (ell^2 - 1) and SL_2 (ell + 4); for the
    symplectic families the number of distinct characteristic polynomials
    in a sample stands in for the class count.
    """
    order = group_order(spec)
    ell = spec.ell
    kappa = KAPPA[spec.family]
    if spec.family == "GL" and spec.n == 2:
        classes, exact = ell * ell - 1, True
    elif spec.family == "SL" and spec.n == 2:
        classes, exact = ell + 4, True
    elif spec.symplectic:
        M = sample_batch(spec, samples, np.random.default_rng(seed))
        classes, exact = len({tuple(r) for r in charpoly_batch(M, ell)}), False
    else:
        classes, exact = None, False
    return {
        "spec": str(spec),
        "d": spec.d,
        "r": spec.r,
        "order": order,
        "ell^d": ell**spec.d,
        "order_bound_ok": order <= ell**spec.d,
        "weyl_order": spec.weyl.order,
        "class_count": classes,
        "class_count_exact": exact,
        "kappa": kappa,
        "class_bound_ok": None if classes is None else classes <= kappa * ell**spec.r,
    }
