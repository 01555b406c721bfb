"""Prime-by-prime surveys of a hyperelliptic curve: Frobenius data, isogeny
shape, absolute simplicity, the S_A test and Galois groups, aggregated into
density tables per congruence class.

Records are written as JSON lines; the record file plus a cursor file is
the checkpoint, so an interrupted run resumes where it stopped.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from .algebra.polyz import PolyZ
from .algebra.primes import primes_up_to
from .curves import HyperellipticCurve, frobenius_poly
from .errors import SurveyError, WeilStatError
from .galois import full_group_label, galois_exact, identify_galois_sampled
from .weil import honda_tate_split, is_absolutely_simple, is_ordinary, mth_power_split, sa_membership

SCHEMA = "weilstat.survey/1"
CHECKPOINT_EVERY = 500
EXCEPTIONAL_CAP = 10_000


@dataclass
class SurveyConfig:
    curve: HyperellipticCurve
    x_max: int
    congruence_modulus: int | None = None
    expected_m: int = 1
    expected_rank: int | None = None
    expected_group: str | None = None
    galois_budget: int = 100  # usable ell for sampling; 0 turns sampling off
    galois_exact: bool = True
    relation_bound: int | None = None
    jobs: int = 1
    seed: int = 0
    records_path: str | None = None
    report_path: str | None = None
    record_timings: bool = False
    bound_d: int | None = None
    bound_r: int | None = None

    def __post_init__(self):
        if self.x_max < 3:
            raise SurveyError("x_max must be at least 3", "BAD_CONFIG")
        if self.expected_m < 1:
            raise SurveyError("expected_m must be positive", "BAD_CONFIG")
        g = self.curve.genus
        if self.expected_group is None:
            self.expected_group = full_group_label(g)
        from .galois import subgroup_classes

        if self.expected_group not in {s.label for s in subgroup_classes(g)}:
            raise SurveyError(f"unknown group label {self.expected_group!r} for genus {g}", "BAD_CONFIG")
        if self.congruence_modulus is not None and self.congruence_modulus < 1:
            raise SurveyError("congruence modulus must be positive", "BAD_CONFIG")

    @property
    def dims(self) -> tuple[int, int]:
        """Dimension and rank for the bound shapes (default: GSp_2g)."""
        g = self.curve.genus
        return self.bound_d or 2 * g * g + g + 1, self.bound_r or g + 1

    def to_dict(self):
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["curve"] = self.curve.to_dict()
        return d

    @classmethod
    def from_dict(cls, d) -> SurveyConfig:
        d = dict(d)
        curve = d.pop("curve")
        curve = curve if isinstance(curve, HyperellipticCurve) else HyperellipticCurve.from_dict(curve)
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SurveyError(f"unknown config keys {sorted(unknown)}", "BAD_CONFIG")
        return cls(curve=curve, **d)

    @classmethod
    def from_file(cls, path) -> SurveyConfig:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class SurveyRecord:
    p: int
    good: bool
    n1: int | None = None
    a1: int | None = None
    a2: int | None = None
    weil: list | None = None
    ordinary: bool | None = None
    sa: dict | None = None
    shape: str | None = None
    factors: list | None = None
    certified: bool | None = None
    m_found: int | None = None
    abs_simple: bool | None = None
    abs_certificate: str | None = None
    galois: dict | None = None
    galois_sampled: dict | None = None
    error: str | None = None
    timings: dict | None = None

    @property
    def irreducible(self) -> bool:
        return self.shape == "irreducible"

    def to_json(self) -> str:
        return json.dumps({"schema": SCHEMA, **asdict(self)}, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> SurveyRecord:
        d = json.loads(line)
        schema = d.pop("schema", SCHEMA)
        if schema != SCHEMA:
            raise SurveyError(f"unsupported record schema {schema}", "BAD_SCHEMA")
        return cls(**d)


# --- per-prime pipeline ---------------------------------------------------------------


def survey_prime(curve: HyperellipticCurve, p: int, cfg: SurveyConfig) -> SurveyRecord:
    """Run the whole pipeline at one prime; errors are captured, not raised."""
    if not curve.has_good_reduction(p):
        return SurveyRecord(p, False)
    rec = SurveyRecord(p, True)
    clock = {}
    t0 = time.perf_counter()
    try:
        P = frobenius_poly(curve, p, seed=cfg.seed ^ p)
        c = P.coeffs
        rec.weil = list(c)
        rec.a1 = c[-2]
        rec.n1 = p + 1 + c[-2]
        rec.a2 = c[-3] if curve.genus == 2 else None
        rec.ordinary = is_ordinary(P)
        clock["frobenius"] = time.perf_counter() - t0

        sa = sa_membership(P, cfg.expected_rank, cfg.relation_bound)
        rec.sa = sa.to_dict()
        dec = honda_tate_split(P)
        rec.shape = dec.shape()
        rec.factors = [[f.to_text(), m] for f, m in dec.factors]
        rec.certified = dec.certified
        _, rec.m_found = mth_power_split(P)
        simple = is_absolutely_simple(P)
        rec.abs_simple = simple.simple
        rec.abs_certificate = simple.certificate
        clock["splitting"] = time.perf_counter() - t0 - clock["frobenius"]

        if rec.irreducible:
            t1 = time.perf_counter()
            if cfg.galois_exact and curve.genus in (1, 2):
                rec.galois = galois_exact(P).to_dict()
            if cfg.galois_budget:
                rec.galois_sampled = identify_galois_sampled(P, cfg.galois_budget).to_dict()
            clock["galois"] = time.perf_counter() - t1
    except WeilStatError as exc:
        rec.error = f"{exc.code}: {exc}"
    if cfg.record_timings:
        rec.timings = {k: round(v, 6) for k, v in clock.items()}
    return rec


def _worker(args):
    curve_dict, cfg_dict, ps = args
    cfg = SurveyConfig.from_dict(cfg_dict)
    curve = HyperellipticCurve.from_dict(curve_dict)
    return [survey_prime(curve, p, cfg) for p in ps]


def survey_primes(cfg: SurveyConfig) -> list[int]:
    """Odd primes up to x_max (bad ones included; they produce records with good=False)."""
    return [p for p in primes_up_to(cfg.x_max) if p > 2]


def _run_block(cfg: SurveyConfig, ps: list[int], pool) -> list[SurveyRecord]:
    if pool is None:
        return [survey_prime(cfg.curve, p, cfg) for p in ps]
    chunks = [ps[i :: cfg.jobs] for i in range(cfg.jobs)]
    args = [(cfg.curve.to_dict(), cfg.to_dict(), chunk) for chunk in chunks if chunk]
    out = [r for part in pool.map(_worker, args) for r in part]
    return sorted(out, key=lambda r: r.p)


def _cursor_path(records_path) -> Path:
    return Path(str(records_path) + ".cursor")


def load_records(path) -> list[SurveyRecord]:
    with open(path, encoding="utf-8") as fh:
        return [SurveyRecord.from_json(line) for line in fh if line.strip()]


def run_survey(cfg: SurveyConfig, resume: bool = False, progress=None):
    """Survey every odd prime up to x_max; returns (records, report).

    With ``records_path`` set, records are appended in blocks of
    CHECKPOINT_EVERY primes and a cursor file marks the last finished
    block.  ``resume=True`` continues from that cursor.
    """
    primes = survey_primes(cfg)
    records: list[SurveyRecord] = []
    path = Path(cfg.records_path) if cfg.records_path else None
    if path and resume and _cursor_path(path).exists():
        cursor = json.loads(_cursor_path(path).read_text())
        records = load_records(path)[: cursor["count"]]
        primes = [p for p in primes if p > cursor["last_p"]]
        # drop any partial block written after the cursor
        _write_records(path, records, mode="w")
    elif path:
        _write_records(path, [], mode="w")
        _cursor_path(path).unlink(missing_ok=True)

    pool = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 else None
    try:
        for start in range(0, len(primes), CHECKPOINT_EVERY):
            block = _run_block(cfg, primes[start : start + CHECKPOINT_EVERY], pool)
            records.extend(block)
            if path:
                _write_records(path, block, mode="a")
                _cursor_path(path).write_text(json.dumps({"last_p": block[-1].p, "count": len(records)}))
            if progress:
                progress(len(records))
    finally:
        if pool is not None:
            pool.shutdown()
    report = density_report(records, cfg)
    if cfg.report_path:
        Path(cfg.report_path).write_text(report.to_json())
    return records, report


def _write_records(path: Path, records, mode: str):
    with open(path, mode, encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


# --- densities -----------------------------------------------------------------------------


def chebotarev_density(class_sizes, fractions) -> Fraction:
    """sum_C |C|/|G| * prod_ell f[C][ell] with exact rationals.

    ``fractions[i]`` is the sequence of per-ell factors for class i (an
    empty sequence contributes the empty product 1).
    """
    sizes = list(class_sizes)
    if not sizes:
        raise SurveyError("no classes given", "EMPTY_INPUT")
    if len(fractions) != len(sizes):
        raise SurveyError("one fraction list per class expected", "EMPTY_INPUT")
    if any(s <= 0 for s in sizes):
        raise SurveyError("class sizes must be positive", "BAD_INPUT")
    total = sum(sizes)
    out = Fraction(0)
    for size, fs in zip(sizes, fractions):
        prod = Fraction(1)
        for f in fs:
            f = Fraction(f)
            if not 0 <= f <= 1:
                raise SurveyError("fractions must lie in [0, 1]", "BAD_INPUT")
            prod *= f
        out += Fraction(size, total) * prod
    return out


SERRE = "SERRE"
SIEVE = "SIEVE"


def exceptional_bounds(x: float, d: int, r: int = 1, grh: bool = False, variant: str = SERRE) -> float:
    """Shape (no implied constant) of the bound on exceptional primes up to x."""
    if x < 16:
        raise SurveyError("x must be at least 16 for the iterated logarithms", "DOMAIN")
    if d < 1 or r < 1:
        raise SurveyError("d and r must be positive", "DOMAIN")
    L = math.log(x)
    LL = math.log(L)
    variant = variant.upper()
    if variant == SERRE:
        if grh:
            return x ** (1 - 1 / (2 * d)) * L ** (-1 + 2 / d)
        return x / L ** (1 + 1 / d) * (LL**2 * math.log(LL)) ** (1 / d)
    if variant == SIEVE:
        if grh:
            return x ** (1 - 1 / (4 * d + 2 * r + 2)) * L ** (2 / (2 * d + r + 1))
        return x * LL ** (1 + 1 / (3 * d)) / L ** (1 + 1 / (6 * d))
    raise SurveyError(f"unknown variant {variant!r}", "DOMAIN")


REPORT_COLUMNS = (
    "class", "n_good", "frac_simple", "frac_m_power", "frac_abs_simple",
    "frac_full_galois", "frac_sa", "n_exceptional",
)


@dataclass
class ClassRow:
    cls: str
    n_good: int
    simple: Fraction
    m_power: Fraction
    abs_simple: Fraction
    full_galois: Fraction
    sa: Fraction
    n_exceptional: int
    n_galois: int
    full_galois_identified: Fraction | None
    n_errors: int

    def csv_row(self):
        return [self.cls, self.n_good] + [
            f"{float(v):.6f}" for v in (self.simple, self.m_power, self.abs_simple, self.full_galois, self.sa)
        ] + [self.n_exceptional]

    def to_dict(self):
        d = {"class": self.cls}
        for k, v in asdict(self).items():
            if k == "cls":
                continue
            d[k] = str(v) if isinstance(v, Fraction) else v
        return d


@dataclass
class DensityReport:
    curve: str
    x_max: int
    modulus: int | None
    expected_m: int
    expected_group: str
    rows: list
    exceptional_primes: list
    bound_curve: list = field(default_factory=list)  # [(x, count, {shape: c*shape}), ...]

    def row(self, cls: str) -> ClassRow:
        return next(r for r in self.rows if r.cls == cls)

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "curve": self.curve,
            "x_max": self.x_max,
            "modulus": self.modulus,
            "expected_m": self.expected_m,
            "expected_group": self.expected_group,
            "rows": [r.to_dict() for r in self.rows],
            "exceptional_primes": self.exceptional_primes,
            "bound_curve": self.bound_curve,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_row())
        return buf.getvalue()

    def bounds_csv(self) -> str:
        """Whitespace-separated columns for plotting counts against bound shapes."""
        if not self.bound_curve:
            return ""
        names = sorted(self.bound_curve[0][2])
        lines = ["# x exceptional " + " ".join(names)]
        for x, count, shapes in self.bound_curve:
            lines.append(f"{x} {count} " + " ".join(f"{shapes[n]:.6g}" for n in names))
        return "\n".join(lines) + "\n"


def is_exceptional(rec: SurveyRecord, expected_m: int) -> bool:
    """An S_A prime whose Weil polynomial is not Q^m with Q irreducible, m = expected_m."""
    if not rec.good or rec.sa is None or not rec.sa.get("in_sa"):
        return False
    single = rec.factors is not None and len(rec.factors) == 1
    return not (single and rec.m_found == expected_m)


def _row(cls: str, recs, cfg: SurveyConfig) -> ClassRow:
    good = [r for r in recs if r.good and r.error is None]
    n = len(good)

    def frac(pred):
        return Fraction(sum(1 for r in good if pred(r)), n) if n else Fraction(0)

    full = cfg.expected_group
    identified = [r for r in good if r.galois is not None]
    return ClassRow(
        cls=cls,
        n_good=n,
        simple=frac(lambda r: r.irreducible),
        m_power=frac(lambda r: r.factors is not None and len(r.factors) == 1 and r.m_found == cfg.expected_m),
        abs_simple=frac(lambda r: r.abs_simple),
        full_galois=frac(lambda r: (r.galois or {}).get("group") == full),
        sa=frac(lambda r: r.sa is not None and r.sa["in_sa"]),
        n_exceptional=sum(1 for r in good if is_exceptional(r, cfg.expected_m)),
        n_galois=len(identified),
        full_galois_identified=(
            Fraction(sum(1 for r in identified if r.galois["group"] == full), len(identified)) if identified else None
        ),
        n_errors=sum(1 for r in recs if r.good and r.error is not None),
    )


def density_report(records, cfg: SurveyConfig, points: int = 20) -> DensityReport:
    records = sorted(records, key=lambda r: r.p)
    if not records:
        raise SurveyError("no records to aggregate", "EMPTY")
    rows = [_row("all", records, cfg)]
    m = cfg.congruence_modulus
    if m:
        for a in range(m):
            sub = [r for r in records if r.p % m == a]
            if any(r.good for r in sub):
                rows.append(_row(f"{a} mod {m}", sub, cfg))
    exceptional = [r.p for r in records if is_exceptional(r, cfg.expected_m)]
    return DensityReport(
        curve=cfg.curve.label,
        x_max=cfg.x_max,
        modulus=m,
        expected_m=cfg.expected_m,
        expected_group=cfg.expected_group,
        rows=rows,
        exceptional_primes=exceptional[:EXCEPTIONAL_CAP],
        bound_curve=_bound_curve(exceptional, cfg, points),
    )


def _bound_curve(exceptional, cfg: SurveyConfig, points: int):
    """Exceptional counts at log-spaced x with least-squares scaled bound shapes."""
    if cfg.x_max < 16:
        return []
    d, r = cfg.dims
    lo, hi = math.log(16), math.log(cfg.x_max)
    xs = sorted({int(round(math.exp(lo + (hi - lo) * i / max(points - 1, 1)))) for i in range(points)})
    counts = [sum(1 for p in exceptional if p <= x) for x in xs]
    shapes = {}
    for variant in (SERRE, SIEVE):
        for grh in (False, True):
            name = f"{variant.lower()}{'_grh' if grh else ''}"
            vals = [exceptional_bounds(x, d, r, grh, variant) for x in xs]
            denom = sum(v * v for v in vals)
            c = sum(v * k for v, k in zip(vals, counts)) / denom if denom else 0.0
            shapes[name] = [c * v for v in vals]
    return [(x, k, {name: vals[i] for name, vals in shapes.items()}) for i, (x, k) in enumerate(zip(xs, counts))]


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1))
