"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (bad curve, bad polynomial,
unusable input), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import WeilStatError
from .polytext import parse_poly

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --- output ---------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "numerator") and not isinstance(obj, (int, bool)):
        return str(obj)
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def render(obj, fmt: str, table: list | None = None) -> str:
    """JSON for the whole result; CSV and text for the table (or flat fields)."""
    obj = _jsonable(obj)
    if fmt == "json":
        return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    rows = _jsonable(table) if table is not None else [
        {k: v for k, v in obj.items() if not isinstance(v, (dict, list))}
    ]
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            cols = list(rows[0])
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in rows:
                w.writerow([r.get(c, "") for c in cols])
        return buf.getvalue()
    lines = []
    for k, v in obj.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, ensure_ascii=False)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


# --- subcommands -------------------------------------------------------------------------


def _load_curve(path):
    from .curves import HyperellipticCurve

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read curve file {path}: {exc}") from exc
    return HyperellipticCurve.from_json(text)


def cmd_count(args):
    from .curves import point_counts

    curve = _load_curve(args.curve)
    curve.check_good(args.p)
    pc = point_counts(curve, args.p, with_fp2=curve.genus == 2 and args.p <= 499)
    return {"curve": curve.label, "p": pc.p, "n1": pc.n1, "n2": pc.n2, "a1": pc.a1, "a2": pc.a2}, None


def cmd_weil(args):
    from .curves import frobenius_poly
    from .weil import is_ordinary, sa_membership

    curve = _load_curve(args.curve)
    P = frobenius_poly(curve, args.p, method=args.method, seed=args.seed)
    return {
        "curve": curve.label,
        "p": args.p,
        "poly": P.to_text(),
        "coeffs": list(P.coeffs),
        "ordinary": is_ordinary(P),
        "sa": sa_membership(P).to_dict(),
    }, None


def _weil_from_args(args):
    from .weil import validate_weil
    from .algebra.polyz import PolyZ

    return validate_weil(PolyZ(parse_poly(args.poly)), args.q)


def cmd_split(args):
    from .weil import honda_tate_split, is_absolutely_simple, mth_power_split

    P = _weil_from_args(args)
    dec = honda_tate_split(P)
    factors = [[f.to_text(), m] for f, m in dec.factors]
    out = {"factors": factors, "certified": dec.certified}
    if dec.notes:
        out["notes"] = dec.notes
    out["m"] = mth_power_split(P)[1]
    simple = is_absolutely_simple(P)
    out["absolutely_simple"] = simple.simple
    out["simplicity_certificate"] = simple.certificate
    return out, [{"factor": f, "multiplicity": m} for f, m in factors]


def cmd_galois(args):
    from .galois import galois_exact, identify_galois_sampled
    from .algebra.factor_z import factor_over_z

    P = _weil_from_args(args)
    exact = args.exact
    if not exact and not args.sample:
        exact = P.g == 1 or (P.g == 2 and factor_over_z(P.poly).is_irreducible())
    gid = galois_exact(P) if exact else identify_galois_sampled(P, args.budget)
    return gid.to_dict(), None


def cmd_survey(args):
    from .survey import SurveyConfig, run_survey

    try:
        cfg_dict = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    if args.jobs:
        cfg_dict["jobs"] = args.jobs
    if args.seed_given:
        cfg_dict["seed"] = args.seed
    cfg = SurveyConfig.from_dict(cfg_dict)
    _, report = run_survey(cfg, resume=args.resume)
    if args.bounds_csv:
        Path(args.bounds_csv).write_text(report.bounds_csv())
    table = [dict(zip(("class", "n_good", "frac_simple", "frac_m_power", "frac_abs_simple",
                       "frac_full_galois", "frac_sa", "n_exceptional"), r.csv_row())) for r in report.rows]
    return report.to_dict(), table


def cmd_equidist(args):
    from .equidist import equidist_experiment, parse_spec

    spec = parse_spec(args.family, args.ell)
    rep = equidist_experiment(spec, args.samples, args.seed)
    return rep.to_dict(), [r.__dict__ for r in rep.rows]


def cmd_group(args):
    from . import weyl

    if args.check == "d4":
        rep = weyl.wdn_generation_check(args.n or 4)
        rep["counterexamples"] = [[x.images() for x in H] for H in rep["counterexamples"]]
        rep.pop("seconds")
        return rep, None
    if args.check == "mumford":
        G = weyl.build_group("MUMFORD_PI")
        prof = weyl.order_profile_report(G)
        act = weyl.weight_action_check(G)
        out = {
            "group": G.name,
            "order": G.order,
            "element_orders": sorted(prof["element_orders"]),
            "order_counts": prof["element_orders"],
            "order 8 absent": prof["order_8_absent"],
            "weight_action": act,
        }
        return out, None
    G = weyl.build_group(args.family, args.n or 2)
    classes = weyl.conjugacy_classes(G)
    table = [
        {"type": str(c.type), "size": c.size, "order": c.representative.order(),
         "representative": list(c.representative.images())}
        for c in classes
    ]
    return {"group": G.name, "order": G.order, "classes": table}, table


def cmd_bounds(args):
    from .survey import SERRE, SIEVE, exceptional_bounds

    variants = [args.variant.upper()] if args.variant else [SERRE, SIEVE]
    out = {"x": args.x, "d": args.d, "r": args.r, "grh": args.grh}
    for v in variants:
        out[v.lower()] = exceptional_bounds(args.x, args.d, args.r, args.grh, v)
    return out, None


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")

    parser = _Parser(prog="weilstat", description="Frobenius statistics for abelian surfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="point counts over F_p and F_p^2")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("weil", parents=[common], help="Frobenius polynomial at p")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=("auto", "enum", "bsgs", "both"), default="auto")
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("split", parents=[common], help="isogeny decomposition of a Weil polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("galois", parents=[common], help="Galois group inside B_g")
    p.add_argument("--poly", required=True)
    p.add_argument("--q", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--sample", action="store_true")
    p.add_argument("--budget", type=int, default=100)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("survey", parents=[common], help="run a prime survey from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--bounds-csv", default=None, help="write count-vs-bound columns here")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("equidist", parents=[common], help="theta-class equidistribution")
    p.add_argument("--family", default="sp4")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("group", parents=[common], help="signed permutation group checks")
    p.add_argument("--check", choices=("d4", "mumford", "classes"), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--family", default="B", help="group for --check classes: B, D or S")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("bounds", parents=[common], help="exceptional-set bound shapes")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--grh", action="store_true")
    p.add_argument("--variant", choices=("serre", "sieve"), default=None)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.seed_given = args.seed is not None
        if args.seed is None:
            args.seed = 0
        result, table = args.func(args)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return 2
    except WeilStatError as exc:
        code = getattr(exc, "code", None) or type(exc).__name__
        print(f"error [{code}]: {exc}", file=stderr)
        return 1
    stdout.write(render(result, args.format, table))
    return 0


def dispatch(argv) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
