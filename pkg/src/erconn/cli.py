"""Command-line interface: every engine behind one executable, with
machine-readable JSON/CSV output for tables and plots.

Commands:
  exact         one exact engine per (n, p) point
  asympt        regime classification + asymptotic formula
  mc            Monte Carlo estimators (exploration or bridge sampler)
  compare       all applicable engines side by side, with deltas
  table         range sweep of the auto-dispatched exact engine
  trajectories  sampled walk paths as run_id/k/S_k rows

Exit status: 0 success, 2 domain error (bad arguments), 3 refusal (size
ceiling or uncovered regime).  stdout carries data; stderr diagnostics.
"""

import argparse
import csv
import io
import json
import math
import sys

from . import asymptotics, graphs, simulate, walk
from .errors import DomainError, RefusalError

_REGIME_CHOICES = {
    "auto": None,
    "diverging": asymptotics.Regime.DIVERGING,
    "constant": asymptotics.Regime.CONSTANT,
    "vanishing_root_n": asymptotics.Regime.VANISHING_ABOVE_ROOT_N,
    "below_one_over_n": asymptotics.Regime.BELOW_ONE_OVER_N,
}

_COLUMNS = {
    "exact": ["n", "p", "c", "method", "value", "log_value", "error_bound"],
    "asympt": ["n", "c", "p", "regime", "formula_id", "value", "raw_value",
               "log_value", "note"],
    "mc": ["kind", "n", "p", "c", "samples", "seed", "mean", "std_error"],
    "compare": ["n", "p", "c", "regime", "brute", "recursive", "pcon", "walk",
                "asymptotic", "delta_brute_walk", "delta_brute_recursive",
                "delta_brute_pcon", "m", "hitting_exact", "hitting_bound"],
    "table": ["n", "p", "c", "method", "value", "log_value"],
    "trajectories": ["run_id", "k", "S_k"],
}

RECURSION_CEILING = 400  # documented practical limit of the recursive oracle


def parse_range(text: str, integer: bool = False) -> list:
    """Parse a value or range spec.

    Accepted forms: a single number, a comma list ``a,b,c``, an arithmetic
    progression ``start:stop:step`` (stop included when hit exactly), or a
    geometric progression ``start:stop:xFACTOR``.
    """
    def convert(tok: str):
        v = float(tok)
        if integer:
            if v != int(v):
                raise DomainError(f"expected an integer, got {tok!r}")
            return int(v)
        return v

    text = text.strip()
    try:
        if "," in text:
            return [convert(t) for t in text.split(",") if t.strip()]
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise DomainError(
                    f"range spec must be start:stop:step, got {text!r}")
            start, stop = float(parts[0]), float(parts[1])
            steptok = parts[2].strip()
            values = []
            if steptok.startswith("x"):
                factor = float(steptok[1:])
                if factor <= 1.0 or start <= 0.0:
                    raise DomainError(
                        "geometric range needs factor > 1 and start > 0")
                v = start
                while v <= stop * (1.0 + 1e-12):
                    values.append(v)
                    v *= factor
            else:
                step = float(steptok)
                if step <= 0.0:
                    raise DomainError("arithmetic range needs step > 0")
                v = start
                while v <= stop + 1e-12 * max(1.0, abs(step)):
                    values.append(v)
                    v += step
            if not values:
                raise DomainError(f"range spec {text!r} is empty")
            return [convert(repr(v)) for v in values]
        return [convert(text)]
    except ValueError as exc:
        raise DomainError(f"cannot parse range spec {text!r}: {exc}") from exc


def _resolve_points(args, n_values):
    """Yield (n, p, c) combinations from the mutually exclusive --p/--c."""
    if (args.p is None) == (args.c is None):
        raise DomainError("exactly one of --p or --c must be given")
    points = []
    if args.p is not None:
        for n in n_values:
            for p in parse_range(args.p):
                points.append((n, p, p * n))
    else:
        for n in n_values:
            for c in parse_range(args.c):
                points.append((n, c / n, c))
    return points


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(command: str, rows: list, fmt: str, out_path) -> None:
    columns = _COLUMNS[command]
    if fmt == "json":
        text = json.dumps({"command": command, "results": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(row[col]) for col in columns])
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dispatch_exact(n: int, p: float, method: str):
    if method == "auto":
        method = "walk" if n > graphs.BRUTE_FORCE_MAX_N else "brute"
    if method == "brute":
        return method, graphs.connectivity_brute_force(graphs.GraphEnumSpec(n, p))
    if method == "recursive":
        return method, graphs.connectivity_recursive(n, p)
    if method == "pcon":
        return method, graphs.connectivity_pcon_sum(n, p)
    if method == "walk":
        return method, walk.connectivity_via_walk(n, p)
    raise DomainError(f"unknown method {method!r}")


def _thresholds(args) -> asymptotics.ClassifierThresholds:
    return asymptotics.ClassifierThresholds(
        k_lo=args.k_lo, k_hi=args.k_hi, k3=args.k3, k4=args.k4)


def _cmd_exact(args):
    rows = []
    for n, p, c in _resolve_points(args, parse_range(args.n, integer=True)):
        method, value = _dispatch_exact(n, p, args.method)
        rows.append({"n": n, "p": p, "c": c, "method": method,
                     "value": value.linear_value, "log_value": value.log_value,
                     "error_bound": value.error_bound})
    _emit("exact", rows, args.format, args.out)


def _cmd_table(args):
    rows = []
    for n, p, c in _resolve_points(args, parse_range(args.n, integer=True)):
        method, value = _dispatch_exact(n, p, args.method)
        rows.append({"n": n, "p": p, "c": c, "method": method,
                     "value": value.linear_value, "log_value": value.log_value})
    _emit("table", rows, args.format, args.out)


def _cmd_asympt(args):
    regime = _REGIME_CHOICES[args.regime]
    th = _thresholds(args)
    rows = []
    for n, p, c in _resolve_points(args, parse_range(args.n, integer=True)):
        report = asymptotics.asymptotic_connectivity(n, c, regime=regime,
                                                     thresholds=th)
        rows.append({
            "n": n, "c": c, "p": p, "regime": report.regime.value,
            "formula_id": report.formula_id,
            "value": report.value.linear_value,
            "raw_value": report.raw_value,
            "log_value": report.value.log_value,
            "note": report.applicability_note,
        })
    _emit("asympt", rows, args.format, args.out)


def _cmd_mc(args):
    rows = []
    for n, p, c in _resolve_points(args, parse_range(args.n, integer=True)):
        if args.kind == "explore":
            est = simulate.explore_connectivity_mc(n, p, args.samples, args.seed)
        else:
            est = simulate.bridge_excursion_mc(walk.make_profile(n, c),
                                               args.samples, args.seed)
        rows.append({"kind": args.kind, "n": n, "p": p, "c": c,
                     "samples": est.samples, "seed": est.seed,
                     "mean": est.mean, "std_error": est.std_error})
    _emit("mc", rows, args.format, args.out)


def _cmd_compare(args):
    th = _thresholds(args)
    rows = []
    for n, p, c in _resolve_points(args, parse_range(args.n, integer=True)):
        row = {col: None for col in _COLUMNS["compare"]}
        row.update({"n": n, "p": p, "c": c})
        row["walk"] = walk.connectivity_via_walk(n, p).linear_value
        if n <= graphs.BRUTE_FORCE_MAX_N:
            row["brute"] = graphs.connectivity_brute_force(
                graphs.GraphEnumSpec(n, p)).linear_value
        if n <= RECURSION_CEILING:
            row["recursive"] = graphs.connectivity_recursive(n, p).linear_value
        if n <= graphs.PCON_SUM_MAX_N:
            row["pcon"] = graphs.connectivity_pcon_sum(n, p).linear_value
        report = asymptotics.classify_regime(n, c, thresholds=th)
        row["regime"] = report.regime.value
        if report.regime is not asymptotics.Regime.UNCOVERED:
            row["asymptotic"] = asymptotics.asymptotic_connectivity(
                n, c, regime=report.regime).value.linear_value
        if row["brute"] is not None:
            row["delta_brute_walk"] = row["brute"] - row["walk"]
            row["delta_brute_recursive"] = row["brute"] - row["recursive"]
            if row["pcon"] is not None:
                row["delta_brute_pcon"] = row["brute"] - row["pcon"]
        if args.m is not None:
            row["m"] = args.m
            row["hitting_exact"] = walk.mid_hitting_exact(
                walk.make_profile(n, c), args.m).linear_value
            row["hitting_bound"] = walk.mid_hitting_bound(n, args.m, c)
        rows.append(row)
    _emit("compare", rows, args.format, args.out)


def _cmd_trajectories(args):
    n_values = parse_range(args.n, integer=True)
    if len(n_values) != 1:
        raise DomainError("trajectories takes a single --n, not a range")
    points = _resolve_points(args, n_values)
    if len(points) != 1:
        raise DomainError("trajectories takes a single --p/--c, not a range")
    n, p, c = points[0]
    profile = walk.make_profile(n, c)
    records = simulate.sample_trajectories(profile, args.count,
                                           args.conditioned, args.seed)
    if args.format == "json":
        results = [{"run_id": i, "n": rec.n, "c": rec.c,
                    "conditioned": rec.conditioned,
                    "steps": rec.steps.tolist()}
                   for i, rec in enumerate(records)]
        text = json.dumps({"command": "trajectories", "results": results},
                          indent=2) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    rows = [{"run_id": i, "k": int(k), "S_k": int(s)}
            for i, rec in enumerate(records) for k, s in rec.steps]
    _emit("trajectories", rows, "csv", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erconn",
        description="Connectivity probability of G(n, p): exact engines, "
                    "asymptotics, and Monte Carlo cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_method=False, with_classifier=False):
        sp.add_argument("--n", required=True,
                        help="vertex count: value, comma list, start:stop:step, "
                             "or start:stop:xFACTOR")
        sp.add_argument("--p", help="edge probability (same range forms)")
        sp.add_argument("--c", help="c = p*n (same range forms); excludes --p")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.add_argument("--seed", type=int, default=0,
                        help="unsigned 64-bit seed (default 0)")
        if with_method:
            sp.add_argument("--method",
                            choices=["auto", "brute", "recursive", "pcon", "walk"],
                            default="auto",
                            help="auto = walk above the enumeration ceiling, "
                                 "brute otherwise")
        if with_classifier:
            sp.add_argument("--regime", choices=sorted(_REGIME_CHOICES),
                            default="auto")
            sp.add_argument("--k-lo", dest="k_lo", type=float, default=0.1)
            sp.add_argument("--k-hi", dest="k_hi", type=float, default=20.0)
            sp.add_argument("--k3", type=float, default=10.0)
            sp.add_argument("--k4", type=float, default=0.1)

    sp = sub.add_parser("exact", help="one exact engine per point")
    add_common(sp, with_method=True)
    sp.set_defaults(func=_cmd_exact)

    sp = sub.add_parser("asympt", help="regime classification and formula value")
    add_common(sp, with_classifier=True)
    sp.set_defaults(func=_cmd_asympt)

    sp = sub.add_parser("mc", help="Monte Carlo estimate")
    add_common(sp)
    sp.add_argument("--kind", choices=["explore", "bridge"], default="explore")
    sp.add_argument("--samples", type=int, default=10000)
    sp.set_defaults(func=_cmd_mc)

    sp = sub.add_parser("compare", help="all applicable engines side by side")
    add_common(sp, with_classifier=True)
    sp.add_argument("--m", type=int,
                    help="also report mid-window hitting probability and bound "
                         "for this window offset")
    sp.set_defaults(func=_cmd_compare)

    sp = sub.add_parser("table", help="sweep ranges with the auto engine")
    add_common(sp, with_method=True)
    sp.set_defaults(func=_cmd_table)

    sp = sub.add_parser("trajectories", help="sample walk paths as CSV/JSON")
    add_common(sp)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--conditioned", action="store_true",
                    help="pin trajectories to end at S_n = -1")
    sp.set_defaults(func=_cmd_trajectories)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
