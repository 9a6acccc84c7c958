"""Command-line front end.

Subcommands: partitions, cumulants, dist, distance, bound, audit, verify.
Output is deterministic: numbers carry 12 significant digits in CSV/JSON
and 6 in text mode, and nothing in the pipeline is randomized.  Exit codes:
0 success, 2 input/domain error, 1 internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds as bounds_mod
from . import distributions as dist_mod
from .config import RunConfig, load_config
from .cumulants import (
    ConvolutionKind,
    CumulantSequence,
    MomentSequence,
    cumulants_from_moments,
    moments_from_cumulants,
)
from .errors import FourthMomentError
from .kolmogorov import distance
from .partitions import PartitionFamily, PartitionKind, count_partitions

CSV_HEADER = ["example", "params", "m4", "N", "rhs", "measured", "error_bound", "satisfied"]

_SIG = {"csv": 12, "json": 12, "text": 6}


def _fmt(x: float, fmt: str) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{_SIG[fmt]}g}"


def _json_round(obj, sig: int = 12):
    """Round every float in a JSON-ready structure to ``sig`` digits."""
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return str(obj)
        return float(f"{obj:.{sig}g}")
    if isinstance(obj, dict):
        return {k: _json_round(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_round(v, sig) for v in obj]
    return obj


def _parse_n(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _parse_vector(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.replace(";", ",").split(",") if part.strip())


def _parse_params(pairs: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise FourthMomentError(f"expected name=value parameter, got {pair!r}")
        key, _, value = pair.partition("=")
        out[key.strip()] = float(value)
    return out


def _parse_spec(token: str) -> dist_mod.DistributionSpec:
    """Parse 'name' or 'name:k=v,k=v' into a catalog spec."""
    name, _, rest = token.partition(":")
    params = _parse_params(rest.split(",")) if rest else {}
    return dist_mod.make_spec(name, **params)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a flat key=value config file")
    common.add_argument(
        "--format", choices=("text", "csv", "json"), help="output format (default text)"
    )

    parser = argparse.ArgumentParser(
        prog="fml",
        parents=[common],
        description="Fourth-moment bounds, moment-cumulant transforms, and "
        "certified Kolmogorov distances for the catalog laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", help="partition family statistics")
    psub = p.add_subparsers(dest="action", required=True)
    pc = psub.add_parser("count", parents=[common], help="count the members of a family")
    pc.add_argument("--kind", choices=("all", "nc", "pair"), required=True)
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--ceiling", type=int, help="override the enumeration ceiling")

    c = sub.add_parser("cumulants", parents=[common], help="convert between moments and cumulants")
    c.add_argument("--kind", choices=("classical", "free"), required=True)
    direction = c.add_mutually_exclusive_group(required=True)
    direction.add_argument(
        "--from-moments", metavar="M1,M2,...", help="moment vector to convert to cumulants"
    )
    direction.add_argument(
        "--from-cumulants", metavar="C1,C2,...", help="cumulant vector to convert to moments"
    )
    c.add_argument("--csv-file", help="read the vector from the first row of a CSV file")

    d = sub.add_parser("dist", help="catalog distribution queries")
    dsub = d.add_subparsers(dest="action", required=True)
    dc = dsub.add_parser("cdf", parents=[common], help="evaluate a catalog CDF")
    dc.add_argument("name", choices=dist_mod.CATALOG_NAMES)
    dc.add_argument("--params", nargs="*", default=[], metavar="k=v")
    dc.add_argument("--at", type=float, required=True)
    dm = dsub.add_parser("moments", parents=[common], help="declared moments of a catalog law")
    dm.add_argument("name", choices=dist_mod.CATALOG_NAMES)
    dm.add_argument("--params", nargs="*", default=[], metavar="k=v")
    ds = dsub.add_parser("spec", parents=[common], help="JSON dump of a catalog entry")
    ds.add_argument("name", choices=dist_mod.CATALOG_NAMES)
    ds.add_argument("--params", nargs="*", default=[], metavar="k=v")

    k = sub.add_parser("distance", parents=[common], help="certified Kolmogorov distance between catalog laws")
    k.add_argument("first", help="law as name or name:k=v,k=v (e.g. poisson:n=16)")
    k.add_argument("second", help="law as name or name:k=v,k=v")
    k.add_argument("--tolerance", type=float, help="certificate tolerance for GridRefine")

    b = sub.add_parser("bound", parents=[common], help="evaluate a theorem right-hand side")
    b.add_argument("kind", choices=("classical", "free"))
    b.add_argument("--m4", type=float, required=True)
    b.add_argument("--N", type=_parse_n, default=math.inf, help="divisibility order or inf")
    b.add_argument("--C", type=float, help="classical constant override")
    b.add_argument("--K", type=float, help="free constant override")

    a = sub.add_parser("audit", parents=[common], help="kurtosis divisibility audit of a moment vector")
    a.add_argument("--moments", required=True, metavar="M1,M2,M3,M4")

    v = sub.add_parser("verify", parents=[common], help="reproduce the worked examples")
    group = v.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true", help="run the whole verification suite")
    group.add_argument("--example", help="run a single example by name")
    v.add_argument("--params", nargs="*", default=[], metavar="k=v")
    v.add_argument("--C", type=float, help="classical constant override")
    v.add_argument("--K", type=float, help="free constant override")
    v.add_argument("--tolerance", type=float, help="distance certificate tolerance")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        if args.format is not None:
            config.output_format = args.format
        return _dispatch(args, config)
    except FourthMomentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # pragma: no cover - internal failures
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace, config: RunConfig) -> int:
    if args.command == "partitions":
        return _cmd_partitions(args, config)
    if args.command == "cumulants":
        return _cmd_cumulants(args, config)
    if args.command == "dist":
        return _cmd_dist(args, config)
    if args.command == "distance":
        return _cmd_distance(args, config)
    if args.command == "bound":
        return _cmd_bound(args, config)
    if args.command == "audit":
        return _cmd_audit(args, config)
    return _cmd_verify(args, config)


def _cmd_partitions(args: argparse.Namespace, config: RunConfig) -> int:
    kind = PartitionKind(args.kind)
    ceiling = args.ceiling
    if ceiling is None:
        ceiling = {
            PartitionKind.ALL: config.ceiling_all,
            PartitionKind.NONCROSSING: config.ceiling_noncrossing,
            PartitionKind.PAIR: config.ceiling_pair,
        }[kind]
    count = count_partitions(PartitionFamily(kind, args.n), ceiling)
    if config.output_format == "json":
        print(json.dumps({"kind": args.kind, "n": args.n, "count": count}))
    elif config.output_format == "csv":
        print("kind,n,count")
        print(f"{args.kind},{args.n},{count}")
    else:
        print(count)
    return 0


def _cmd_cumulants(args: argparse.Namespace, config: RunConfig) -> int:
    kind = ConvolutionKind(args.kind)
    raw = args.from_moments if args.from_moments is not None else args.from_cumulants
    if args.csv_file:
        with open(args.csv_file, newline="", encoding="utf-8") as fh:
            row = next(csv.reader(fh))
        values = tuple(float(v) for v in row if v.strip())
    else:
        values = _parse_vector(raw)
    ceiling = (
        config.ceiling_all if kind is ConvolutionKind.CLASSICAL else config.ceiling_noncrossing
    )
    if args.from_moments is not None:
        result = cumulants_from_moments(MomentSequence(values), kind, ceiling)
        label = "cumulants"
        out_values = result.values
    else:
        result = moments_from_cumulants(CumulantSequence(kind, values), ceiling)
        label = "moments"
        out_values = result.values
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps({"kind": kind.value, label: _json_round(list(out_values))}))
    else:
        print(",".join(_fmt(v, fmt) for v in out_values))
    return 0


def _cmd_dist(args: argparse.Namespace, config: RunConfig) -> int:
    spec = dist_mod.make_spec(args.name, **_parse_params(args.params))
    fmt = config.output_format
    if args.action == "cdf":
        value = spec.cdf(args.at) if spec.cdf else None
        if value is None:
            raise FourthMomentError(f"{spec.name} has no CDF in the catalog")
        if fmt == "json":
            print(json.dumps({"name": spec.name, "at": args.at, "cdf": _json_round(value)}))
        else:
            print(_fmt(value, fmt))
        return 0
    if args.action == "moments":
        if spec.moments is None:
            raise FourthMomentError(f"{spec.name} has no declared moments")
        if fmt == "json":
            print(json.dumps({"name": spec.name, "moments": _json_round(list(spec.moments.values))}))
        else:
            print(",".join(_fmt(v, fmt) for v in spec.moments.values))
        return 0
    payload = {
        "name": spec.name,
        "params": spec.params,
        "support": [spec.support[0], spec.support[1]],
        "moments": list(spec.moments.values) if spec.moments else None,
        "has_cdf": spec.cdf is not None,
        "cdf_error": spec.cdf_error,
        "lipschitz_bound": spec.lipschitz_bound,
        "atom_count": len(spec.atoms) if spec.atoms else 0,
        "truncated_tail_mass": spec.truncated_tail_mass,
    }
    print(json.dumps(_json_round(payload)))
    return 0


def _cmd_distance(args: argparse.Namespace, config: RunConfig) -> int:
    first = _parse_spec(args.first)
    second = _parse_spec(args.second)
    tolerance = args.tolerance if args.tolerance is not None else config.tolerance
    result = distance(first, second, tolerance)
    print(json.dumps(_json_round(result.as_dict())))
    return 0


def _cmd_bound(args: argparse.Namespace, config: RunConfig) -> int:
    if args.kind == "classical":
        C = args.C if args.C is not None else config.constant_C
        report = bounds_mod.classical_bound(args.m4, args.N, C)
    else:
        K = args.K if args.K is not None else config.constant_K
        report = bounds_mod.free_bound(args.m4, args.N, K)
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps(_json_round(report.as_dict())))
    elif fmt == "csv":
        print(",".join(_report_row(report, "csv")))
    else:
        print(f"rhs = {_fmt(report.rhs, fmt)}  [{report.formula}]")
    return 0


def _cmd_audit(args: argparse.Namespace, config: RunConfig) -> int:
    audit = bounds_mod.kurtosis_audit(MomentSequence(_parse_vector(args.moments)))
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps(_json_round(audit.as_dict())))
    else:
        d = audit.as_dict()
        for key in (
            "kurt_classical",
            "kurt_free",
            "max_n_classical",
            "max_n_free",
            "equality_classical",
            "equality_free",
        ):
            value = d[key]
            if isinstance(value, float):
                value = _fmt(value, fmt)
            print(f"{key} = {value}")
    return 0


def _params_str(params: dict[str, float] | None) -> str:
    if not params:
        return ""
    return ";".join(f"{k}={_fmt(float(v), 'csv')}" for k, v in sorted(params.items()))


def _report_row(report: bounds_mod.BoundReport, fmt: str) -> list[str]:
    measured = report.measured
    return [
        report.example or report.theorem.value,
        _params_str(report.params),
        _fmt(report.m4, fmt),
        "inf" if math.isinf(report.N) else str(int(report.N)),
        _fmt(report.rhs, fmt),
        _fmt(measured.value, fmt) if measured else "",
        _fmt(measured.error_bound, fmt) if measured else "",
        "" if report.satisfied is None else str(report.satisfied).lower(),
    ]


def _cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    C = args.C if args.C is not None else config.constant_C
    K = args.K if args.K is not None else config.constant_K
    tolerance = args.tolerance if args.tolerance is not None else config.tolerance
    if args.all:
        reports = bounds_mod.run_verification_suite(C=C, K=K, tolerance=tolerance)
    else:
        params = _parse_params(args.params)
        reports = [bounds_mod.verify_example(args.example, C=C, K=K, tolerance=tolerance, **params)]
    fmt = config.output_format
    if fmt == "json":
        print(json.dumps([_json_round(r.as_dict()) for r in reports]))
        return 0
    if fmt == "csv" or args.all:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for report in reports:
            writer.writerow(_report_row(report, "csv"))
        sys.stdout.write(buffer.getvalue())
        return 0
    for report in reports:
        row = _report_row(report, "text")
        print(
            f"{row[0]}({row[1]}): m4={row[2]} N={row[3]} rhs={row[4]}"
            + (f" measured={row[5]} +/-{row[6]} satisfied={row[7]}" if row[5] else "")
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
