"""Command-line interface: coefficient tables, character expansions, and
the verification suite with text/JSON/CSV reports.

Exit codes: 0 all requested checks pass, 1 at least one failure, 2 usage
error, 3 evaluation errors left checks skipped (1 instead under
--strict-skip).

Output is byte-stable across runs and worker counts; wall-clock timings are
zeroed unless --timings is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .hecke import IntegralityViolation, StringFnId, character, string_coeff
from .registry import register_builtin_catalogue, run_suite, summarize
from .series import QSeriesError


class UsageError(Exception):
    pass


def _fr(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _emit(text: str, output_path):
    if output_path:
        with open(output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_config(path) -> dict:
    cfg = {}
    if not path:
        return cfg
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#") or "=" not in line:
                    continue
                key, _, value = line.partition("=")
                cfg[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return cfg


def cmd_coeffs(args) -> int:
    try:
        StringFnId(args.p, args.pprime, args.m, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.order <= 0:
        raise UsageError("order must be positive")
    series = string_coeff(args.p, args.pprime, args.m, args.ell,
                          args.order, normalized=args.normalized)
    rows = [(_fr(eq), str(c)) for eq, c in series.q_coefficients()]
    label = "normalized" if args.normalized else "plain"
    if args.format == "json":
        payload = {
            "kind": "string-function",
            "p": args.p, "pprime": args.pprime, "m": args.m, "ell": args.ell,
            "normalized": args.normalized, "order": _fr(args.order),
            "terms": [{"q": e, "value": v} for e, v in rows],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["q_exponent", "coefficient"])
        w.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        head = (f"# string function ({args.p},{args.pprime}), m={args.m}, "
                f"ell={args.ell}, {label}, below q^{_fr(args.order)}\n")
        body = "".join(f"{e}\t{v}\n" for e, v in rows)
        _emit(head + body, args.output)
    return 0


def cmd_character(args) -> int:
    try:
        StringFnId(args.p, args.pprime, args.ell % 2, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.order <= 0:
        raise UsageError("order must be positive")
    series = character(args.p, args.pprime, args.ell, args.order)
    rows = [(_fr(eq), _fr(ez), str(c)) for eq, ez, c in series.iter_terms()]
    if args.format == "json":
        payload = {
            "kind": "character",
            "p": args.p, "pprime": args.pprime, "ell": args.ell,
            "order": _fr(args.order),
            "terms": [{"q": e, "z": z, "value": v} for e, z, v in rows],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["q_exponent", "z_exponent", "coefficient"])
        w.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        head = (f"# character ({args.p},{args.pprime}), ell={args.ell}, "
                f"below q^{_fr(args.order)}\n")
        body = "".join(f"{e}\t{z}\t{v}\n" for e, z, v in rows)
        _emit(head + body, args.output)
    return 0


def _report_text(reports, summary, order, timings) -> str:
    lines = []
    for r in reports:
        t = f"  ({r.wall_time_ms:.0f} ms)" if timings else ""
        extra = ""
        if r.first_difference:
            d = r.first_difference
            extra = (f"  first difference at q^{d['q_exponent']} "
                     f"z^{d['z_exponent']}: {d['lhs']} vs {d['rhs']}")
        elif r.note:
            extra = f"  [{r.note}]"
        lines.append(f"{r.status.upper():7s} {r.id}  "
                     f"(order {r.verified_order}){t}{extra}")
    lines.append(f"summary: {summary['pass']} pass, {summary['fail']} fail, "
                 f"{summary['skipped']} skipped")
    return "\n".join(lines) + "\n"


def _report_json(reports, summary, order, timings) -> str:
    payload = {
        "suite": "builtin-identity-catalogue",
        "order": _fr(order) if order is not None else None,
        "checks": [r.to_json(timings) for r in reports],
        "summary": summary,
    }
    return json.dumps(payload, indent=2) + "\n"


def _report_csv(reports, summary, order, timings) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["id", "anchor", "status", "verified_order",
                "first_diff_q", "first_diff_z", "first_diff_lhs",
                "first_diff_rhs", "wall_time_ms", "note"])
    for r in reports:
        d = r.first_difference or {}
        w.writerow([r.id, r.anchor, r.status, r.verified_order,
                    d.get("q_exponent", ""), d.get("z_exponent", ""),
                    d.get("lhs", ""), d.get("rhs", ""),
                    round(r.wall_time_ms, 3) if timings else 0,
                    r.note or ""])
    return buf.getvalue()


def cmd_verify(args) -> int:
    if args.order is not None and args.order <= 0:
        raise UsageError("order must be positive")
    if args.threads < 1:
        raise UsageError("threads must be at least 1")
    reports = run_suite(args.filter, order=args.order, threads=args.threads)
    summary = summarize(reports)
    fmt = {"text": _report_text, "json": _report_json, "csv": _report_csv}[args.format]
    _emit(fmt(reports, summary, args.order, args.timings), args.output)
    if summary["fail"]:
        return 1
    if summary["skipped"]:
        return 1 if args.strict_skip else 3
    return 0


def cmd_list(args) -> int:
    cat = register_builtin_catalogue()
    if args.format == "json":
        payload = [{"id": cid, "anchor": chk.anchor, "kind": chk.kind,
                    "default_order": chk.default_order}
                   for cid, chk in cat.items()]
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "anchor", "kind", "default_order"])
        for cid, chk in cat.items():
            w.writerow([cid, chk.anchor, chk.kind, chk.default_order])
        _emit(buf.getvalue(), args.output)
    else:
        _emit("".join(f"{cid}\t{chk.anchor}\n" for cid, chk in cat.items()),
              args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qsv",
        description="Exact q-series computation and identity verification.")
    ap.add_argument("--config", default=None,
                    help="key=value file presetting order/threads/format/output")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_order_default=None):
        p.add_argument("--format", choices=("text", "json", "csv"), default=None)
        p.add_argument("--output", default=None, help="write to a file instead of stdout")

    pc = sub.add_parser("coeffs", help="string-function coefficient table")
    pc.add_argument("p", type=int)
    pc.add_argument("pprime", type=int)
    pc.add_argument("m", type=int)
    pc.add_argument("ell", type=int)
    pc.add_argument("--order", type=int, default=None)
    pc.add_argument("--normalized", action="store_true",
                    help="integer-normalized series (no q^s_lambda prefactor)")
    common(pc)
    pc.set_defaults(fn=cmd_coeffs, default_order=40)

    pch = sub.add_parser("character", help="two-variable character expansion")
    pch.add_argument("p", type=int)
    pch.add_argument("pprime", type=int)
    pch.add_argument("ell", type=int)
    pch.add_argument("--order", type=int, default=None)
    common(pch)
    pch.set_defaults(fn=cmd_character, default_order=20)

    pv = sub.add_parser("verify", help="run the identity catalogue")
    pv.add_argument("--filter", default="*", help="glob over check ids")
    pv.add_argument("--order", type=int, default=None,
                    help="override every check's default order")
    pv.add_argument("--threads", type=int, default=None,
                    help="worker processes (default: QSV_THREADS or 1)")
    pv.add_argument("--strict-skip", action="store_true",
                    help="treat skipped checks as failures")
    pv.add_argument("--timings", action="store_true",
                    help="include wall-clock times (non-deterministic output)")
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    pl = sub.add_parser("list", help="list catalogue ids and anchors")
    common(pl)
    pl.set_defaults(fn=cmd_list)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _read_config(args.config)
        if getattr(args, "order", None) is None:
            if "order" in cfg:
                args.order = int(cfg["order"])
            elif hasattr(args, "default_order"):
                args.order = args.default_order
        if getattr(args, "format", None) is None:
            args.format = cfg.get("format", "text")
            if args.format not in ("text", "json", "csv"):
                raise UsageError(f"bad format {args.format!r} in config")
        if getattr(args, "output", None) is None and "output" in cfg:
            args.output = cfg["output"]
        if hasattr(args, "threads") and args.threads is None:
            env = os.environ.get("QSV_THREADS")
            args.threads = int(cfg.get("threads", env if env else 1))
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IntegralityViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QSeriesError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
