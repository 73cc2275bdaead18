"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 infeasible computation,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from . import __version__, cells
from .bounds import bounds_report, monotonicity_report
from .cache import ENV_VAR, load_or_build
from .errors import InfeasibleError, UsageError
from .flag import grassmann_nonzero_via_flag
from .ring import DEFAULT_CAP, GrassmannRing, build_ring
from .tensor import zcl_basic, zcl_exact
from .verify import FAIL, run_suite, summarize

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default, which we reserve
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> range:
    """``a:b`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            a, b = text.split(":")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--max-degree-cap", type=_positive, default=DEFAULT_CAP,
                        help="rows*columns limit of one elimination block")
    common.add_argument("--cache-dir", default=None, help=f"normal-form cache (default: ${ENV_VAR})")
    common.add_argument("--jobs", type=_positive, default=1)
    ts = common.add_mutually_exclusive_group()
    ts.add_argument("--timestamp", dest="timestamp", action="store_true")
    ts.add_argument("--no-timestamp", dest="timestamp", action="store_false")
    common.set_defaults(timestamp=False)

    kn = argparse.ArgumentParser(add_help=False)
    kn.add_argument("-k", type=int, required=True)
    kn.add_argument("-n", type=int, required=True)
    kn.add_argument("--complement", action="store_true", help="answer 2k > n through G_{n-k}(R^n)")

    p = _Parser(prog="grasstc", description="Mod-2 cohomology of real Grassmannians and TC/cat bounds")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("ring", parents=[common, kn], help="basis sizes per degree")
    h = sub.add_parser("height", parents=[common, kn], help="height of a class")
    h.add_argument("--class", dest="cls", default="w1")
    sub.add_parser("cuplength", parents=[common, kn], help="longest nonzero generator product")
    z = sub.add_parser("zcl", parents=[common, kn], help="zero-divisor cup-length")
    z.add_argument("--exact", action="store_true")
    b = sub.add_parser("bounds", parents=[common, kn], help="cat and TC sandwiches")
    b.add_argument("--exact", action="store_true")
    c = sub.add_parser("cells", parents=[common], help="Schubert cell counts")
    c.add_argument("-k", type=int, required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--dimension", type=int, default=None)
    nz = sub.add_parser("nonzero", parents=[common, kn], help="is a class nonzero")
    nz.add_argument("--class", dest="cls", required=True)
    nz.add_argument("--certificate", action="store_true", help="also search a flag-manifold certificate")
    m = sub.add_parser("monotonicity", parents=[common], help="cat/TC monotonicity criteria")
    m.add_argument("-k", type=int, required=True)
    m.add_argument("-m", type=int, required=True)
    m.add_argument("-n", type=int, required=True)
    t = sub.add_parser("table", parents=[common], help="bounds over a (k, n) grid")
    t.add_argument("--k-range", type=_range, required=True)
    t.add_argument("--n-range", type=_range, required=True)
    t.add_argument("--exact", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="check every closed-form claim")
    v.add_argument("--suite", choices=["paper"], required=True)
    v.add_argument("--max-k", type=int, default=3)
    v.add_argument("--max-n", type=int, default=11)
    v.add_argument("--show", choices=["all", "problems"], default="problems")
    return p


# -- output ------------------------------------------------------------------


def _emit(args, payload: dict, rows: list[dict] | None = None, plain: list[str] | None = None) -> str:
    if args.timestamp:
        payload = dict(payload, timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"))
    if args.format == "json":
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.format == "csv":
        rows = rows if rows is not None else [_flat(payload)]
        buf = io.StringIO()
        fields = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = plain if plain is not None else [f"{k}: {v}" for k, v in _flat(payload).items()]
    if args.timestamp:
        lines = lines + [f"timestamp: {payload['timestamp']}"]
    return "\n".join(lines) + "\n"


def _flat(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flat(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = " ".join(map(str, v)) if all(not isinstance(x, (list, dict)) for x in v) else json.dumps(v)
        else:
            out[key] = "" if v is None else v
    return out


# -- commands ------------------------------------------------------------------


def _ring(args) -> GrassmannRing:
    k, n = args.k, args.n
    if 2 * k > n and 0 <= k <= n and not getattr(args, "complement", False):
        raise UsageError(f"G_{k}(R^{n}) has 2k > n; pass --complement to use G_{n - k}(R^{n})")
    if 2 * k > n:
        return build_ring(k, n, args.max_degree_cap, allow_complement=True)
    return load_or_build(k, n, args.cache_dir, args.max_degree_cap)


def _note(ring: GrassmannRing, payload: dict) -> dict:
    if ring.complement_of is not None:
        k, n = ring.complement_of
        payload["note"] = f"computed on the complement G_{ring.k}(R^{n}) of G_{k}(R^{n})"
    return payload


def cmd_ring(args) -> tuple[str, int]:
    ring = _ring(args)
    sizes = ring.basis_sizes()
    payload = _note(ring, {"k": ring.k, "n": ring.n, "dim": ring.dim, "basis_sizes": sizes, "total": sum(sizes),
                           "relations": [str(p) for p in ring.relations()]})
    rows = [{"degree": d, "basis_size": s} for d, s in enumerate(sizes)]
    plain = [f"G_{ring.k}(R^{ring.n}): dim {ring.dim}, total rank {sum(sizes)}"]
    plain += [f"degree {d}: {s}" for d, s in enumerate(sizes)]
    if "note" in payload:
        plain.append(payload["note"])
    return _emit(args, payload, rows, plain), EXIT_OK


def cmd_height(args) -> tuple[str, int]:
    ring = _ring(args)
    try:
        p = ring.space.parse(args.cls)
    except (UsageError, ValueError) as exc:
        raise UsageError(f"cannot parse class {args.cls!r}: {exc}") from None
    h = ring.height(p)
    payload = _note(ring, {"k": ring.k, "n": ring.n, "class": str(p), "height": h})
    return _emit(args, payload), EXIT_OK


def cmd_cuplength(args) -> tuple[str, int]:
    ring = _ring(args)
    N, w = ring.max_monomial_cup_length()
    payload = _note(ring, {"k": ring.k, "n": ring.n, "cup_length": N, "witness": list(w),
                           "witness_text": ring.space.format_monomial(w), "cat_lower": N + 1})
    return _emit(args, payload), EXIT_OK


def _zcl_payload(ring: GrassmannRing, exact: bool) -> dict:
    r = zcl_exact(ring) if exact else zcl_basic(ring)
    witness: dict = {"m": list(r.witness)}
    if r.side is not None:
        sp = ring.space
        witness["y"] = [sp.format_monomial(r.side[0]), sp.format_monomial(r.side[1])]
    return {"k": ring.k, "n": ring.n, "mode": r.mode, "zcl": r.zcl, "witness": witness, "tc_lower": r.tc_lower}


def cmd_zcl(args) -> tuple[str, int]:
    ring = _ring(args)
    payload = _note(ring, _zcl_payload(ring, args.exact))
    return _emit(args, payload), EXIT_OK


def cmd_bounds(args) -> tuple[str, int]:
    ring = _ring(args)
    rep = bounds_report(ring.k, ring.n, ring, exact=args.exact)
    payload = _note(ring, rep.to_dict())
    plain = [
        f"G_{rep.k}(R^{rep.n}), dim {rep.dim}",
        f"cat in [{rep.cat_lower}, {rep.cat_upper}]  witness {ring.space.format_monomial(rep.cat_witness)}",
        f"TC  in [{rep.tc_lower}, {rep.tc_upper}]  zcl {rep.zcl} witness z^{list(rep.zcl_witness)}",
    ]
    if rep.zcl_exact is not None:
        plain.append(f"zcl (exact search) {rep.zcl_exact}")
    plain += [f"note: {e}" for e in rep.exceptions]
    return _emit(args, payload, plain=plain), EXIT_OK


def cmd_cells(args) -> tuple[str, int]:
    if args.dimension is not None:
        syms = cells.enumerate_symbols(args.k, args.n, args.dimension)
        payload = {"k": args.k, "n": args.n, "dimension": args.dimension, "count": len(syms),
                   "symbols": [list(s.sigma) for s in syms]}
        rows = [{"dimension": args.dimension, "symbol": str(s)} for s in syms]
        plain = [f"{len(syms)} cells of dimension {args.dimension}"] + [str(s) for s in syms]
        return _emit(args, payload, rows, plain), EXIT_OK
    counts = cells.cell_counts(args.k, args.n)
    payload = {"k": args.k, "n": args.n, "counts": counts, "total": sum(counts)}
    rows = [{"dimension": d, "count": c} for d, c in enumerate(counts)]
    plain = [f"dimension {d}: {c}" for d, c in enumerate(counts)] + [f"total: {sum(counts)}"]
    return _emit(args, payload, rows, plain), EXIT_OK


def cmd_nonzero(args) -> tuple[str, int]:
    ring = _ring(args)
    try:
        p = ring.space.parse(args.cls)
    except (UsageError, ValueError) as exc:
        raise UsageError(f"cannot parse class {args.cls!r}: {exc}") from None
    payload = {"k": ring.k, "n": ring.n, "class": str(p), "nonzero": ring.is_nonzero(p),
               "normal_form": str(ring.reduce(p))}
    if args.certificate:
        if not p.is_homogeneous():
            raise UsageError("certificates need a homogeneous class")
        cert = grassmann_nonzero_via_flag(p, ring.k, ring.n)
        payload["certificate"] = cert.describe(ring.n)
        if cert.nonzero != payload["nonzero"]:
            payload["disagreement"] = True
            return _emit(args, _note(ring, payload)), EXIT_VERIFY
    return _emit(args, _note(ring, payload)), EXIT_OK


def cmd_monotonicity(args) -> tuple[str, int]:
    rep = monotonicity_report(args.k, args.m, args.n)
    payload = rep.to_dict()
    rows = [dict(c, k=args.k, m=args.m, n=args.n) for c in payload["checks"]]
    plain = [f"{c['invariant']:3s} [{c['source']}] lower {c['lower_bound']} vs threshold {c['threshold']}: "
             f"{c['result']}" for c in payload["checks"]]
    return _emit(args, payload, rows, plain), EXIT_OK


def _table_row(job):
    k, n, cap, exact = job
    try:
        ring = build_ring(k, n, cap)
        rep = bounds_report(k, n, ring, exact=exact)
    except InfeasibleError:
        rep = bounds_report(k, n, cap=cap, exact=exact)
    row = {
        "k": k, "n": n, "dim": rep.dim, "cup_length": rep.cup_length, "cat_lower": rep.cat_lower,
        "cat_upper": rep.cat_upper, "zcl": rep.zcl, "tc_lower": rep.tc_lower, "tc_upper": rep.tc_upper,
        "zcl_witness": " ".join(map(str, rep.zcl_witness)) if rep.zcl_witness else "",
        "closed_form_zcl": rep.closed_form.zcl if rep.closed_form else None,
        "partial": rep.partial,
    }
    if exact:
        row["zcl_exact"] = rep.zcl_exact
    return row


def cmd_table(args) -> tuple[str, int]:
    jobs = [(k, n, args.max_degree_cap, args.exact) for k in args.k_range for n in args.n_range
            if k >= 1 and 2 * k <= n]
    if not jobs:
        raise UsageError("no (k, n) with 1 <= k <= n/2 in the given ranges")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_row, jobs))
    else:
        rows = [_table_row(j) for j in jobs]
    rows = [{k: ("" if v is None else v) for k, v in r.items()} for r in rows]
    payload = {"rows": rows}
    if args.format == "plain":
        head = f"{'k':>2} {'n':>3} {'dim':>4} {'cat':>9} {'TC':>9} {'zcl':>4} {'closed':>6}"
        plain = [head] + [
            f"{r['k']:>2} {r['n']:>3} {r['dim']:>4} {str(r['cat_lower']) + '..' + str(r['cat_upper']):>9} "
            f"{str(r['tc_lower']) + '..' + str(r['tc_upper']):>9} {str(r['zcl']):>4} {str(r['closed_form_zcl']):>6}"
            for r in rows
        ]
        return _emit(args, payload, rows, plain), EXIT_OK
    return _emit(args, payload, rows), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    if args.max_k < 2 or args.max_n < 4:
        raise UsageError("verify needs --max-k >= 2 and --max-n >= 4")
    records = run_suite(args.max_k, args.max_n, args.max_degree_cap, args.jobs)
    summary = summarize(records)
    shown = records if args.show == "all" else [r for r in records if r.status != "pass"]
    payload = {"suite": args.suite, "max_k": args.max_k, "max_n": args.max_n, "summary": summary,
               "records": [r.to_dict() for r in shown]}
    rows = [{"claim": r.claim, "expected": json.dumps(r.expected), "provenance": r.provenance,
             "computed": json.dumps(r.computed), "status": r.status, "note": r.note} for r in shown]
    plain = [r.line() for r in shown]
    plain.append(" ".join(f"{k}={v}" for k, v in summary.items()))
    code = EXIT_VERIFY if summary[FAIL] else EXIT_OK
    if not rows:
        rows = [{"claim": "", "expected": "", "provenance": "", "computed": "", "status": "", "note": ""}]
    return _emit(args, payload, rows, plain), code


COMMANDS = {
    "ring": cmd_ring,
    "height": cmd_height,
    "cuplength": cmd_cuplength,
    "zcl": cmd_zcl,
    "bounds": cmd_bounds,
    "cells": cmd_cells,
    "nonzero": cmd_nonzero,
    "monotonicity": cmd_monotonicity,
    "table": cmd_table,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and parse errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"grasstc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"grasstc: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
