"""Command-line interface.

Subcommands: ``tangles`` (rational tangle enumeration), ``montesinos``
(code enumeration), ``identify`` (match codes against a knot table),
``classify`` (full census classification) and ``report`` (census tables
plus figures).  Exit codes: 0 success, 1 usage error, 2 data or parse
error, 3 theorem conflict or data inconsistency.

The knot table path comes from ``--knotinfo`` or the environment
variable ``TUNNELCENSUS_KNOTINFO``.  Expensive identification runs are
cached under ``--cache-dir``, keyed by the run configuration and the
snapshot checksum, so cache hits can never change results.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import knotdb, report as report_mod
from .classify import census_report
from .errors import (
    CensusError,
    DataInconsistencyError,
    TheoremConflictError,
)
from .montesinos import (
    MontesinosInfo,
    enumerate_montesinos_knots,
    format_code,
    is_alternating_knot,
    minimal_crossing_number,
    parse_code,
)
from .ratfrac import enumerate_rational_tangles

__all__ = ["main"]

ENV_KNOTINFO = "TUNNELCENSUS_KNOTINFO"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONFLICT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tunnelcensus",
                     description="Montesinos knot census and tunnel numbers")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, knotinfo=False):
        p.add_argument("--format", choices=("text", "csv", "json"),
                       default="text")
        p.add_argument("--output", type=Path, default=None,
                       help="write here instead of stdout")
        p.add_argument("--cache-dir", type=Path, default=None)
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for identification")
        if knotinfo:
            p.add_argument("--knotinfo", type=Path, default=None,
                           help=f"knot table CSV (default ${ENV_KNOTINFO})")
            p.add_argument("--column", action="append", default=[],
                           metavar="FIELD=HEADER",
                           help="override a knot-table column name")

    p = sub.add_parser("tangles", help="enumerate rational tangle fractions")
    p.add_argument("--crossings", required=True)
    common(p)

    p = sub.add_parser("montesinos", help="enumerate canonical codes")
    p.add_argument("--crossings", required=True)
    p.add_argument("--knots-only", action="store_true",
                   help="keep codes whose minimal crossing number matches")
    common(p, knotinfo=True)

    p = sub.add_parser("identify", help="match enumerated codes to the table")
    p.add_argument("--crossings", required=True)
    common(p, knotinfo=True)

    p = sub.add_parser("classify", help="classify the census")
    p.add_argument("--crossings", default="11,12")
    common(p, knotinfo=True)

    p = sub.add_parser("report", help="census tables and figures")
    p.add_argument("--crossings", default="11,12")
    p.add_argument("--tables", action="store_true",
                   help="emit the census summary tables (default)")
    p.add_argument("--figures-dir", type=Path, default=None,
                   help="figure directory (default: beside the output)")
    common(p, knotinfo=True)
    return parser


def _parse_crossings(text: str) -> list[int]:
    try:
        values = [int(piece) for piece in str(text).split(",") if piece.strip()]
    except ValueError:
        raise SystemExit(EXIT_USAGE)
    if not values or any(not 1 <= v <= 16 for v in values):
        print("crossing numbers must lie in 1..16", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return values


def _column_map(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        field, sep, header = pair.partition("=")
        if not sep or field not in knotdb.DEFAULT_COLUMNS:
            print(f"bad --column override {pair!r}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        out[field] = header
    return out


def _knotinfo_path(args) -> Path | None:
    path = getattr(args, "knotinfo", None)
    if path is None:
        env = os.environ.get(ENV_KNOTINFO)
        path = Path(env) if env else None
    return path


def _load_table(args) -> knotdb.KnotTable:
    path = _knotinfo_path(args)
    if path is None:
        print(f"a knot table is required (--knotinfo or ${ENV_KNOTINFO})",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if not path.exists():
        print(f"knot table not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)
    return knotdb.load_knot_table(path, _column_map(getattr(args, "column", [])))


def _emit(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")


# --- caching ---------------------------------------------------------------

def _cache_fetch(cache_dir: Path | None, key: str):
    if cache_dir is None:
        return None
    path = cache_dir / f"{key}.json"
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def _cache_store(cache_dir: Path | None, key: str, payload) -> None:
    if cache_dir is None:
        return
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"{key}.json"
    path.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def _cache_key(*parts) -> str:
    blob = json.dumps(parts, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


# --- identification --------------------------------------------------------

def _code_invariants(code_text: str):
    """Worker: determinant and canonical Jones of one code's diagram."""
    from .diagram import montesinos_pd
    from .invariants import determinant, jones, mirror_canonical

    pd = montesinos_pd(parse_code(code_text))
    return code_text, determinant(pd), str(mirror_canonical(jones(pd)))


def _census_codes(n: int) -> list[MontesinosInfo]:
    return [info for info in enumerate_montesinos_knots(n)
            if minimal_crossing_number(info.code) == n]


def _identify_census(n: int, table: knotdb.KnotTable, cache_dir, jobs):
    """Identify every n-crossing census code; returns
    ``[(info, MatchResult)]`` in canonical code order."""
    infos = _census_codes(n)
    key = _cache_key("identify", 1, n, table.checksum)
    cached = _cache_fetch(cache_dir, key)
    if cached is not None:
        by_code = {entry["code"]: entry for entry in cached}
        if all(format_code(i.code) in by_code for i in infos):
            return [
                (i, knotdb.MatchResult(
                    tuple(by_code[format_code(i.code)]["names"]),
                    by_code[format_code(i.code)]["reduced"]))
                for i in infos
            ]
    code_texts = [format_code(i.code) for i in infos]
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            computed = pool.map(_code_invariants, code_texts)
    else:
        computed = [_code_invariants(t) for t in code_texts]
    results = []
    for info, (code_text, det, jones_text) in zip(infos, computed):
        poly = knotdb.parse_jones_string(jones_text)
        names = list(table.lookup(det, poly))
        if len(names) > 1:
            # several candidates: rerun with the notation tie-break
            results.append((info, knotdb.identify(info, table)))
            continue
        reduced = False
        if len(names) == 1:
            reduced = table.by_name[names[0]].crossing_number < info.diagram_crossings
        results.append((info, knotdb.MatchResult(tuple(sorted(names)), reduced)))
    payload = [
        {"code": format_code(info.code), "names": list(match.names),
         "reduced": match.reduced_crossing}
        for info, match in results
    ]
    _cache_store(cache_dir, key, payload)
    return results


def _identified_map(crossings, table, cache_dir, jobs):
    """name -> MontesinosInfo for every uniquely identified census code."""
    identified: dict[str, MontesinosInfo] = {}
    unmatched: list[str] = []
    for n in crossings:
        for info, match in _identify_census(n, table, cache_dir, jobs):
            if match.is_unique and not match.reduced_crossing:
                identified.setdefault(match.name, info)
            else:
                unmatched.append(format_code(info.code))
    return identified, unmatched


# --- subcommands -----------------------------------------------------------

def _run_tangles(args) -> int:
    out: list[str] = []
    data = {}
    for n in _parse_crossings(args.crossings):
        fractions = enumerate_rational_tangles(n).fractions
        data[n] = [str(f) for f in fractions]
    if args.format == "json":
        _emit(args, json.dumps({str(k): v for k, v in data.items()},
                               indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        lines = ["crossings,fraction"]
        for n, fracs in data.items():
            lines += [f"{n},{f}" for f in fracs]
        _emit(args, "\n".join(lines) + "\n")
    else:
        for n, fracs in data.items():
            out.append(f"RT({n}): {len(fracs)} fractions")
            out += [f"  {f}" for f in fracs]
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _montesinos_rows(args, n: int, table):
    rows = []
    infos = enumerate_montesinos_knots(n)
    matches = None
    if table is not None:
        by_code = {format_code(i.code): m
                   for i, m in _identify_census(n, table, args.cache_dir,
                                                args.jobs)}
        matches = by_code
    for info in infos:
        minimal = minimal_crossing_number(info.code)
        if args.knots_only and minimal != n:
            continue
        code_text = format_code(info.code)
        row = {
            "code": code_text,
            "r": info.r,
            "clasp": info.is_clasp,
            "alpha": info.alpha_gcd,
            "lackenby_form": info.lackenby_form,
            "diagram_crossings": info.diagram_crossings,
            "min_crossings": minimal,
            "alternating": is_alternating_knot(info.code),
        }
        if matches is not None:
            match = matches.get(code_text)
            row["name"] = match.names[0] if match and match.is_unique else None
        rows.append(row)
    return rows


def _run_montesinos(args) -> int:
    table = None
    if _knotinfo_path(args) is not None:
        table = _load_table(args)
    all_rows = []
    for n in _parse_crossings(args.crossings):
        all_rows += _montesinos_rows(args, n, table)
    if args.format == "json":
        _emit(args, json.dumps(all_rows, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        header = ["code", "r", "clasp", "alpha", "lackenby_form",
                  "diagram_crossings", "min_crossings", "alternating"]
        if table is not None:
            header.append("name")
        import csv as _csv
        import io
        buf = io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in all_rows:
            w.writerow([row[h] for h in header])
        _emit(args, buf.getvalue())
    else:
        lines = [f"{len(all_rows)} codes"]
        for row in all_rows:
            extra = f" -> {row['name']}" if row.get("name") else ""
            lines.append(
                f"  {row['code']}  r={row['r']} clasp={row['clasp']} "
                f"alpha={row['alpha']} min={row['min_crossings']} "
                f"alt={row['alternating']}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _run_identify(args) -> int:
    table = _load_table(args)
    rows = []
    for n in _parse_crossings(args.crossings):
        for info, match in _identify_census(n, table, args.cache_dir, args.jobs):
            rows.append({
                "code": format_code(info.code),
                "crossings": n,
                "names": list(match.names),
                "reduced_crossing": match.reduced_crossing,
            })
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        lines = ["code,crossings,names,reduced_crossing"]
        for row in rows:
            names = "|".join(row["names"])
            lines.append(f"\"{row['code']}\",{row['crossings']},"
                         f"{names},{row['reduced_crossing']}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = []
        for row in rows:
            label = ("?" if not row["names"]
                     else row["names"][0] if len(row["names"]) == 1
                     else "ambiguous: " + " ".join(row["names"]))
            suffix = " (reduced crossing)" if row["reduced_crossing"] else ""
            lines.append(f"{row['code']} -> {label}{suffix}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _build_report(args):
    table = _load_table(args)
    crossings = _parse_crossings(args.crossings)
    identified, unmatched = _identified_map(crossings, table, args.cache_dir,
                                            args.jobs)
    for code_text in unmatched:
        print(f"warning: no unique table match for {code_text}",
              file=sys.stderr)
    return census_report(table, identified)


def _run_classify(args) -> int:
    rep = _build_report(args)
    if args.format == "json":
        _emit(args, report_mod.render_json(rep))
    elif args.format == "csv":
        _emit(args, report_mod.render_csv(rep))
    else:
        _emit(args, report_mod.render_text(rep))
    return EXIT_OK


def _run_report(args) -> int:
    rep = _build_report(args)
    if args.format == "json":
        _emit(args, report_mod.render_json(rep))
    elif args.format == "csv":
        _emit(args, report_mod.render_csv(rep))
    else:
        _emit(args, report_mod.render_text(rep))
    figures_dir = args.figures_dir
    if figures_dir is None:
        figures_dir = (args.output.parent if args.output is not None
                       else Path("."))
    written = report_mod.render_figures(rep, figures_dir)
    for path in written:
        print(f"figure: {path}", file=sys.stderr)
    return EXIT_OK


_RUNNERS = {
    "tangles": _run_tangles,
    "montesinos": _run_montesinos,
    "identify": _run_identify,
    "classify": _run_classify,
    "report": _run_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _RUNNERS[args.subcommand](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (TheoremConflictError, DataInconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except (CensusError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
