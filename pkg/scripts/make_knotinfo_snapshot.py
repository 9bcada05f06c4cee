#!/usr/bin/env python3
"""Build the pinned knot-table CSV snapshot from the KnotInfo database.

Requires the ``database_knotinfo`` package, which is NOT part of this
project's dependencies (it bundles the full database and is only needed
to regenerate the snapshot):

    pip install database_knotinfo
    python3 scripts/make_knotinfo_snapshot.py --output data/knotinfo_snapshot.csv

The snapshot keeps every knot up to 12 crossings (knots below 11
crossings let identification detect enumerated diagrams that reduce to a
smaller knot).  Headers are normalized to the loader's defaults; the
Jones polynomial is re-parsed and re-serialized so that it round-trips
bit-exactly through ``tunnelcensus.knotdb.parse_jones_string``.  The
source package version and the output checksum are written to a
``.version`` sidecar for provenance.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import sys
from pathlib import Path

FIELDS = ("name", "crossing_number", "alternating", "bridge_index",
          "determinant", "jones_polynomial", "montesinos_notation")

# KnotInfo column names, as exposed by database_knotinfo
SOURCE_KEYS = {
    "name": "name",
    "crossing_number": "crossing_number",
    "alternating": "alternating",
    "bridge_index": "bridge_index",
    "determinant": "determinant",
    "jones_polynomial": "jones_polynomial",
    "montesinos_notation": "montesinos_notation",
}

MAX_CROSSINGS = 12


def _normalize_jones(text: str) -> str:
    from tunnelcensus.knotdb import parse_jones_string
    from tunnelcensus.invariants import mirror_canonical

    try:
        poly = parse_jones_string(text)
    except Exception:
        # fall back to sympy for source formats outside the plain grammar
        import sympy

        t = sympy.Symbol("t")
        expr = sympy.sympify(text.replace("^", "**"), locals={"t": t})
        poly_dict = sympy.Poly(sympy.expand(expr * t ** 64), t).as_dict()
        from tunnelcensus.invariants import LaurentPolynomial

        poly = LaurentPolynomial(
            {exp[0] - 64: int(coef) for exp, coef in poly_dict.items()})
    return str(mirror_canonical(poly))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", type=Path,
                        default=Path("data/knotinfo_snapshot.csv"))
    parser.add_argument("--list-keys", action="store_true",
                        help="print the source column names and exit")
    args = parser.parse_args(argv)

    try:
        import database_knotinfo
    except ImportError:
        print("error: the database_knotinfo package is required; "
              "pip install database_knotinfo", file=sys.stderr)
        return 1

    knots = database_knotinfo.link_list()
    # first entries describe the columns rather than knots
    header_rows = [row for row in knots[:2] if "name" not in row
                   or not str(row.get("crossing_number", "")).strip().isdigit()]
    records = knots[len(header_rows):]
    if args.list_keys:
        print("\n".join(sorted(records[0].keys())))
        return 0

    rows = []
    for rec in records:
        crossing = int(rec[SOURCE_KEYS["crossing_number"]])
        if crossing > MAX_CROSSINGS:
            continue
        rows.append({
            "name": rec[SOURCE_KEYS["name"]].strip(),
            "crossing_number": crossing,
            "alternating": rec[SOURCE_KEYS["alternating"]].strip() or "N",
            "bridge_index": int(rec[SOURCE_KEYS["bridge_index"]]),
            "determinant": int(rec[SOURCE_KEYS["determinant"]]),
            "jones_polynomial":
                _normalize_jones(rec[SOURCE_KEYS["jones_polynomial"]]),
            "montesinos_notation":
                (rec.get(SOURCE_KEYS["montesinos_notation"]) or "").strip(),
        })
    rows.sort(key=lambda r: (r["crossing_number"], r["name"]))

    args.output.parent.mkdir(parents=True, exist_ok=True)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    checksum = hashlib.sha256(args.output.read_bytes()).hexdigest()
    version = getattr(database_knotinfo, "__version__", "unknown")
    sidecar = args.output.with_suffix(".version")
    sidecar.write_text(
        f"database_knotinfo=={version}\nsha256={checksum}\nrows={len(rows)}\n",
        encoding="utf-8")
    print(f"wrote {len(rows)} rows to {args.output} (sha256 {checksum})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
