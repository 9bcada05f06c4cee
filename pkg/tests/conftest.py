"""Shared fixtures.

The expensive artifacts (the 11-crossing census and its invariants) are
session-scoped so the whole suite pays for them once.  An external knot
table, when available, is taken from $TUNNELCENSUS_KNOTINFO or
data/knotinfo_snapshot.csv; tests that need it skip loudly otherwise.
"""

from __future__ import annotations

import csv
import io
import os
from pathlib import Path

import pytest

from tunnelcensus.diagram import montesinos_pd
from tunnelcensus.invariants import determinant, jones, mirror_canonical
from tunnelcensus.montesinos import (
    enumerate_montesinos_knots,
    format_code,
    is_alternating_knot,
    minimal_crossing_number,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_SNAPSHOT = REPO_ROOT / "data" / "knotinfo_snapshot.csv"


def snapshot_file() -> Path | None:
    env = os.environ.get("TUNNELCENSUS_KNOTINFO")
    if env:
        path = Path(env)
        return path if path.exists() else None
    return DEFAULT_SNAPSHOT if DEFAULT_SNAPSHOT.exists() else None


@pytest.fixture(scope="session")
def snapshot_path():
    path = snapshot_file()
    if path is None:
        pytest.skip("no knot table snapshot (set $TUNNELCENSUS_KNOTINFO or "
                    "run scripts/make_knotinfo_snapshot.py)")
    return path


def census_infos(n: int):
    return [info for info in enumerate_montesinos_knots(n)
            if minimal_crossing_number(info.code) == n]


@pytest.fixture(scope="session")
def census11():
    return census_infos(11)


@pytest.fixture(scope="session")
def census12():
    return census_infos(12)


@pytest.fixture(scope="session")
def census11_invariants(census11):
    """code text -> (determinant, canonical Jones text, alternating)."""
    out = {}
    for info in census11:
        pd = montesinos_pd(info.code)
        out[format_code(info.code)] = (
            determinant(pd),
            str(mirror_canonical(jones(pd))),
            is_alternating_knot(info.code),
        )
    return out


def build_table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=["name", "crossing_number", "alternating", "bridge_index",
                    "determinant", "jones_polynomial", "montesinos_notation"],
        lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


@pytest.fixture(scope="session")
def synthetic11_table_path(census11, census11_invariants, tmp_path_factory):
    """A self-consistent table covering exactly the 11-crossing census
    codes, with synthetic names in canonical code order."""
    rows = []
    for k, info in enumerate(census11):
        code_text = format_code(info.code)
        det, jones_text, alternating = census11_invariants[code_text]
        rows.append({
            "name": f"K11m{k:04d}",
            "crossing_number": 11,
            "alternating": "Y" if alternating else "N",
            "bridge_index": info.r,
            "determinant": det,
            "jones_polynomial": jones_text,
            "montesinos_notation": code_text,
        })
    path = tmp_path_factory.mktemp("table") / "census11.csv"
    path.write_text(build_table_csv(rows), encoding="utf-8")
    return path
