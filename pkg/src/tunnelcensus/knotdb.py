"""Knot-table ingestion and invariant-based identification.

A knot table is a CSV snapshot of a reference knot database: one row per
knot with name, crossing number, alternating flag, bridge index,
determinant, Jones polynomial and (optionally) a Montesinos notation
string.  Enumerated Montesinos codes are identified against the table by
the pair (determinant, mirror-canonical Jones), with the notation column
as a tie-break for mutant knots that share both invariants.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field

from .errors import CensusError, PolynomialSyntaxError, TableError
from .diagram import montesinos_pd
from .invariants import LaurentPolynomial, determinant, jones, mirror_canonical
from .montesinos import MontesinosInfo, canonicalize, parse_code

__all__ = [
    "KnotRecord",
    "KnotTable",
    "MatchResult",
    "DEFAULT_COLUMNS",
    "parse_jones_string",
    "load_knot_table",
    "identify",
]

# logical field -> default CSV header
DEFAULT_COLUMNS = {
    "name": "name",
    "crossing_number": "crossing_number",
    "alternating": "alternating",
    "bridge_index": "bridge_index",
    "determinant": "determinant",
    "jones": "jones_polynomial",
    "montesinos_notation": "montesinos_notation",
}

_TRUE = {"y", "yes", "true", "1", "alternating"}
_FALSE = {"n", "no", "false", "0", "nonalternating", "non-alternating"}

# rows at these crossing numbers form the census proper
CENSUS_CROSSINGS = (11, 12)
CENSUS_SIZE = 2728
CENSUS_BRIDGE_RANGE = (2, 4)

_MINUS = "-−"  # ASCII hyphen and Unicode minus


def parse_jones_string(s: str, var: str = "t") -> LaurentPolynomial:
    """Parse ``[sign] term {(+|-) term}`` with ``term := int | [int [*]] var
    [^ [(] int [)]]``; whitespace is ignored.  Errors carry the offset."""
    i, n = 0, len(s)

    def skip_ws():
        nonlocal i
        while i < n and s[i].isspace():
            i += 1

    def read_uint() -> int:
        nonlocal i
        start = i
        while i < n and s[i].isdigit():
            i += 1
        if i == start:
            raise PolynomialSyntaxError("expected an integer", start)
        return int(s[start:i])

    def read_sign(required: bool) -> int:
        nonlocal i
        if i < n and (s[i] == "+" or s[i] in _MINUS):
            sign = -1 if s[i] in _MINUS else 1
            i += 1
            skip_ws()
            return sign
        if required:
            raise PolynomialSyntaxError("expected '+' or '-'", i)
        return 1

    coeffs: dict[int, int] = {}
    skip_ws()
    if i >= n:
        raise PolynomialSyntaxError("empty polynomial", i)
    first = True
    while i < n:
        sign = read_sign(required=not first)
        coef = None
        starred = False
        if i < n and s[i].isdigit():
            coef = read_uint()
            skip_ws()
            if i < n and s[i] == "*":
                starred = True
                i += 1
                skip_ws()
        if starred and (i >= n or s[i] != var):
            raise PolynomialSyntaxError(f"expected {var!r} after '*'", i)
        exp = 0
        if i < n and s[i] == var:
            i += 1
            exp = 1
            if coef is None:
                coef = 1
            skip_ws()
            if i < n and s[i] == "^":
                i += 1
                skip_ws()
                paren = i < n and s[i] == "("
                if paren:
                    i += 1
                    skip_ws()
                esign = read_sign(required=False)
                exp = esign * read_uint()
                skip_ws()
                if paren:
                    if i >= n or s[i] != ")":
                        raise PolynomialSyntaxError("expected ')'", i)
                    i += 1
        elif coef is None:
            raise PolynomialSyntaxError("expected a term", i)
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
        first = False
        skip_ws()
    return LaurentPolynomial(coeffs, var)


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    alternating: bool
    bridge_index: int
    determinant: int
    jones: LaurentPolynomial  # mirror-canonicalized
    montesinos_notation: str | None = None

    @property
    def in_census(self) -> bool:
        return self.crossing_number in CENSUS_CROSSINGS


def _invariant_key(det: int, poly: LaurentPolynomial):
    return (det, tuple(poly.terms()))


@dataclass(frozen=True)
class KnotTable:
    """Immutable snapshot: records indexed by name and by invariant pair."""

    records: tuple[KnotRecord, ...]
    checksum: str
    warnings: tuple[str, ...] = ()
    by_name: dict = field(default_factory=dict, repr=False, compare=False)
    by_invariants: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.by_name.clear()
        self.by_invariants.clear()
        for rec in self.records:
            self.by_name[rec.name] = rec
            key = _invariant_key(rec.determinant, rec.jones)
            self.by_invariants.setdefault(key, []).append(rec.name)
        for names in self.by_invariants.values():
            names.sort()

    @property
    def census_records(self) -> tuple[KnotRecord, ...]:
        return tuple(r for r in self.records if r.in_census)

    @property
    def census_complete(self) -> bool:
        return len(self.census_records) == CENSUS_SIZE

    def lookup(self, det: int, poly: LaurentPolynomial) -> tuple[str, ...]:
        return tuple(self.by_invariants.get(_invariant_key(det, poly), ()))


def _parse_bool(text: str, row: int, what: str) -> bool:
    low = text.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise TableError(f"unreadable {what} flag {text!r}", row=row)


def _parse_int(text: str, row: int, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise TableError(f"unreadable {what} {text!r}", row=row) from None


def load_knot_table(path, columns: dict | None = None) -> KnotTable:
    """Read a CSV snapshot.  ``columns`` overrides entries of
    ``DEFAULT_COLUMNS`` mapping logical fields to CSV headers.

    The notation column is optional; every other configured column must
    exist.  Each row's Jones string is parsed exactly and
    mirror-canonicalized; a stored determinant that differs from the
    Jones evaluation at -1 is recorded as a warning, as are rows outside
    the census crossing range and census rows with an out-of-range
    bridge index.
    """
    cols = dict(DEFAULT_COLUMNS)
    cols.update(columns or {})
    with open(path, "rb") as fh:
        raw = fh.read()
    checksum = hashlib.sha256(raw).hexdigest()
    text = raw.decode("utf-8")
    reader = csv.DictReader(text.splitlines())
    header = reader.fieldnames or []
    required = ("name", "crossing_number", "alternating", "bridge_index",
                "determinant", "jones")
    for logical in required:
        if cols[logical] not in header:
            raise TableError(f"missing column {cols[logical]!r} (for {logical})")
    has_notation = cols["montesinos_notation"] in header

    records: list[KnotRecord] = []
    warnings: list[str] = []
    seen: set[str] = set()
    for rownum, row in enumerate(reader, start=2):  # 1 is the header line
        name = (row[cols["name"]] or "").strip()
        if not name:
            raise TableError("empty knot name", row=rownum)
        if name in seen:
            raise TableError(f"duplicate knot name {name!r}", row=rownum)
        seen.add(name)
        crossing = _parse_int(row[cols["crossing_number"]], rownum, "crossing number")
        alternating = _parse_bool(row[cols["alternating"]], rownum, "alternating")
        bridge = _parse_int(row[cols["bridge_index"]], rownum, "bridge index")
        det = _parse_int(row[cols["determinant"]], rownum, "determinant")
        if det <= 0:
            raise TableError(f"determinant must be positive, got {det}", row=rownum)
        jones_text = row[cols["jones"]] or ""
        try:
            poly = mirror_canonical(parse_jones_string(jones_text))
        except PolynomialSyntaxError as exc:
            raise TableError(f"bad Jones polynomial for {name}: {exc}", row=rownum) from exc
        notation = None
        if has_notation:
            notation = (row[cols["montesinos_notation"]] or "").strip() or None
        rec = KnotRecord(name, crossing, alternating, bridge, det, poly, notation)
        if abs(poly.eval_at_minus_one()) != det:
            warnings.append(
                f"row {rownum}: {name}: stored determinant {det} != "
                f"|Jones(-1)| = {abs(poly.eval_at_minus_one())}")
        if not rec.in_census:
            warnings.append(f"row {rownum}: {name}: crossing number {crossing} "
                            f"outside the census range")
        elif not (CENSUS_BRIDGE_RANGE[0] <= bridge <= CENSUS_BRIDGE_RANGE[1]):
            warnings.append(f"row {rownum}: {name}: bridge index {bridge} "
                            f"outside {CENSUS_BRIDGE_RANGE}")
        records.append(rec)
    table = KnotTable(tuple(records), checksum, tuple(warnings))
    if not table.census_complete:
        table = KnotTable(
            tuple(records), checksum,
            tuple(warnings) + (
                f"census incomplete: {len(table.census_records)} rows at "
                f"crossings {CENSUS_CROSSINGS}, expected {CENSUS_SIZE}",))
    return table


@dataclass(frozen=True)
class MatchResult:
    """Outcome of identifying one code: no, one, or several candidates."""

    names: tuple[str, ...]
    reduced_crossing: bool = False

    @property
    def is_none(self) -> bool:
        return not self.names

    @property
    def is_unique(self) -> bool:
        return len(self.names) == 1

    @property
    def is_ambiguous(self) -> bool:
        return len(self.names) >= 2

    @property
    def name(self) -> str:
        if not self.is_unique:
            raise ValueError(f"no unique match in {self.names!r}")
        return self.names[0]


def identify(info: MontesinosInfo, table: KnotTable) -> MatchResult:
    """Match a canonical code to a table row.

    The candidate set is every row sharing (determinant, mirror-canonical
    Jones) with the code's diagram.  When several candidates carry a
    Montesinos notation, candidates whose notation canonicalizes to the
    code win the tie-break.  A unique match whose table crossing number
    is below the enumerated diagram's crossing count is flagged as
    reduced-crossing.
    """
    pd = montesinos_pd(info.code)
    det = determinant(pd)
    poly = mirror_canonical(jones(pd))
    names = list(table.lookup(det, poly))
    if len(names) > 1:
        target = canonicalize(info.code)
        matching = []
        for nm in names:
            notation = table.by_name[nm].montesinos_notation
            if not notation:
                continue
            try:
                candidate = canonicalize(parse_code(notation))
            except (CensusError, ValueError):
                continue  # unreadable notation cannot decide the tie
            if candidate == target:
                matching.append(nm)
        if len(matching) == 1:
            names = matching
    reduced = False
    if len(names) == 1:
        rec = table.by_name[names[0]]
        reduced = rec.crossing_number < info.diagram_crossings
    return MatchResult(tuple(sorted(names)), reduced)
