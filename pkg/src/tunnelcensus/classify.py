"""Tunnel-number rule engine and census aggregation.

Each knot record gets an interval verdict ``[low, high]`` for its tunnel
number ``t``, computed by intersecting the intervals of every applicable
rule.  Rules are classical results, applied mechanically:

  R0  (always)                 t <= b - 1 for bridge index b.
  R1  (alternating, iff)       t = 1 exactly when b = 2 or the knot is a
      three-tangle Montesinos knot with one tangle of denominator 2 and
      the remaining denominators odd (Lackenby); otherwise t >= 2.
  R2  (clasp Montesinos)       a single denominator-2 tangle gives
      t <= r - 2 for tangle count r.
  R3  (Montesinos, alpha != 1) gcd of the denominators > 1 forces
      t = r - 1 (Lustig-Moriah).
  R4  (Montesinos)             bridge index must equal the tangle count r
      (Boileau-Zieschang); a mismatch is a data error, not a verdict.

An empty intersection raises a theorem-conflict error naming the rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataInconsistencyError, TheoremConflictError
from .knotdb import KnotRecord, KnotTable
from .montesinos import MontesinosInfo, format_code

__all__ = [
    "TunnelVerdict",
    "CensusRow",
    "CensusReport",
    "classify_knot",
    "census_report",
]


@dataclass(frozen=True)
class TunnelVerdict:
    low: int
    high: int
    trace: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return self.low == self.high


def classify_knot(rec: KnotRecord, mont: MontesinosInfo | None = None) -> TunnelVerdict:
    """Intersect every applicable rule's interval; see the module docstring."""
    b = rec.bridge_index
    trace: list[str] = []
    # (rule id, low, high or None for unbounded)
    intervals: list[tuple[str, int, int | None]] = []

    if mont is not None:
        if b != mont.r:
            raise DataInconsistencyError(
                f"{rec.name}: bridge index {b} != tangle count {mont.r} "
                f"for {format_code(mont.code)} (R4)")
        trace.append(f"R4: bridge index {b} equals tangle count r={mont.r}")

    intervals.append(("R0", 1, b - 1))
    trace.append(f"R0: 1 <= t <= b-1 = {b - 1}")

    if rec.alternating:
        if b == 2:
            intervals.append(("R1", 1, 1))
            trace.append("R1: alternating 2-bridge, so t = 1")
        elif mont is not None and mont.lackenby_form:
            intervals.append(("R1", 1, 1))
            trace.append("R1: alternating with r=3, one denominator-2 tangle "
                         "and odd remaining denominators, so t = 1")
        else:
            intervals.append(("R1", 2, None))
            trace.append("R1: alternating without a tunnel-one form, so t >= 2")

    if mont is not None:
        if mont.is_clasp:
            intervals.append(("R2", 1, mont.r - 2))
            trace.append(f"R2: clasp tangle gives t <= r-2 = {mont.r - 2}")
        if mont.alpha_gcd != 1:
            intervals.append(("R3", mont.r - 1, mont.r - 1))
            trace.append(f"R3: alpha = {mont.alpha_gcd} != 1 forces "
                         f"t = r-1 = {mont.r - 1}")

    low = max(iv[1] for iv in intervals)
    highs = [iv[2] for iv in intervals if iv[2] is not None]
    high = min(highs)
    if low > high:
        low_rule = max(intervals, key=lambda iv: iv[1])[0]
        high_rule = min((iv for iv in intervals if iv[2] is not None),
                        key=lambda iv: iv[2])[0]
        raise TheoremConflictError(
            f"{rec.name}: {low_rule} forces t >= {low} but {high_rule} "
            f"forces t <= {high}")
    return TunnelVerdict(low, high, tuple(trace))


@dataclass(frozen=True)
class CensusRow:
    """One classified knot, flattened for reporting."""

    name: str
    crossing_number: int
    alternating: bool
    bridge_index: int
    code: str | None          # canonical Montesinos rendering, or None
    r: int | None
    is_clasp: bool | None
    alpha_gcd: int | None
    t_low: int
    t_high: int
    trace: tuple[str, ...]
    flags: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.t_low == self.t_high

    @property
    def montesinos(self) -> bool:
        return self.code is not None


@dataclass(frozen=True)
class CensusReport:
    """All classified census rows plus aggregate views."""

    rows: tuple[CensusRow, ...]
    snapshot_checksum: str

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def exact_total(self) -> int:
        return sum(1 for row in self.rows if row.exact)

    def select(self, crossing_number=None, alternating=None):
        out = self.rows
        if crossing_number is not None:
            out = tuple(r for r in out if r.crossing_number == crossing_number)
        if alternating is not None:
            out = tuple(r for r in out if r.alternating == alternating)
        return out

    def verdict_totals(self, crossing_number=None, alternating=None):
        """Counts keyed by (t_low, t_high), sorted."""
        counts: dict[tuple[int, int], int] = {}
        for row in self.select(crossing_number, alternating):
            key = (row.t_low, row.t_high)
            counts[key] = counts.get(key, 0) + 1
        return dict(sorted(counts.items()))

    def montesinos_count(self, crossing_number=None, alternating=None) -> int:
        return sum(1 for r in self.select(crossing_number, alternating)
                   if r.montesinos)

    def cell_counts(self, crossing_number, alternating):
        """Structural cells of one table block.

        Keys: '2-bridge', 'mont3-clasp', 'mont3-other-alpha1',
        'mont3-other-alphane1', 'mont4-clasp', 'mont4-other',
        'non-mont-3', 'non-mont-4'.
        """
        cells = {k: 0 for k in (
            "2-bridge", "mont3-clasp", "mont3-other-alpha1",
            "mont3-other-alphane1", "mont4-clasp", "mont4-other",
            "non-mont-3", "non-mont-4")}
        for row in self.select(crossing_number, alternating):
            if row.bridge_index == 2:
                cells["2-bridge"] += 1
            elif not row.montesinos:
                key = "non-mont-3" if row.bridge_index == 3 else "non-mont-4"
                cells[key] += 1
            elif row.r == 3:
                if row.is_clasp:
                    cells["mont3-clasp"] += 1
                elif row.alpha_gcd == 1:
                    cells["mont3-other-alpha1"] += 1
                else:
                    cells["mont3-other-alphane1"] += 1
            else:
                key = "mont4-clasp" if row.is_clasp else "mont4-other"
                cells[key] += 1
        return cells


def _row_flags(rec: KnotRecord, mont: MontesinosInfo | None) -> tuple[str, ...]:
    flags: list[str] = []
    if mont is not None and not rec.alternating and mont.is_clasp and mont.r == 3:
        odd = all(f.denominator % 2 == 1
                  for f in mont.code.tangles if f.denominator != 2)
        if not odd:
            # the clasp bound alone fixes t = 1; this marks rows where the
            # stronger odd-denominator hypothesis happens to fail
            flags.append("clasp-r3-even-denominator")
    return tuple(flags)


def census_report(table: KnotTable, identified: dict[str, MontesinosInfo]) -> CensusReport:
    """Classify every census record of ``table``.

    ``identified`` maps knot names to the Montesinos code matched to them
    during identification; all other names classify on bridge data alone.
    Classification errors propagate with the offending knot name attached
    (classify_knot already includes it).
    """
    rows: list[CensusRow] = []
    for rec in sorted(table.census_records, key=lambda r: r.name):
        mont = identified.get(rec.name)
        verdict = classify_knot(rec, mont)
        rows.append(CensusRow(
            name=rec.name,
            crossing_number=rec.crossing_number,
            alternating=rec.alternating,
            bridge_index=rec.bridge_index,
            code=format_code(mont.code) if mont else None,
            r=mont.r if mont else None,
            is_clasp=mont.is_clasp if mont else None,
            alpha_gcd=mont.alpha_gcd if mont else None,
            t_low=verdict.low,
            t_high=verdict.high,
            trace=verdict.trace,
            flags=_row_flags(rec, mont),
        ))
    return CensusReport(tuple(rows), table.checksum)
