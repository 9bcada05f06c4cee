"""Rendering of census reports: aligned text, CSV, JSON and figures.

All renderers are deterministic for a fixed report: rows come in name
order from the classifier, dictionary keys are sorted, and no timestamps
are emitted.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .classify import CensusReport

__all__ = [
    "render_text",
    "render_csv",
    "render_json",
    "render_figures",
    "CSV_HEADER",
]

CSV_HEADER = ("name", "crossings", "alternating", "bridge", "code",
              "clasp", "alpha", "t_low", "t_high", "trace")

_CELL_LABELS = (
    ("2-bridge", "2-bridge"),
    ("mont3-clasp", "Montesinos r=3, clasp"),
    ("mont3-other-alpha1", "Montesinos r=3, non-clasp, alpha=1"),
    ("mont3-other-alphane1", "Montesinos r=3, non-clasp, alpha>1"),
    ("mont4-clasp", "Montesinos r=4, clasp"),
    ("mont4-other", "Montesinos r=4, non-clasp"),
    ("non-mont-3", "non-Montesinos, 3-bridge"),
    ("non-mont-4", "non-Montesinos, 4-bridge"),
)


def _verdict_label(low: int, high: int) -> str:
    return f"t={low}" if low == high else f"t in [{low},{high}]"


def _align(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [r[i].ljust(widths[i]) for i in range(len(r))]
        out.append("  ".join(cells).rstrip())
    return out


def render_text(report: CensusReport) -> str:
    """Aligned-text census summary, one block per (parity, crossings)."""
    lines: list[str] = []
    lines.append(f"census: {report.total} knots, "
                 f"{report.exact_total} exact tunnel numbers")
    lines.append(f"snapshot checksum: {report.snapshot_checksum}")
    for alternating in (True, False):
        for crossings in (11, 12):
            rows = report.select(crossings, alternating)
            if not rows:
                continue
            parity = "alternating" if alternating else "non-alternating"
            lines.append("")
            lines.append(f"{parity}, {crossings} crossings "
                         f"({len(rows)} knots, "
                         f"{report.montesinos_count(crossings, alternating)} Montesinos)")
            cells = report.cell_counts(crossings, alternating)
            table = [("class", "count")]
            table += [(label, str(cells[key]))
                      for key, label in _CELL_LABELS if cells[key]]
            verdicts = report.verdict_totals(crossings, alternating)
            table += [(_verdict_label(*key), str(count))
                      for key, count in verdicts.items()]
            lines.extend("  " + line for line in _align(table))
    flagged = [row for row in report.rows if row.flags]
    if flagged:
        lines.append("")
        lines.append("flagged rows:")
        for row in flagged:
            lines.append(f"  {row.name}: {', '.join(row.flags)}")
    return "\n".join(lines) + "\n"


def _csv_cells(row) -> tuple[str, ...]:
    return (
        row.name,
        str(row.crossing_number),
        "Y" if row.alternating else "N",
        str(row.bridge_index),
        row.code or "-",
        {True: "Y", False: "N", None: "-"}[row.is_clasp],
        "-" if row.alpha_gcd is None else str(row.alpha_gcd),
        str(row.t_low),
        str(row.t_high),
        "; ".join(row.trace),
    )


def render_csv(report: CensusReport) -> str:
    """One CSV row per knot, in name order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow(_csv_cells(row))
    return buf.getvalue()


def render_json(report: CensusReport) -> str:
    """JSON document with the same per-row schema as the CSV plus totals."""
    doc = {
        "snapshot_checksum": report.snapshot_checksum,
        "total": report.total,
        "exact_total": report.exact_total,
        "rows": [
            {
                "name": row.name,
                "crossings": row.crossing_number,
                "alternating": row.alternating,
                "bridge": row.bridge_index,
                "code": row.code,
                "clasp": row.is_clasp,
                "alpha": row.alpha_gcd,
                "t_low": row.t_low,
                "t_high": row.t_high,
                "trace": list(row.trace),
                "flags": list(row.flags),
            }
            for row in report.rows
        ],
        "verdict_totals": [
            {
                "crossings": crossings,
                "alternating": alternating,
                "totals": {
                    _verdict_label(*key): count
                    for key, count in report.verdict_totals(
                        crossings, alternating).items()
                },
            }
            for alternating in (True, False)
            for crossings in (11, 12)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_figures(report: CensusReport, out_dir) -> list[Path]:
    """Write one verdict-distribution bar chart per parity class.

    Returns the written paths (PNG files in ``out_dir``).
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for alternating, stem in ((True, "alternating"), (False, "nonalternating")):
        data = {
            crossings: report.verdict_totals(crossings, alternating)
            for crossings in (11, 12)
        }
        labels = sorted({key for totals in data.values() for key in totals})
        if not labels:
            continue
        fig, ax = plt.subplots(figsize=(7, 4))
        width = 0.38
        for offset, (crossings, totals) in zip((-width / 2, width / 2),
                                               sorted(data.items())):
            xs = [i + offset for i in range(len(labels))]
            ys = [totals.get(key, 0) for key in labels]
            bars = ax.bar(xs, ys, width=width, label=f"{crossings} crossings")
            ax.bar_label(bars, padding=2, fontsize=8)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels([_verdict_label(*key) for key in labels])
        ax.set_ylabel("knots")
        parity = "alternating" if alternating else "non-alternating"
        ax.set_title(f"tunnel-number verdicts, {parity} knots")
        ax.legend()
        fig.tight_layout()
        path = out_dir / f"census_{stem}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
