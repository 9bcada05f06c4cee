"""CLI behavior: formats, exit codes, caching, determinism.

The heavier flows run against the synthetic 11-crossing table fixture
with a shared cache directory, so identification invariants are computed
once per session.
"""

import json

import pytest

from tunnelcensus.cli import main


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("clicache")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- tangles ---------------------------------------------------------------

def test_tangles_json(capsys):
    code, out, _ = run(capsys, "tangles", "--crossings", "3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["3"]) == 8
    assert "3/2" in data["3"]


def test_tangles_text_and_csv(capsys):
    code, out, _ = run(capsys, "tangles", "--crossings", "2")
    assert code == 0 and "RT(2): 4 fractions" in out
    code, out, _ = run(capsys, "tangles", "--crossings", "2",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "crossings,fraction"
    assert len(out.splitlines()) == 5


# --- exit codes ------------------------------------------------------------

def test_usage_errors_exit_one(capsys):
    assert run(capsys, "tangles", "--crossings", "0")[0] == 1
    assert run(capsys, "tangles", "--crossings", "nope")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "tangles")[0] == 1  # missing required flag
    assert run(capsys, "identify", "--crossings", "8")[0] == 1  # no table


def test_missing_table_file_exits_two(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("TUNNELCENSUS_KNOTINFO", raising=False)
    code, _, err = run(capsys, "identify", "--crossings", "8",
                       "--knotinfo", str(tmp_path / "absent.csv"))
    assert code == 2
    assert "not found" in err


def test_malformed_table_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("name\nfoo\n", encoding="utf-8")
    code, _, err = run(capsys, "identify", "--crossings", "8",
                       "--knotinfo", str(bad))
    assert code == 2
    assert "missing column" in err


# --- montesinos ------------------------------------------------------------

def test_montesinos_enumeration_output(capsys):
    code, out, _ = run(capsys, "montesinos", "--crossings", "9",
                       "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows and all(row["code"].startswith("M(") for row in rows)
    knots = [row for row in rows if row["min_crossings"] == 9]
    code, out, _ = run(capsys, "montesinos", "--crossings", "9",
                       "--knots-only", "--format", "json")
    assert code == 0
    assert json.loads(out) == knots


# --- identification + classification on the synthetic table ----------------

def test_identify_census11(capsys, synthetic11_table_path, cache_dir):
    code, out, _ = run(capsys, "identify", "--crossings", "11",
                       "--knotinfo", str(synthetic11_table_path),
                       "--cache-dir", str(cache_dir), "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 164
    assert all(len(row["names"]) == 1 for row in rows)
    assert not any(row["reduced_crossing"] for row in rows)


def test_classify_census11_deterministic(capsys, synthetic11_table_path,
                                         cache_dir, tmp_path):
    argv = ["classify", "--crossings", "11",
            "--knotinfo", str(synthetic11_table_path),
            "--cache-dir", str(cache_dir), "--format", "csv"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert code == 0
    assert first == second  # cache hits never change output bytes
    import csv
    import io
    rows = list(csv.reader(io.StringIO(first)))
    assert len(rows) == 165
    exact = sum(1 for row in rows[1:] if row[7] == row[8])
    assert exact == 129  # 54 + 43 alternating + 32 non-alternating clasp


def test_report_writes_figures(capsys, synthetic11_table_path, cache_dir,
                               tmp_path):
    out_file = tmp_path / "census.txt"
    code, _, err = run(capsys, "report", "--crossings", "11", "--tables",
                       "--knotinfo", str(synthetic11_table_path),
                       "--cache-dir", str(cache_dir),
                       "--output", str(out_file))
    assert code == 0
    text = out_file.read_text(encoding="utf-8")
    assert "census: 164 knots, 129 exact tunnel numbers" in text
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert pngs == ["census_alternating.png", "census_nonalternating.png"]
    assert "figure:" in err
