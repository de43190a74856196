import csv
import json

import pytest

from barocorr.cli import build_parser, main
from barocorr.ingest import load_dataset
from barocorr.variation import delta_series, window_variation_report

SUBCOMMANDS = [
    "correlogram",
    "seasonal-adjust",
    "scatter",
    "mobile-corr",
    "peaks",
    "patterns",
    "daily-variation",
    "spectrum",
    "find-correlations",
    "synth",
]


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_help_exits_zero(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    assert "--out-dir" in text and "default" in text


def test_parser_defaults():
    p = build_parser()
    a = p.parse_args(["find-correlations"])
    assert (a.peak_w, a.peak_f, a.threshold, a.max_lag) == (7, 1.0, 0.2, 7)
    assert p.parse_args(["correlogram"]).max_lag == 10
    assert p.parse_args(["daily-variation"]).lengths == [2, 3, 4, 5, 6, 7]
    assert p.parse_args(["patterns", "--pattern", "1,0,-1"]).pattern == [(1, 0, -1)]


def test_mobile_corr_grid(synth_dir, tmp_path):
    assert main(["mobile-corr", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path)]) == 0
    rows = _rows(tmp_path / "mobile_corr.csv")
    assert list(rows[0]) == ["window", "pearson_r", "pearson_p", "spearman_rho", "spearman_p"]
    assert [r["window"] for r in rows] == ["7", "30", "120", "365"]


def test_daily_variation_grid_matches_module(synth_dir, tmp_path):
    assert main(["daily-variation", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path), "--lengths", "2..7"]) == 0
    rows = _rows(tmp_path / "variation_grid.csv")
    assert len(rows) == 6
    ds = load_dataset(synth_dir)
    deltas = delta_series(ds.semi_hourly_pressure)
    for r in rows:
        rep = window_variation_report(deltas, ds.hospitalizations, int(r["interval_days"]))
        assert float(r["pct_increase_ge2"]) == rep.pct_increase_ge2
        assert float(r["overall_mean"]) == rep.overall_mean


def test_find_correlations_json(synth_dir, tmp_path):
    code = main(["find-correlations", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path), "--format", "json",
                 "--sources", "pressure", "--max-lag", "2"])
    assert code == 0
    rep = json.loads((tmp_path / "findings_report.json").read_text())
    # raw + 7 variations + lags 0..2 + the two patterns that occur; (1,-1,1) never does
    assert rep["candidates_enumerated"] == 1 + 7 + 3 + 2
    assert rep["threshold"] == 0.2 and isinstance(rep["relevant"], bool)
    ranked = json.loads((tmp_path / "findings.json").read_text())
    assert ranked[0]["rank"] == 1


def test_date_filter(synth_dir, tmp_path):
    assert main(["seasonal-adjust", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path),
                 "--from", "2016-01-01", "--to", "2016-12-31", "--window", "30", "--series", "pressure"]) == 0
    rows = _rows(tmp_path / "seasonal_pressure_30.csv")
    assert rows[0]["date"] == "2016-01-30" and rows[-1]["date"] == "2016-12-31"


def test_synth_twice_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["synth", "--seed", "42", "--days", "60", "--out-dir", str(a)]) == 0
    assert main(["synth", "--seed", "42", "--days", "60", "--out-dir", str(b)]) == 0
    for f in a.iterdir():
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_error_prefixes(synth_dir, tmp_path, capsys):
    assert main(["peaks", "--input-dir", str(tmp_path / "missing"), "--out-dir", str(tmp_path)]) == 3
    assert capsys.readouterr().err.startswith("E_INGEST: ")
    assert main(["peaks", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path), "--series", "nope"]) == 2
    assert capsys.readouterr().err.startswith("E_CONFIG: ")
    assert main(["correlogram", "--input-dir", str(synth_dir), "--out-dir", str(tmp_path),
                 "--from", "2016-01-01", "--to", "2016-01-05"]) == 4
    err = capsys.readouterr().err
    assert err.startswith("E_STATS: ") and err.count("\n") == 1
