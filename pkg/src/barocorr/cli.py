"""Command-line interface.

Every subcommand reads the standard dataset files from ``--input-dir``
(except ``synth``, which writes them) and writes its tables and figures to
``--out-dir``. Failures print one line ``<CODE>: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import plotting
from .autocorr import correlogram
from .errors import BarocorrError, ConfigError
from .finder import WEATHER_SOURCES, FinderConfig, align, enumerate_candidates, run_finder, _transform
from .ingest import load_dataset
from .peaks import DEFAULT_PATTERNS, PeakParams, detect_peaks, pattern_series, window_stats
from .series import HALF_HOUR, TimeSeries, expand_to_subdaily, mobile_mean, normalise, variation_series
from .spectral import dft_magnitude, zero_dc
from .stats import correlate
from .synth import SynthConfig, generate, write_dataset
from .variation import bubble_table, delta_series, variation_grid, window_variation_report

log = logging.getLogger("barocorr")

EXIT_CODES = {"E_CONFIG": 2, "E_INGEST": 3, "E_STATS": 4}
MOBILE_WINDOWS = (7, 30, 120, 365)


# -- argument parsing helpers --------------------------------------------------


def _date(text):
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {text!r}") from None


def _int_list(text):
    """'2..7' or '2,3,5' -> list of ints."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a..b' or a comma list, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError(f"empty list: {text!r}")
    return vals


def _pattern(text):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"pattern must be comma-separated -1/0/1, got {text!r}") from None
    if not vals or any(v not in (-1, 0, 1) for v in vals):
        raise argparse.ArgumentTypeError(f"pattern must be comma-separated -1/0/1, got {text!r}")
    return vals


# -- output helpers ------------------------------------------------------------


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and not np.isfinite(v):
        return None
    return v


class Output:
    def __init__(self, out_dir, formats):
        self.dir = Path(out_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.formats = set(formats or ["csv"])
        self.written: list[Path] = []

    @property
    def plots(self) -> bool:
        return "plot" in self.formats

    def table(self, name, header, rows):
        rows = [list(r) for r in rows]
        if "csv" in self.formats:
            p = self.dir / f"{name}.csv"
            with p.open("w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows([_cell(v) for v in r] for r in rows)
            self.written.append(p)
        if "json" in self.formats:
            p = self.dir / f"{name}.json"
            recs = [{h: _jsonable(v) for h, v in zip(header, r)} for r in rows]
            p.write_text(json.dumps(recs, indent=2) + "\n", encoding="utf-8")
            self.written.append(p)

    def document(self, name, obj):
        if "json" in self.formats:
            p = self.dir / f"{name}.json"
            p.write_text(json.dumps(obj, indent=2, default=_jsonable) + "\n", encoding="utf-8")
            self.written.append(p)

    def plot(self, fn, name, *args, **kw):
        if self.plots:
            self.written.append(fn(self.dir / f"{name}.svg", *args, **kw))


def _dataset(args, semi_hourly=False):
    ds = load_dataset(args.input_dir, semi_hourly=semi_hourly, fill_incomplete=getattr(args, "fill_incomplete", False))
    if args.date_from or args.date_to:
        ds = ds.restrict(args.date_from, args.date_to)
    return ds


def _pick(ds, name) -> TimeSeries:
    if name in ("hospitalizations", "hosp"):
        return ds.hospitalizations
    if name not in ds.weather:
        raise ConfigError(f"unknown series {name!r}; choose from hospitalizations, {', '.join(ds.weather)}")
    return ds.weather[name]


def _series_rows(s: TimeSeries):
    dates = s.dates or list(range(len(s)))
    return [(d.isoformat() if isinstance(d, dt.date) else d, v) for d, v in zip(dates, s.values.tolist())]


def _corr_cells(r):
    return [r.pearson_r, r.pearson_p, r.spearman_rho, r.spearman_p, r.n]


CORR_HEADER = ["pearson_r", "pearson_p", "spearman_rho", "spearman_p", "n"]


# -- subcommands ---------------------------------------------------------------


def cmd_correlogram(args, out: Output):
    ds = _dataset(args)
    for name in args.series:
        s = _pick(ds, name)
        if args.normalise:
            s = normalise(s)
        cg = correlogram(s, args.max_lag)
        tag = f"correlogram_{name}" + ("_normalised" if args.normalise else "")
        out.table(tag, ["k", "r_k"], cg.coefficients)
        out.plot(plotting.bar_plot, tag, cg.lags, cg.values, title=f"Correlogram of {s.label}", xlabel="k", ylabel="r_k")


def cmd_seasonal_adjust(args, out: Output):
    ds = _dataset(args)
    for name in args.series:
        s = _pick(ds, name)
        ma = mobile_mean(s, args.window)
        tag = f"seasonal_{name}_{args.window}"
        out.table(tag, ["date", "value"], _series_rows(ma))
        out.plot(plotting.line_plot, tag, [ma], title=f"{args.window}-day moving average of {s.label}")


def cmd_scatter(args, out: Output):
    ds = _dataset(args)
    hosp = ds.hospitalizations
    rows = []
    for name in args.series:
        s = _pick(ds, name)
        pairs = [(name, s)]
        for L in args.lengths:
            pairs.append((f"{name}_variation_{L}d", variation_series(s, L + 1, args.unsigned)))
        for tag, x in pairs:
            xa, ya = align(x, hosp)
            r = correlate(xa, ya)
            rows.append([tag] + _corr_cells(r))
            out.table(f"scatter_{tag}", [tag, "hospitalizations"], zip(xa.tolist(), ya.tolist()))
            out.plot(plotting.scatter_plot, f"scatter_{tag}", xa, ya, title=f"{tag} vs admissions", xlabel=tag, ylabel="admissions")
    out.table("scatter_summary", ["series"] + CORR_HEADER, rows)


def cmd_mobile_corr(args, out: Output):
    ds = _dataset(args)
    p = _pick(ds, args.series)
    hosp = ds.hospitalizations
    rows = []
    for w in args.window:
        mp, mh = mobile_mean(p, w), mobile_mean(hosp, w)
        r = correlate(mp, mh)
        rows.append([w] + _corr_cells(r)[:4])
        out.plot(
            plotting.scatter_plot, f"mobile_corr_{w}", mp.values, mh.values,
            title=f"{w}-day moving averages", xlabel=p.label, ylabel="admissions",
        )
    out.table("mobile_corr", ["window", "pearson_r", "pearson_p", "spearman_rho", "spearman_p"], rows)


def cmd_peaks(args, out: Output):
    ds = _dataset(args)
    params = PeakParams(args.peak_w, args.peak_f)
    for name in args.series:
        s = _pick(ds, name)
        ps = detect_peaks(s, params)
        mean, std = window_stats(s, params.w)
        pseries = ps.as_series()
        rows = [
            (d, v, m, sd, int(k))
            for (d, v), m, sd, k in zip(_series_rows(s)[params.w - 1 :], mean.tolist(), std.tolist(), ps.values.tolist())
        ]
        tag = f"peaks_{name}"
        out.table(tag, ["date", "value", "window_mean", "window_std", "peak"], rows)
        out.plot(plotting.overlay_plot, tag, s, TimeSeries(np.abs(pseries.values), label="peak", start_date=pseries.start_date),
                 title=f"Peaks of {s.label} (w={params.w}, f={params.f:g})")


def cmd_patterns(args, out: Output):
    ds = _dataset(args)
    params = PeakParams(args.peak_w, args.peak_f)
    s = _pick(ds, args.series)
    ps = detect_peaks(s, params)
    summary = []
    for pat in args.pattern or DEFAULT_PATTERNS:
        pt = pattern_series(ps, pat).as_series()
        key = "".join({1: "p", 0: "z", -1: "m"}[v] for v in pat)
        _, hosp = align(pt, ds.hospitalizations)
        rows = [(d, int(v), h) for (d, v), h in zip(_series_rows(pt), hosp.tolist())]
        out.table(f"pattern_{key}", ["date", "occurrence", "hospitalizations"], rows)
        summary.append([",".join(str(v) for v in pat), int(pt.values.sum())])
        out.plot(plotting.overlay_plot, f"pattern_{key}", ds.hospitalizations, pt,
                 title=f"Occurrences of pattern {pat} vs admissions")
    out.table("patterns_summary", ["pattern", "occurrences"], summary)


def cmd_daily_variation(args, out: Output):
    ds = _dataset(args, semi_hourly=True)
    if not ds.semi_hourly_pressure:
        raise ConfigError("daily-variation needs pressure_semihourly.csv in the input directory")
    deltas = delta_series(ds.semi_hourly_pressure)
    hosp = ds.hospitalizations.slice_dates(deltas.start_date, deltas.end_date)
    grid = variation_grid(deltas, hosp, args.lengths)
    out.table(
        "variation_grid",
        ["interval_days", "overall_mean", "ge2_mean", "pct_increase_ge2"],
        [[g.interval_length, g.overall_mean, g.ge2_mean, g.pct_increase_ge2] for g in grid],
    )
    rep = window_variation_report(deltas, hosp, args.window, require_qualifying=False)
    bubbles = bubble_table(rep)
    out.table(f"variation_bubbles_{args.window}d", ["hospitalizations", "mean_delta", "occurrences"], bubbles)
    out.table("daily_delta", ["date", "delta"], _series_rows(deltas))
    out.document(f"variation_report_{args.window}d", rep.as_dict())
    if bubbles:
        c, m, k = zip(*bubbles)
        out.plot(plotting.scatter_plot, f"variation_bubbles_{args.window}d", c, m, sizes=[20 * v for v in k],
                 title=f"Mean {args.window}-day pressure change by admissions on the last day",
                 xlabel="admissions", ylabel="mean daily delta (mbar)")


def cmd_spectrum(args, out: Output):
    ds = _dataset(args, semi_hourly=True)
    for name in args.series:
        if name == "pressure":
            if not ds.semi_hourly_pressure:
                raise ConfigError("pressure spectrum needs pressure_semihourly.csv in the input directory")
            vals = np.concatenate([p.readings for p in ds.semi_hourly_pressure])
            s = TimeSeries(vals, label="pressure", start_date=ds.semi_hourly_pressure[0].date, step=HALF_HOUR)
        else:
            s = expand_to_subdaily(_pick(ds, name), 48)
        sp = dft_magnitude(s)
        if not args.keep_dc:
            sp = zero_dc(sp)
        tag = f"spectrum_{name}"
        out.table(tag, ["frequency_per_day", "magnitude"], zip(sp.frequencies.tolist(), sp.magnitudes.tolist()))
        if out.plots:
            out.plot(plotting.line_plot, tag, [TimeSeries(sp.magnitudes, label=name)], title=f"Spectrum of {name}",
                     ylabel="|X(f)|")


def cmd_find(args, out: Output):
    ds = _dataset(args)
    sources = tuple(args.sources or [s for s in WEATHER_SOURCES if s in ds.weather])
    for s in sources:
        _pick(ds, s)
    config = FinderConfig(
        sources=sources,
        variation_lengths=tuple(args.lengths),
        peak_params=PeakParams(args.peak_w, args.peak_f),
        max_lag=args.max_lag,
        patterns=tuple(args.pattern or DEFAULT_PATTERNS),
        threshold=args.threshold,
    )
    cands = enumerate_candidates(config, ds.weather)
    rep = run_finder(cands, ds.weather, ds.hospitalizations, args.threshold, n_jobs=args.jobs)
    rows = [[i + 1, c.spec.name] + _corr_cells(c.result) for i, c in enumerate(rep.ranked())]
    out.table("findings", ["rank", "candidate"] + CORR_HEADER, rows)
    out.table("findings_skipped", ["candidate", "reason"], [[c.spec.name, c.skipped] for c in rep.skipped])

    def best(b):
        return None if b is None else {"candidate": b[0].name, **b[1].as_dict()}

    out.document("findings_report", {
        "candidates_enumerated": len(cands),
        "candidates_evaluated": rep.candidates_evaluated,
        "threshold": rep.threshold,
        "relevant": rep.relevant,
        "best_pearson": best(rep.best_pearson),
        "best_spearman": best(rep.best_spearman),
    })
    if out.plots:
        for kind, b in (("pearson", rep.best_pearson), ("spearman", rep.best_spearman)):
            if b is None:
                continue
            x = _transform(b[0], ds.weather[b[0].source])
            xa, ya = align(x, ds.hospitalizations, b[0].lag)
            out.plot(plotting.scatter_plot, f"best_{kind}_scatter", xa, ya, title=b[0].name, xlabel=b[0].name, ylabel="admissions")
            out.plot(plotting.comparison_plot, f"best_{kind}_comparison", x, ds.hospitalizations, title=b[0].name)
    print(f"{len(cands)} candidates, {rep.candidates_evaluated} evaluated, relevant={rep.relevant}")


def cmd_synth(args, out: Output):
    cfg = SynthConfig(
        start=args.start,
        days=args.days,
        pressure_slope=args.pressure_slope,
        seasonal_amplitude=args.seasonal_amplitude,
        hosp_slope=args.hosp_slope,
        coupling=args.coupling,
        coupling_days=args.coupling_days,
    )
    for p in write_dataset(generate(args.seed, cfg), out.dir):
        out.written.append(p)


# -- parser --------------------------------------------------------------------


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    """Show defaults, except for options that have none."""

    def _get_help_string(self, action):
        if action.default is None:
            return action.help
        return super()._get_help_string(action)


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = argparse.ArgumentParser(prog="barocorr", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress and warnings")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input-dir", type=Path, default=Path("data"), help="directory holding the dataset CSV files")
    common.add_argument("--out-dir", type=Path, default=Path("out"), help="directory for tables and figures")
    common.add_argument("--from", dest="date_from", type=_date, default=None, help="first date to analyse (YYYY-MM-DD)")
    common.add_argument("--to", dest="date_to", type=_date, default=None, help="last date to analyse (YYYY-MM-DD)")
    common.add_argument("--format", dest="formats", action="append", choices=["csv", "json", "plot"],
                        help="output format, repeatable (default: csv)")

    peak = argparse.ArgumentParser(add_help=False)
    peak.add_argument("--peak-w", type=int, default=7, help="peak detection window length")
    peak.add_argument("--peak-f", type=float, default=1.0, help="peak threshold in standard deviations")

    def add(name, fn, help_, parents=(common,)):
        p = sub.add_parser(name, help=help_, description=help_, parents=list(parents), formatter_class=fmt)
        p.set_defaults(func=fn)
        return p

    p = add("correlogram", cmd_correlogram, "autocorrelation coefficients r_k for k = 0..max-lag")
    p.add_argument("--series", action="append", default=None, help="series name, repeatable (default: pressure, hospitalizations)")
    p.add_argument("--max-lag", type=int, default=10, help="largest lag")
    p.add_argument("--normalise", action="store_true", help="min-max normalise before computing")

    p = add("seasonal-adjust", cmd_seasonal_adjust, "trailing moving average used as seasonal adjustment")
    p.add_argument("--series", action="append", default=None, help="series name, repeatable (default: pressure, hospitalizations)")
    p.add_argument("--window", type=int, default=365, help="moving-average window in days")

    p = add("scatter", cmd_scatter, "scatter data and coefficients of a weather series (and its day-to-day variation) vs admissions")
    p.add_argument("--series", action="append", default=None, help="weather series, repeatable (default: pressure)")
    p.add_argument("--lengths", type=_int_list, default=[1], help="variation intervals in days, e.g. 1..3")
    p.add_argument("--unsigned", action="store_true", help="use summed absolute variation")

    p = add("mobile-corr", cmd_mobile_corr, "correlation between moving averages of a weather series and admissions")
    p.add_argument("--series", default="pressure", help="weather series")
    p.add_argument("--window", type=int, action="append", default=None,
                   help="moving-average window, repeatable (default: 7, 30, 120, 365)")

    p = add("peaks", cmd_peaks, "ternary peak series (1 above, -1 below the trailing window band)", (common, peak))
    p.add_argument("--series", action="append", default=None, help="series name, repeatable (default: pressure)")

    p = add("patterns", cmd_patterns, "occurrences of peak patterns alongside admissions", (common, peak))
    p.add_argument("--series", default="pressure", help="series to detect peaks on")
    p.add_argument("--pattern", type=_pattern, action="append", default=None,
                   help="peak pattern such as 1,0,-1; repeatable (default: 1,-1,1 1,0,1 1,0,-1)")

    p = add("daily-variation", cmd_daily_variation, "intra-day pressure change grouped by admissions on the window's last day")
    p.add_argument("--lengths", type=_int_list, default=list(range(2, 8)), help="interval lengths for the grid, e.g. 2..7")
    p.add_argument("--window", type=int, default=4, help="interval length for the bubble table")
    p.add_argument("--fill-incomplete", action="store_true", help="repeat the previous reading for missing half-hours")

    p = add("spectrum", cmd_spectrum, "one-sided DFT magnitude spectra at half-hour resolution")
    p.add_argument("--series", action="append", default=None, help="pressure and/or hospitalizations (default: both)")
    p.add_argument("--keep-dc", action="store_true", help="leave the zero-frequency bin unaltered")
    p.add_argument("--fill-incomplete", action="store_true", help="repeat the previous reading for missing half-hours")

    p = add("find-correlations", cmd_find, "search weather transforms for the strongest correlation with admissions", (common, peak))
    p.add_argument("--sources", action="append", default=None, help="weather series to scan, repeatable (default: all six)")
    p.add_argument("--lengths", type=_int_list, default=list(range(1, 8)), help="variation intervals in days")
    p.add_argument("--max-lag", type=int, default=7, help="largest lag between peak series and admissions")
    p.add_argument("--pattern", type=_pattern, action="append", default=None,
                   help="peak pattern such as 1,0,-1; repeatable (default: 1,-1,1 1,0,1 1,0,-1)")
    p.add_argument("--threshold", type=float, default=0.2, help="relevance threshold on |coefficient|")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for candidate evaluation")

    p = add("synth", cmd_synth, "write a seeded synthetic dataset (weather, admissions, half-hourly pressure)")
    d = SynthConfig()
    p.add_argument("--seed", type=int, default=42, help="random seed")
    p.add_argument("--start", type=_date, default=d.start, help="first date")
    p.add_argument("--days", type=int, default=d.days, help="number of days")
    p.add_argument("--pressure-slope", type=float, default=d.pressure_slope, help="pressure trend, mbar per year")
    p.add_argument("--seasonal-amplitude", type=float, default=d.seasonal_amplitude, help="annual pressure cycle amplitude, mbar")
    p.add_argument("--hosp-slope", type=float, default=d.hosp_slope, help="admission-rate trend, per day per year")
    p.add_argument("--coupling", type=float, default=d.coupling, help="log-rate effect of recent intra-day pressure agitation")
    p.add_argument("--coupling-days", type=int, default=d.coupling_days, help="days of agitation feeding the coupling")
    return parser


_DEFAULT_SERIES = {
    "correlogram": ["pressure", "hospitalizations"],
    "seasonal-adjust": ["pressure", "hospitalizations"],
    "scatter": ["pressure"],
    "peaks": ["pressure"],
    "spectrum": ["pressure", "hospitalizations"],
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "series", "") is None:
        args.series = _DEFAULT_SERIES[args.command]
    if args.command == "mobile-corr" and args.window is None:
        args.window = list(MOBILE_WINDOWS)
    try:
        out = Output(args.out_dir, args.formats)
        args.func(args, out)
    except BarocorrError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.code, 1)
    except FileNotFoundError as exc:
        print(f"E_INGEST: {exc}", file=sys.stderr)
        return EXIT_CODES["E_INGEST"]
    except ValueError as exc:
        print(f"E_CONFIG: {exc}", file=sys.stderr)
        return EXIT_CODES["E_CONFIG"]
    for p in out.written:
        log.info("wrote %s", p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
