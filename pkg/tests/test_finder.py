import datetime as dt
import itertools
import random

import numpy as np
import pytest

from barocorr.errors import EmptyConfig, NoCandidates
from barocorr.finder import (
    WEATHER_SOURCES,
    CandidateSpec,
    FinderConfig,
    align,
    enumerate_candidates,
    evaluate,
    run_finder,
)
from barocorr.peaks import PeakParams, detect_peaks
from barocorr.series import TimeSeries

# regression value: candidates produced by the default configuration on
# generate(seed=42); one of the 18 pattern candidates never occurs
SYNTH42_DEFAULT_COUNT = 113


def test_raw_only_single_source():
    cfg = FinderConfig(sources=("pressure",), variation_lengths=(), peak_params=None)
    assert enumerate_candidates(cfg) == [CandidateSpec("pressure", "raw")]


def test_six_sources_variations_only():
    cfg = FinderConfig(sources=WEATHER_SOURCES, variation_lengths=tuple(range(1, 8)), peak_params=None)
    cands = enumerate_candidates(cfg)
    # combinatorial oracle: one raw plus one per length, per source
    expected = list(itertools.product(WEATHER_SOURCES, [None, *range(1, 8)]))
    assert len(cands) == len(expected) == 48
    assert [(c.source, c.length) for c in cands] == expected
    assert len(set(cands)) == len(cands)


def test_full_enumeration_without_data_counts_everything():
    cfg = FinderConfig()
    assert len(enumerate_candidates(cfg)) == 6 * (1 + 7 + 8 + 3)


def test_default_count_on_synthetic_fixture(synth_dataset):
    cands = enumerate_candidates(FinderConfig(), synth_dataset.weather)
    assert len(cands) == SYNTH42_DEFAULT_COUNT


def test_empty_config():
    with pytest.raises(EmptyConfig):
        enumerate_candidates(FinderConfig(sources=()))
    with pytest.raises(NoCandidates):
        run_finder([], {}, [1, 2, 3])


def test_align_with_lag(start):
    x = TimeSeries([10, 20, 30], start_date=start + dt.timedelta(days=2))
    hosp = TimeSeries(range(8), start_date=start)
    xa, ya = align(x, hosp, lag=3)
    assert xa.tolist() == [10, 20, 30] and ya.tolist() == [5, 6, 7]
    xa, ya = align(x, hosp, lag=4)
    assert xa.tolist() == [10, 20] and ya.tolist() == [6, 7]


def test_planted_identity(rng):
    weather = {"pressure": TimeSeries(rng.normal(1010, 5, 200)), "temp_avg": TimeSeries(rng.normal(15, 3, 200))}
    hosp = weather["temp_avg"]
    cfg = FinderConfig(sources=("pressure", "temp_avg"), max_lag=2)
    rep = run_finder(enumerate_candidates(cfg, weather), weather, hosp)
    assert rep.best_pearson[0] == CandidateSpec("temp_avg", "raw")
    assert rep.best_pearson[1].pearson_r == pytest.approx(1.0)
    assert rep.relevant


def _planted_peaks(n=730, lag=3, seed=5):
    rng = np.random.default_rng(seed)
    start = dt.date(2016, 1, 1)
    pressure = TimeSeries(1013 + np.cumsum(rng.normal(0, 2, n)) * 0.3 + rng.normal(0, 4, n), label="pressure", start_date=start)
    temp = TimeSeries(rng.normal(15, 4, n), label="temp_avg", start_date=start)
    peaks = detect_peaks(pressure, PeakParams(7, 1.0)).values.astype(float)
    h = np.zeros(n)
    # peak on source day d drives admissions on day d + lag
    h[6 + lag :] = peaks[: n - 6 - lag]
    h += rng.normal(0, 0.01, n)
    return {"pressure": pressure, "temp_avg": temp}, TimeSeries(h, start_date=start)


def test_planted_lagged_peak_signal():
    weather, hosp = _planted_peaks()
    cfg = FinderConfig(sources=("pressure", "temp_avg"))
    rep = run_finder(enumerate_candidates(cfg, weather), weather, hosp)
    spec, res = rep.best_pearson
    assert (spec.transform, spec.lag, spec.source) == ("peaks", 3, "pressure")
    assert abs(res.pearson_r) > 0.9


def test_noise_is_irrelevant():
    rng = np.random.default_rng(11)
    n = 1096
    weather = {s: TimeSeries(rng.normal(size=n), label=s) for s in WEATHER_SOURCES}
    hosp = TimeSeries(rng.poisson(0.5, n).astype(float))
    rep = run_finder(enumerate_candidates(FinderConfig(), weather), weather, hosp, threshold=0.2)
    assert not rep.relevant
    assert abs(rep.best_pearson[1].pearson_r) < 0.2


def test_best_dominates_every_candidate(synth_dataset):
    cfg = FinderConfig(sources=("pressure", "wind_avg"), variation_lengths=(1, 2, 3), max_lag=3)
    rep = run_finder(enumerate_candidates(cfg, synth_dataset.weather), synth_dataset.weather, synth_dataset.hospitalizations)
    for c in rep.results:
        if c.result is None:
            continue
        assert abs(rep.best_pearson[1].pearson_r) >= abs(c.result.pearson_r)
        assert abs(rep.best_spearman[1].spearman_rho) >= abs(c.result.spearman_rho)


def test_constant_candidate_is_skipped_not_fatal():
    n = 60
    weather = {"pressure": TimeSeries([1000.0] * n), "temp_avg": TimeSeries(np.sin(np.arange(n)))}
    hosp = TimeSeries(np.cos(np.arange(n)))
    cfg = FinderConfig(sources=("pressure", "temp_avg"), max_lag=1)
    rep = run_finder(enumerate_candidates(cfg), weather, hosp)
    assert rep.skipped and all(c.spec.source == "pressure" or c.spec.transform != "raw" for c in rep.skipped)
    assert rep.best_pearson is not None
    assert evaluate(CandidateSpec("pressure", "raw"), weather, hosp).skipped


def test_deterministic_and_order_independent(synth_dataset):
    cfg = FinderConfig(sources=("pressure", "temp_max"), max_lag=4)
    cands = enumerate_candidates(cfg, synth_dataset.weather)
    assert cands == enumerate_candidates(cfg, synth_dataset.weather)
    w, h = synth_dataset.weather, synth_dataset.hospitalizations
    a = run_finder(cands, w, h)
    b = run_finder(cands, w, h, n_jobs=4)
    assert a == b
    shuffled = list(cands)
    random.Random(0).shuffle(shuffled)
    c = run_finder(shuffled, w, h)
    assert {r.spec: r.result for r in c.results} == {r.spec: r.result for r in a.results}
    assert abs(c.best_pearson[1].pearson_r) == abs(a.best_pearson[1].pearson_r)
